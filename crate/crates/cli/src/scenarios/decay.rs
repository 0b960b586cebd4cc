use qmbench::decay::{
    bordered_spectrum, fit_decay_window, fit_lorentzian, golden_rule, line_shape, markov_rate, memory_kernel, revival_time,
    survival_from_spectrum, DecayProblem, MARKOV_RATIO,
};

use super::{linspace, Scenario};
use crate::error::CliError;
use crate::params::{ParamSpec, Params};
use crate::report::{Report, Table};

const BAND_PARAMS: [ParamSpec; 5] = [
    ParamSpec::int("levels", "2000", "continuum levels"),
    ParamSpec::float("bandwidth", "20", "band width W"),
    ParamSpec::float("coupling", "0.05", "constant coupling V"),
    ParamSpec::float("e0", "0", "discrete level energy"),
    ParamSpec::float("offset", "0", "band center minus e0"),
];

fn band(p: &Params) -> Result<DecayProblem, CliError> {
    Ok(DecayProblem::flat_band(
        p.f64("e0"),
        p.positive("bandwidth")?,
        p.count("levels", 1, 2_000_000)?,
        p.positive("coupling")?,
        p.f64("offset"),
    )?)
}

pub const WW_DECAY: Scenario = Scenario {
    name: "ww-decay",
    description: "Discrete level coupled to a flat band: survival probability, fitted rate and line shape",
    anchors: &["Γ = 2π|V|²ρ", "ΔE = P Σ|V|²/(E0 - ε)", "|c0(t)|² ≈ e^{-Γt}", "Lorentzian of FWHM Γ", "t_rev = 2π/δ"],
    params: &[
        BAND_PARAMS[0],
        BAND_PARAMS[1],
        BAND_PARAMS[2],
        BAND_PARAMS[3],
        BAND_PARAMS[4],
        ParamSpec::float("t-max", "0", "last time sample; 0 selects 5/Γ"),
        ParamSpec::int("t-steps", "400", "time intervals"),
    ],
    run: ww_decay,
};

fn ww_decay(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let prob = band(p)?;
    let gr = golden_rule(&prob)?;
    let spec = bordered_spectrum(&prob)?;
    let t_rev = revival_time(&prob)?;
    let gamma = gr.gamma;
    let (t_start, t_end) = (0.5 / gamma, (3.0 / gamma).min(0.5 * t_rev));
    let fit = fit_decay_window(&spec, t_start, t_end)?;

    let t_max = match p.f64("t-max") {
        t if t > 0.0 => t,
        _ => 5.0 / gamma,
    };
    let mut t = Table::new("survival", &["t", "re", "im", "probability", "golden_rule"]);
    for time in linspace(0.0, t_max, p.count("t-steps", 1, 10_000_000)? + 1) {
        let c = survival_from_spectrum(&spec, time);
        t.push(vec![time, c.re, c.im, c.norm_sqr(), (-gamma * time).exp()]);
    }
    r.table(t);

    let ratio = prob.bandwidth() / gamma;
    r.summary("gamma_golden", gamma);
    r.summary("gamma_fit", fit.gamma);
    r.summary("fit_t_start", fit.t_start);
    r.summary("fit_t_end", fit.t_end);
    r.summary("delta_e", gr.delta_e);
    r.summary("revival_time", t_rev);
    r.summary("bandwidth_over_gamma", ratio);
    if ratio < MARKOV_RATIO {
        r.note("regime", format!("bandwidth below {MARKOV_RATIO}Γ, fitted rate carries a finite-band bias"));
    }

    match line_shape(&prob, &spec) {
        Ok(shape) => {
            let lf = fit_lorentzian(&shape, prob.e0 + gr.delta_e, 3.0 * gamma)?;
            r.summary("lorentzian_fwhm", lf.fwhm);
            r.summary("lorentzian_center", lf.center);
            let mut ls = Table::new("line_shape", &["energy", "density", "lorentzian"]);
            for (e, d) in shape.energy.iter().zip(&shape.density) {
                ls.push(vec![*e, *d, lf.eval(*e)]);
            }
            r.table(ls);
        }
        Err(qmbench::Error::UnderResolved(msg)) => r.note("line_shape", msg),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub const WW_KERNEL: Scenario = Scenario {
    name: "ww-kernel",
    description: "Memory kernel of the flat-band model and its Markov-limit integral",
    anchors: &["K(t) = -Σ|V|² e^{i(E0 - ε)t}", "∫K dt → -Γ/2 - iΔE"],
    params: &[
        BAND_PARAMS[0],
        BAND_PARAMS[1],
        BAND_PARAMS[2],
        BAND_PARAMS[3],
        BAND_PARAMS[4],
        ParamSpec::float("t-max", "2", "last kernel sample"),
        ParamSpec::int("t-steps", "400", "time intervals"),
    ],
    run: ww_kernel,
};

fn ww_kernel(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let prob = band(p)?;
    let times = linspace(0.0, p.positive("t-max")?, p.count("t-steps", 1, 10_000_000)? + 1);
    let mut t = Table::new("kernel", &["t", "re", "im"]);
    for (time, k) in times.iter().zip(memory_kernel(&prob, &times)?) {
        t.push(vec![*time, k.re, k.im]);
    }
    let gr = golden_rule(&prob)?;
    let m = markov_rate(&prob, revival_time(&prob)? / 8.0)?;
    r.summary("half_gamma_markov", m.half_gamma);
    r.summary("half_gamma_golden", 0.5 * gr.gamma);
    r.summary("shift_markov", -m.minus_shift);
    r.summary("shift_golden", gr.delta_e);
    r.summary("markov_window", m.window);
    r.table(t);
    Ok(())
}
