use qmbench::stringmodes::{
    casimir_closed_form, casimir_closed_form_force, casimir_energy, casimir_regularized_sum, ground_state_variance,
    mode_table, Boundary, StringConfig,
};

use super::{linspace, Scenario};
use crate::error::CliError;
use crate::params::{ParamSpec, Params};
use crate::report::{Report, Table};

pub const STRING_MODES: Scenario = Scenario {
    name: "string-modes",
    description: "Normal modes of a string with their ground-state fluctuations",
    anchors: &["k_ν = πν/L (fixed), 2πν/L (periodic)", "ω_ν = v|k_ν|", "⟨q_ν²⟩ = 1/(2ω_ν)"],
    params: &[
        ParamSpec::float("length", "1", "string length L"),
        ParamSpec::float("speed", "1", "wave speed v"),
        ParamSpec::int("cutoff", "10", "largest mode index"),
        ParamSpec::choice("boundary", &["fixed", "periodic"], "fixed", "boundary condition"),
    ],
    run: string_modes,
};

fn string_modes(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let boundary = match p.choice("boundary") {
        "periodic" => Boundary::Periodic,
        _ => Boundary::Fixed,
    };
    let cfg = StringConfig::new(p.f64("length"), p.f64("speed"), p.count("cutoff", 1, 10_000_000)? as u64, boundary)?;
    let mut t = Table::new("modes", &["index:int", "k", "omega", "variance"]);
    for m in mode_table(&cfg) {
        t.push(vec![m.index as f64, m.k, m.omega, ground_state_variance(&cfg, m.index)]);
    }
    r.table(t);
    Ok(())
}

pub const CASIMIR_SUM: Scenario = Scenario {
    name: "casimir-sum",
    description: "Soft-cutoff regularized mode sum approaching -1/12",
    anchors: &["Σ ν e^{-ν/ν_c} - ν_c² → -1/12"],
    params: &[
        ParamSpec::float("cutoff-min", "10", "smallest ν_c"),
        ParamSpec::float("cutoff-max", "1e6", "largest ν_c"),
        ParamSpec::int("per-decade", "2", "samples per decade, log-spaced"),
    ],
    run: casimir_sum,
};

fn casimir_sum(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let (lo, hi) = (p.positive("cutoff-min")?, p.positive("cutoff-max")?);
    if hi < lo {
        return Err(CliError::Schema("cutoff-max below cutoff-min".into()));
    }
    let per = p.count("per-decade", 1, 1000)?;
    let n = ((hi / lo).log10() * per as f64).round() as usize + 1;
    let mut t = Table::new("sum", &["nu_c", "regularized", "deviation"]);
    for x in linspace(lo.log10(), hi.log10(), n) {
        let nu_c = 10f64.powf(x);
        let s = casimir_regularized_sum(nu_c)?;
        t.push(vec![nu_c, s, s + 1.0 / 12.0]);
    }
    r.check("deviation_at_1e3", (casimir_regularized_sum(1e3)? + 1.0 / 12.0).abs(), 1e-6);
    r.table(t);
    Ok(())
}

pub const CASIMIR_1D: Scenario = Scenario {
    name: "casimir-1d",
    description: "Zero-point energy shift of a string partitioned at d, against the closed form",
    anchors: &["ΔE0(d) = -(πv/24)(1/d + 1/(L-d) - 4/L)", "F = -∂ΔE0/∂d"],
    params: &[
        ParamSpec::float("length", "1", "string length L"),
        ParamSpec::float("speed", "1", "wave speed v"),
        ParamSpec::int("cutoff", "10000", "soft cutoff index ν_c"),
        ParamSpec::float("d-min", "0.05", "first partition point as a fraction of L"),
        ParamSpec::float("d-max", "0.95", "last partition point as a fraction of L"),
        ParamSpec::int("points", "19", "partition points"),
    ],
    run: casimir_1d,
};

fn casimir_1d(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let cfg = StringConfig::new(p.f64("length"), p.f64("speed"), p.count("cutoff", 1, 10_000_000)? as u64, Boundary::Fixed)?;
    let (l, v) = (cfg.length, cfg.speed);
    let mut t = Table::new("casimir", &["d", "delta_e0", "closed_form", "abs_error", "force", "closed_force"]);
    let mut worst = 0.0f64;
    for frac in linspace(p.f64("d-min"), p.f64("d-max"), p.count("points", 1, 100_000)?) {
        let d = frac * l;
        let pt = casimir_energy(&cfg, d)?;
        let exact = casimir_closed_form(l, v, d);
        let err = (pt.delta_e0 - exact).abs();
        // the closed form vanishes at d = L/2; fall back to the 1/d scale there
        let scale = std::f64::consts::PI * v / (24.0 * d.min(l - d));
        worst = worst.max(err / if exact.abs() > 1e-9 * scale { exact.abs() } else { scale });
        t.push(vec![d, pt.delta_e0, exact, err, pt.force, casimir_closed_form_force(l, v, d)]);
    }
    r.check("relative_error", worst, 1e-3);
    r.table(t);
    Ok(())
}
