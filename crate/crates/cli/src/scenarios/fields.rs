use std::f64::consts::PI;

use num_complex::Complex64;
use qmbench::fieldstates::{planck_density, thermal_occupation, uncertainties_from_amplitudes, CoherentState, ThermalMode, PLANCK_H};
use qmbench::numerics::integrate_adaptive;

use super::{linspace, Scenario};
use crate::error::CliError;
use crate::params::{ParamSpec, Params};
use crate::report::{Report, Table};

pub const COHERENT_STATE: Scenario = Scenario {
    name: "coherent-state",
    description: "Coherent-state trajectory and uncertainties against the classical oscillator",
    anchors: &["α(t) = α e^{-iωt}", "q0 = √(2/ω) Re α, p0 = √(2ω) Im α", "ΔqΔp = 1/2"],
    params: &[
        ParamSpec::float("alpha-re", "1.5", "Re α"),
        ParamSpec::float("alpha-im", "-0.5", "Im α"),
        ParamSpec::float("omega", "1", "oscillator frequency"),
        ParamSpec::float("periods", "5", "periods to follow"),
        ParamSpec::int("steps", "500", "time samples"),
    ],
    run: coherent_state,
};

fn coherent_state(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let omega = p.positive("omega")?;
    let s = CoherentState::new(Complex64::new(p.f64("alpha-re"), p.f64("alpha-im")), omega)?;
    let (q0, p0) = s.phase_space();
    let t_end = p.positive("periods")? * 2.0 * PI / omega;
    let mut t = Table::new("trajectory", &["t", "q", "p", "q_classical", "p_classical", "dq_dp"]);
    let (mut traj, mut unc) = (0.0f64, 0.0f64);
    for time in linspace(0.0, t_end, p.count("steps", 1, 10_000_000)? + 1) {
        let st = s.evolve(time);
        let (q, pp) = st.phase_space();
        let (c, sn) = ((omega * time).cos(), (omega * time).sin());
        let qc = q0 * c + p0 / omega * sn;
        let pc = -omega * q0 * sn + p0 * c;
        let prod = uncertainties_from_amplitudes(&st.amplitudes(), omega).product();
        traj = traj.max((q - qc).abs()).max((pp - pc).abs());
        unc = unc.max((prod - 0.5).abs());
        t.push(vec![time, q, pp, qc, pc, prod]);
    }
    r.summary("mean_number", s.alpha.norm_sqr());
    r.check("trajectory_deviation", traj, 1e-10);
    r.check("uncertainty_deviation", unc, 1e-12);
    r.table(t);
    Ok(())
}

pub const PLANCK: Scenario = Scenario {
    name: "planck",
    description: "Planck spectral energy density and mean occupation of a thermal mode",
    anchors: &["u(ν) = 8πhν³/(e^{hν/T} - 1)", "∫u dν = π²T⁴/15", "n̄ = 1/(e^{ω/T} - 1)"],
    params: &[
        ParamSpec::float("temperature", "1", "temperature T"),
        ParamSpec::float("x-max", "12", "largest hν/T"),
        ParamSpec::int("points", "241", "samples"),
    ],
    run: planck,
};

fn planck(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let temp = p.positive("temperature")?;
    let x_max = p.positive("x-max")?;
    let mut t = Table::new("spectrum", &["nu", "density", "occupation"]);
    for x in linspace(0.0, x_max, p.count("points", 2, 10_000_000)?).into_iter().skip(1) {
        let nu = x * temp / PLANCK_H;
        let occ = thermal_occupation(&ThermalMode::new(2.0 * PI * nu, temp)?);
        t.push(vec![nu, planck_density(nu, temp)?, occ]);
    }
    let total = integrate_adaptive(|nu| planck_density(nu, temp).unwrap_or(0.0), 0.0, 60.0 * temp / PLANCK_H, 1e-12);
    let exact = PI * PI * temp.powi(4) / 15.0;
    r.summary("energy_density", total);
    r.summary("stefan_boltzmann", exact);
    r.table(t);
    Ok(())
}
