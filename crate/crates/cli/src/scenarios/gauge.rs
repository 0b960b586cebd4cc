use std::f64::consts::PI;

use qmbench::gaugefields::{
    ab_ring_spectrum, ab_sector_spectrum, edge_current, edge_spectrum, forbidden_region_envelope, gauge_current_check,
    landau_current_profile, landau_energy, linear_potential_nodes, linear_potential_wf, two_slit_shift, EdgeProblem, Grid,
    LandauConfig, RingConfig, TabulatedPotential,
};
use qmbench::specfun::airy_zeros;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{linspace, Scenario};
use crate::error::CliError;
use crate::params::{ParamSpec, Params};
use crate::report::{Report, Table};

pub const AB_RING: Scenario = Scenario {
    name: "ab-ring",
    description: "Aharonov–Bohm ring spectrum at fixed flux",
    anchors: &["E_M = (M + Φ/Φ0)²/(2a²)"],
    params: &[
        ParamSpec::float("radius", "1", "ring radius a"),
        ParamSpec::float("flux", "0.3", "enclosed flux Φ/Φ0"),
        ParamSpec::int("mmax", "5", "angular momenta M in -mmax..=mmax"),
    ],
    run: ab_ring,
};

fn ab_ring(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let cfg = RingConfig { radius: p.positive("radius")?, flux_ratio: p.f64("flux"), m_range: p.count("mmax", 1, 100_000)? as i64 };
    let mut t = Table::new("spectrum", &["M:int", "E"]);
    for (m, e) in ab_ring_spectrum(&cfg)? {
        t.push(vec![m as f64, e]);
    }
    r.summary("ground_energy", t.rows[0][1]);
    r.table(t);
    Ok(())
}

pub const AB_SECTOR: Scenario = Scenario {
    name: "ab-sector",
    description: "Sector-shaped well: spectrum versus enclosed flux",
    anchors: &["E_n = π²n²/(2a²φ0²), independent of Φ"],
    params: &[
        ParamSpec::float("radius", "1", "ring radius a"),
        ParamSpec::float("opening", "3", "sector opening φ0 in radians"),
        ParamSpec::int("levels", "5", "levels per flux value"),
        ParamSpec::float("flux-max", "2", "largest flux Φ/Φ0"),
        ParamSpec::int("flux-steps", "9", "flux samples on [0, flux-max]"),
    ],
    run: ab_sector,
};

fn ab_sector(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let levels = p.count("levels", 1, 10_000)?;
    let radius = p.positive("radius")?;
    let fluxes = linspace(0.0, p.f64("flux-max"), p.count("flux-steps", 1, 100_000)?);
    let reference = ab_sector_spectrum(&RingConfig { radius, flux_ratio: 0.0, m_range: 1 }, p.f64("opening"), levels)?;
    let mut t = Table::new("levels", &["flux", "n:int", "E"]);
    let mut spread = 0.0f64;
    for &flux in &fluxes {
        let e = ab_sector_spectrum(&RingConfig { radius, flux_ratio: flux, m_range: 1 }, p.f64("opening"), levels)?;
        for (n, (a, b)) in e.iter().zip(&reference).enumerate() {
            spread = spread.max((a - b).abs());
            t.push(vec![flux, (n + 1) as f64, *a]);
        }
    }
    r.check("flux_spread", spread, 0.0);
    r.table(t);
    Ok(())
}

pub const TWO_SLIT: Scenario = Scenario {
    name: "two-slit",
    description: "Fringe shift of a two-slit pattern around a flux tube",
    anchors: &["Δy = (2πb/kd)(Φ/Φ0)"],
    params: &[
        ParamSpec::float("distance", "100", "slit-to-screen distance b"),
        ParamSpec::float("k", "10", "wavenumber"),
        ParamSpec::float("separation", "1", "slit separation d"),
        ParamSpec::float("flux-max", "2", "largest flux Φ/Φ0"),
        ParamSpec::int("flux-steps", "21", "flux samples on [0, flux-max]"),
    ],
    run: two_slit,
};

fn two_slit(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let (b, k, d) = (p.f64("distance"), p.f64("k"), p.f64("separation"));
    let fringe = two_slit_shift(b, k, d, 1.0)?;
    let mut t = Table::new("shift", &["flux", "shift", "shift_over_fringe"]);
    for flux in linspace(0.0, p.f64("flux-max"), p.count("flux-steps", 1, 100_000)?) {
        let s = two_slit_shift(b, k, d, flux)?;
        t.push(vec![flux, s, s / fringe]);
    }
    r.summary("fringe_spacing", fringe);
    r.table(t);
    Ok(())
}

pub const LANDAU_LEVELS: Scenario = Scenario {
    name: "landau-levels",
    description: "Grid eigen-solve of the Landau problem with Richardson extrapolation",
    anchors: &["E_n = ω_c(n + 1/2) + k_z²/2", "ω_c = qB"],
    params: &[
        ParamSpec::float("b", "1", "magnetic field"),
        ParamSpec::int("levels", "4", "number of Landau levels"),
        ParamSpec::float("half-width", "10", "grid half-width in magnetic lengths"),
        ParamSpec::float("spacing", "0.005", "fine grid spacing in magnetic lengths"),
    ],
    run: landau_levels,
};

fn flat_levels(cfg: &LandauConfig, half: f64, h: f64, levels: usize) -> Result<Vec<f64>, CliError> {
    let n = (2.0 * half / h).round() as usize + 1;
    let grid = Grid::new(-half, half, n)?;
    let prob = EdgeProblem { potential: TabulatedPotential::constant(&grid, 0.0), x0: 0.0, n_levels: levels, grid };
    Ok(edge_spectrum(cfg, &prob)?.energies)
}

fn landau_levels(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let cfg = LandauConfig::new(p.positive("b")?, 1.0, 1.0, 1)?;
    let ell = cfg.magnetic_length();
    let levels = p.count("levels", 1, 50)?;
    let half = p.positive("half-width")? * ell;
    let h = p.positive("spacing")? * ell;
    let fine = flat_levels(&cfg, half, h, levels)?;
    let coarse = flat_levels(&cfg, half, 2.0 * h, levels)?;
    let mut t = Table::new("levels", &["n:int", "exact", "fine", "coarse", "richardson", "error"]);
    let mut worst = 0.0f64;
    for n in 0..levels {
        let exact = landau_energy(&cfg, n as i64, 0.0)?;
        let extrapolated = (4.0 * fine[n] - coarse[n]) / 3.0;
        let err = (extrapolated - exact).abs() / cfg.cyclotron_frequency();
        worst = worst.max(err);
        t.push(vec![n as f64, exact, fine[n], coarse[n], extrapolated, err]);
    }
    r.summary("cyclotron_frequency", cfg.cyclotron_frequency());
    r.check("richardson_error", worst, 1e-6);
    r.table(t);
    Ok(())
}

pub const LANDAU_EDGE: Scenario = Scenario {
    name: "landau-edge",
    description: "Edge states between soft walls: energies, currents and the Feynman–Hellmann relation",
    anchors: &["∂ε_n/∂x0 = ω_c² ∫(x0 - x)φ_n² dx", "∂ε_n/∂x0 = (ω_c L_y/q) I_y"],
    params: &[
        ParamSpec::float("b", "1", "magnetic field"),
        ParamSpec::float("ly", "1", "sample length L_y"),
        ParamSpec::float("wall", "8", "walls at ±wall"),
        ParamSpec::float("v0", "1", "wall height scale"),
        ParamSpec::float("softness", "1", "wall softness"),
        ParamSpec::float("half-width", "16", "grid half-width"),
        ParamSpec::int("points", "6401", "grid points"),
        ParamSpec::float("x0-min", "-7", "first guiding center"),
        ParamSpec::float("x0-max", "7", "last guiding center"),
        ParamSpec::int("x0-steps", "15", "guiding centers"),
        ParamSpec::int("levels", "2", "levels per guiding center"),
    ],
    run: landau_edge,
};

fn landau_edge(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let cfg = LandauConfig::new(p.positive("b")?, p.positive("ly")?, 1.0, 1)?;
    let half = p.positive("half-width")?;
    let grid = Grid::new(-half, half, p.count("points", 3, 10_000_000)?)?;
    let wall = p.f64("wall");
    let potential = TabulatedPotential::soft_walls(&grid, -wall, wall, p.f64("v0"), p.positive("softness")?);
    let levels = p.count("levels", 1, 50)?;
    let scale = cfg.cyclotron_frequency().powi(2) * cfg.magnetic_length();
    let mut t = Table::new(
        "edge",
        &["x0", "n:int", "energy", "current", "current_from_slope", "spectral_slope", "moment_slope"],
    );
    let mut worst = 0.0f64;
    for x0 in linspace(p.f64("x0-min"), p.f64("x0-max"), p.count("x0-steps", 1, 100_000)?) {
        let prob = EdgeProblem { potential: potential.clone(), x0, n_levels: levels, grid };
        for ec in edge_current(&cfg, &prob)? {
            let rel = (ec.spectral_slope - ec.moment_slope).abs() / ec.spectral_slope.abs().max(1e-2 * scale);
            worst = worst.max(rel);
            t.push(vec![
                x0,
                ec.n as f64,
                ec.energy,
                ec.current,
                ec.current_from_slope(&cfg),
                ec.spectral_slope,
                ec.moment_slope,
            ]);
        }
    }
    r.check("feynman_hellmann_mismatch", worst, 1e-2);
    r.table(t);
    Ok(())
}

pub const LANDAU_CURRENT: Scenario = Scenario {
    name: "landau-current",
    description: "Current density profile of one Landau state",
    anchors: &["j_y = qω_c(x0 - x)ρ", "j_z = qk_zρ"],
    params: &[
        ParamSpec::float("b", "1", "magnetic field"),
        ParamSpec::int("n", "0", "Landau level"),
        ParamSpec::float("x0", "0", "guiding center"),
        ParamSpec::float("kz", "0", "momentum along the field"),
        ParamSpec::float("half-width", "8", "profile half-width in magnetic lengths"),
        ParamSpec::int("points", "801", "profile samples"),
    ],
    run: landau_current,
};

fn landau_current(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let cfg = LandauConfig::new(p.positive("b")?, 1.0, 1.0, 1)?;
    let x0 = p.f64("x0");
    let half = p.positive("half-width")? * cfg.magnetic_length();
    let grid = Grid::new(x0 - half, x0 + half, p.count("points", 3, 10_000_000)?)?;
    let prof = landau_current_profile(&cfg, p.count("n", 0, 60)? as i64, x0, p.f64("kz"), &grid)?;
    let mut t = Table::new("profile", &["x", "j_y", "j_z"]);
    for i in 0..prof.x.len() {
        t.push(vec![prof.x[i], prof.j_y[i], prof.j_z[i]]);
    }
    r.summary("total_y", prof.total_y());
    r.summary("total_z", prof.total_z());
    r.table(t);
    Ok(())
}

pub const LINEAR_POTENTIAL: Scenario = Scenario {
    name: "linear-potential",
    description: "Airy eigenfunction in a linear potential with its nodes and forbidden-region envelope",
    anchors: &["φ_ε(x) = Ai(-α(x + ε/F)), α = (2F)^{1/3}", "exp(-|p0|³/(3F)) envelope"],
    params: &[
        ParamSpec::float("force", "1", "slope F of the potential -Fx"),
        ParamSpec::float("energy", "0", "energy ε"),
        ParamSpec::float("x-min", "-10", "first sample"),
        ParamSpec::float("x-max", "5", "last sample"),
        ParamSpec::int("points", "301", "samples"),
        ParamSpec::int("nodes", "5", "nodes to list"),
    ],
    run: linear_potential,
};

fn linear_potential(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let (f, eps) = (p.positive("force")?, p.f64("energy"));
    let mut t = Table::new("wavefunction", &["x", "phi", "envelope"]);
    for x in linspace(p.f64("x-min"), p.f64("x-max"), p.count("points", 1, 10_000_000)?) {
        t.push(vec![x, linear_potential_wf(eps, f, x)?, forbidden_region_envelope(eps, f, x)]);
    }
    let zeros = airy_zeros(p.count("nodes", 0, 1000)?);
    let mut nodes = Table::new("nodes", &["k:int", "x", "phi"]);
    for (k, x) in linear_potential_nodes(eps, f, &zeros).into_iter().enumerate() {
        nodes.push(vec![(k + 1) as f64, x, linear_potential_wf(eps, f, x)?]);
    }
    r.summary("turning_point", -eps / f);
    r.table(t);
    r.table(nodes);
    Ok(())
}

pub const GAUGE_CURRENTS: Scenario = Scenario {
    name: "gauge-currents",
    description: "Plane-wave current in a uniform field computed in two gauges",
    anchors: &["j = q(k + qEt) in the static gauge", "j = qk + q²Et in the time-dependent gauge"],
    params: &[
        ParamSpec::int("seed", "7", "random seed"),
        ParamSpec::int("samples", "100", "random (k, E, t) draws"),
        ParamSpec::float("charge", "1", "particle charge"),
    ],
    run: gauge_currents,
};

fn gauge_currents(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.int("seed") as u64);
    let q = p.f64("charge");
    let mut t = Table::new("currents", &["k", "E", "t", "static", "time_dependent", "difference"]);
    let mut worst = 0.0f64;
    for _ in 0..p.count("samples", 1, 10_000_000)? {
        let (k, e, time) = (rng.gen_range(-5.0..5.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.0..2.0 * PI));
        let g = gauge_current_check(q, e, k, time);
        let (a, b) = (g.static_gauge.total(), g.time_dependent_gauge.total());
        let scale = a.abs().max(b.abs()).max(1.0);
        worst = worst.max((a - b).abs() / scale);
        t.push(vec![k, e, time, a, b, a - b]);
    }
    r.check("gauge_mismatch", worst, 1e-14);
    r.table(t);
    Ok(())
}
