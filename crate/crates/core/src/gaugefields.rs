//! Single-particle problems in uniform fields and Aharonov–Bohm geometries.
//!
//! Units: `ħ = e = m = 1`, so the cyclotron frequency equals the field
//! strength and the magnetic length is `1/√B`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{simpson_uniform, SymTridiagonal};
use crate::specfun::{airy_ai, oscillator_wf, OscillatorState};

/// Uniform magnetic field along `z` in a periodic `L_y × L_z` box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauConfig {
    pub b_field: f64,
    pub l_y: f64,
    pub l_z: f64,
    pub charge_sign: i8,
}

impl LandauConfig {
    pub fn new(b_field: f64, l_y: f64, l_z: f64, charge_sign: i8) -> Result<Self> {
        if !(b_field > 0.0 && b_field.is_finite()) {
            return Err(Error::InvalidArgument(format!("magnetic field {b_field}")));
        }
        if !(l_y > 0.0 && l_z > 0.0) {
            return Err(Error::InvalidArgument("box lengths must be positive".into()));
        }
        if charge_sign != 1 && charge_sign != -1 {
            return Err(Error::InvalidArgument("charge sign must be ±1".into()));
        }
        Ok(Self { b_field, l_y, l_z, charge_sign })
    }

    pub fn magnetic_length(&self) -> f64 {
        1.0 / self.b_field.sqrt()
    }

    pub fn cyclotron_frequency(&self) -> f64 {
        self.b_field
    }

    /// Spacing of allowed guiding centers, `2πℓ²/L_y`.
    pub fn guiding_center_spacing(&self) -> f64 {
        2.0 * PI * self.magnetic_length().powi(2) / self.l_y
    }

    fn charge(&self) -> f64 {
        self.charge_sign as f64
    }
}

/// `E = ω_c (n + 1/2) + k_z²/2`.
pub fn landau_energy(cfg: &LandauConfig, n: i64, k_z: f64) -> Result<f64> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("Landau index {n} < 0")));
    }
    Ok(cfg.cyclotron_frequency() * (n as f64 + 0.5) + 0.5 * k_z * k_z)
}

/// Landau-gauge eigenfunction `χ_n(x - x0)` on the magnetic length.
pub fn landau_wf(cfg: &LandauConfig, n: i64, x0: f64, x: f64) -> Result<f64> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("Landau index {n} < 0")));
    }
    let state = OscillatorState::new(n as usize, cfg.magnetic_length())?;
    oscillator_wf(state, x - x0)
}

/// Guiding centers `x0 = 2πjℓ²/L_y` that fall inside `[0, l_x]`.
pub fn guiding_centers(cfg: &LandauConfig, l_x: f64) -> Vec<f64> {
    let dx0 = cfg.guiding_center_spacing();
    let count = (l_x / dx0).floor() as usize;
    (0..=count).map(|j| j as f64 * dx0).filter(|&x| x <= l_x).collect()
}

/// Uniform 1D grid `x_i = x_min + i·dx`, `i < n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub dx: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 3 || !(x_max > x_min) {
            return Err(Error::InvalidArgument("grid needs n ≥ 3 and x_max > x_min".into()));
        }
        Ok(Self { x_min, dx: (x_max - x_min) / (n - 1) as f64, n })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.n - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.x(i))
    }
}

/// Sampled current density of one Landau state.
#[derive(Debug, Clone)]
pub struct CurrentProfile {
    pub x: Vec<f64>,
    pub j_y: Vec<f64>,
    pub j_z: Vec<f64>,
    pub dx: f64,
}

impl CurrentProfile {
    /// `j_x` vanishes identically for these states.
    pub fn j_x(&self) -> Vec<f64> {
        vec![0.0; self.x.len()]
    }

    pub fn total_y(&self) -> f64 {
        simpson_uniform(&self.j_y, self.dx)
    }

    pub fn total_z(&self) -> f64 {
        simpson_uniform(&self.j_z, self.dx)
    }
}

/// `j_y = q ω_c (x0 - x) ρ`, `j_z = q k_z ρ` with `ρ = φ²/(L_y L_z)` for a
/// wavefunction sampled on `grid`. Rejects input that is not normalized to 1.
pub fn current_profile_from_wf(
    cfg: &LandauConfig,
    x0: f64,
    k_z: f64,
    grid: &Grid,
    phi: &[f64],
) -> Result<CurrentProfile> {
    if phi.len() != grid.n {
        return Err(Error::ShapeMismatch {
            expected: format!("{} samples", grid.n),
            found: format!("{}", phi.len()),
        });
    }
    let sq: Vec<f64> = phi.iter().map(|p| p * p).collect();
    let norm = simpson_uniform(&sq, grid.dx);
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidArgument(format!("wavefunction norm {norm} ≠ 1")));
    }
    let q = cfg.charge();
    let area = cfg.l_y * cfg.l_z;
    let x: Vec<f64> = grid.points().collect();
    let j_y = x
        .iter()
        .zip(&sq)
        .map(|(xi, r)| q * cfg.cyclotron_frequency() * (x0 - xi) * r / area)
        .collect();
    let j_z = sq.iter().map(|r| q * k_z * r / area).collect();
    Ok(CurrentProfile { x, j_y, j_z, dx: grid.dx })
}

/// Current profile of the unperturbed Landau state `(n, x0, k_z)`.
pub fn landau_current_profile(cfg: &LandauConfig, n: i64, x0: f64, k_z: f64, grid: &Grid) -> Result<CurrentProfile> {
    let phi = grid.points().map(|x| landau_wf(cfg, n, x0, x)).collect::<Result<Vec<_>>>()?;
    current_profile_from_wf(cfg, x0, k_z, grid, &phi)
}

/// Edge potential `V(x)` tabulated on a uniform grid, linearly interpolated
/// between samples and held constant beyond the ends.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    pub x_min: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl TabulatedPotential {
    pub fn from_fn<F: Fn(f64) -> f64>(grid: &Grid, f: F) -> Self {
        Self { x_min: grid.x_min, dx: grid.dx, values: grid.points().map(f).collect() }
    }

    pub fn constant(grid: &Grid, c: f64) -> Self {
        Self::from_fn(grid, |_| c)
    }

    /// Soft exponential walls of height scale `v0` and softness `s` at `left`, `right`.
    pub fn soft_walls(grid: &Grid, left: f64, right: f64, v0: f64, s: f64) -> Self {
        Self::from_fn(grid, |x| v0 * (((left - x) / s).exp() + ((x - right) / s).exp()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let t = (x - self.x_min) / self.dx;
        if t <= 0.0 {
            return self.values[0];
        }
        let i = t.floor() as usize;
        if i + 1 >= n {
            return self.values[n - 1];
        }
        let f = t - i as f64;
        self.values[i] * (1.0 - f) + self.values[i + 1] * f
    }
}

/// Guiding-center problem with an extra confining potential.
#[derive(Debug, Clone)]
pub struct EdgeProblem {
    pub potential: TabulatedPotential,
    pub x0: f64,
    pub n_levels: usize,
    pub grid: Grid,
}

/// Lowest levels `ε_n(x0)` with eigenvectors normalized as `∫φ² dx = 1`.
#[derive(Debug, Clone)]
pub struct EdgeSpectrum {
    pub x0: f64,
    pub energies: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub grid: Grid,
}

impl EdgeSpectrum {
    /// Feynman–Hellmann side: `ω_c² ∫ (x0 - x) φ_n² dx`.
    pub fn position_moment_slope(&self, cfg: &LandauConfig, n: usize) -> f64 {
        let f: Vec<f64> = self.vectors[n]
            .iter()
            .enumerate()
            .map(|(i, p)| (self.x0 - self.grid.x(i)) * p * p)
            .collect();
        cfg.cyclotron_frequency().powi(2) * simpson_uniform(&f, self.grid.dx)
    }
}

/// Finite-difference eigen-solve of `p²/2 + ω_c²(x-x0)²/2 + V(x)` with
/// Dirichlet walls at the grid ends.
pub fn edge_spectrum(cfg: &LandauConfig, prob: &EdgeProblem) -> Result<EdgeSpectrum> {
    let ell = cfg.magnetic_length();
    if prob.grid.dx >= ell / 10.0 {
        return Err(Error::GridTooCoarse { spacing: prob.grid.dx, required: ell / 10.0 });
    }
    if prob.n_levels == 0 || prob.n_levels > prob.grid.n {
        return Err(Error::InvalidArgument(format!("n_levels = {}", prob.n_levels)));
    }
    let grid = prob.grid;
    let h2 = grid.dx * grid.dx;
    let wc2 = cfg.cyclotron_frequency().powi(2);
    let diag: Vec<f64> = grid
        .points()
        .map(|x| 1.0 / h2 + 0.5 * wc2 * (x - prob.x0).powi(2) + prob.potential.eval(x))
        .collect();
    if diag.iter().any(|d| !d.is_finite()) {
        return Err(Error::InvalidArgument("potential is not finite on the grid".into()));
    }
    let off = vec![-0.5 / h2; grid.n - 1];
    let t = SymTridiagonal::new(diag, off);
    let scale = grid.dx.sqrt();
    let mut energies = Vec::with_capacity(prob.n_levels);
    let mut vectors = Vec::with_capacity(prob.n_levels);
    for k in 0..prob.n_levels {
        let e = t.eigenvalue(k);
        let mut v = t.eigenvector(e);
        v.iter_mut().for_each(|x| *x /= scale);
        energies.push(e);
        vectors.push(v);
    }
    Ok(EdgeSpectrum { x0: prob.x0, energies, vectors, grid })
}

/// `ε_n(x0)` for each guiding center in `x0s`, one row per `x0`.
pub fn edge_spectrum_sweep(cfg: &LandauConfig, prob: &EdgeProblem, x0s: &[f64]) -> Result<Vec<EdgeSpectrum>> {
    x0s.iter()
        .map(|&x0| edge_spectrum(cfg, &EdgeProblem { x0, ..prob.clone() }))
        .collect()
}

/// Edge current of level `n` at guiding center `x0`, from the profile
/// integral and from the spectral slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCurrent {
    pub n: usize,
    pub x0: f64,
    pub energy: f64,
    /// `I_y = ∫ j_y dx` from the eigenvector.
    pub current: f64,
    /// Central difference `∂ε_n/∂x0`.
    pub spectral_slope: f64,
    /// `ω_c² ∫ (x0 - x) φ² dx`.
    pub moment_slope: f64,
}

impl EdgeCurrent {
    /// `I_y` implied by the spectral slope via `∂ε/∂x0 = (ω_c L_y / q) I_y`.
    pub fn current_from_slope(&self, cfg: &LandauConfig) -> f64 {
        cfg.charge() * self.spectral_slope / (cfg.cyclotron_frequency() * cfg.l_y)
    }
}

/// Step in `x0` (units of `ℓ`) for the spectral derivative.
pub const EDGE_SLOPE_STEP: f64 = 1e-2;

pub fn edge_current(cfg: &LandauConfig, prob: &EdgeProblem) -> Result<Vec<EdgeCurrent>> {
    let spec = edge_spectrum(cfg, prob)?;
    let h = EDGE_SLOPE_STEP * cfg.magnetic_length();
    let plus = edge_spectrum(cfg, &EdgeProblem { x0: prob.x0 + h, ..prob.clone() })?;
    let minus = edge_spectrum(cfg, &EdgeProblem { x0: prob.x0 - h, ..prob.clone() })?;
    (0..prob.n_levels)
        .map(|n| {
            let profile = current_profile_from_wf(cfg, prob.x0, 0.0, &spec.grid, &spec.vectors[n])?;
            Ok(EdgeCurrent {
                n,
                x0: prob.x0,
                energy: spec.energies[n],
                current: profile.total_y() * cfg.l_z,
                spectral_slope: (plus.energies[n] - minus.energies[n]) / (2.0 * h),
                moment_slope: spec.position_moment_slope(cfg, n),
            })
        })
        .collect()
}

/// Ring of radius `a` threaded by flux `Φ/Φ0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingConfig {
    pub radius: f64,
    pub flux_ratio: f64,
    pub m_range: i64,
}

/// `(M, E_M)` with `E_M = (M + Φ/Φ0)²/(2a²)`, sorted by energy then `M`.
pub fn ab_ring_spectrum(cfg: &RingConfig) -> Result<Vec<(i64, f64)>> {
    if cfg.m_range < 1 {
        return Err(Error::InvalidArgument("m_range must be ≥ 1".into()));
    }
    if !(cfg.radius > 0.0) {
        return Err(Error::InvalidArgument("ring radius must be positive".into()));
    }
    let mut out: Vec<(i64, f64)> = (-cfg.m_range..=cfg.m_range)
        .map(|m| (m, (m as f64 + cfg.flux_ratio).powi(2) / (2.0 * cfg.radius * cfg.radius)))
        .collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(out)
}

/// Levels of a particle confined to a sector of opening `φ0`; the flux drops out.
pub fn ab_sector_spectrum(cfg: &RingConfig, opening: f64, n_levels: usize) -> Result<Vec<f64>> {
    if !(opening > 0.0 && opening < 2.0 * PI) {
        return Err(Error::InvalidArgument(format!("sector opening {opening} outside (0, 2π)")));
    }
    let a = cfg.radius;
    Ok((1..=n_levels)
        .map(|n| PI * PI * (n * n) as f64 / (2.0 * a * a * opening * opening))
        .collect())
}

/// Fringe shift `Δy = (2πb/kd)(Φ/Φ0)` on a screen at distance `b`.
pub fn two_slit_shift(b: f64, k: f64, d: f64, flux_ratio: f64) -> Result<f64> {
    if !(b > 0.0 && k > 0.0 && d > 0.0) {
        return Err(Error::InvalidArgument("b, k, d must be positive".into()));
    }
    Ok(2.0 * PI * b / (k * d) * flux_ratio)
}

/// Convective and diamagnetic parts of the current along the field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentParts {
    pub convective: f64,
    pub diamagnetic: f64,
}

impl CurrentParts {
    pub fn total(&self) -> f64 {
        self.convective + self.diamagnetic
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeCurrents {
    pub static_gauge: CurrentParts,
    pub time_dependent_gauge: CurrentParts,
}

/// Plane-wave current in a uniform field `E`, charge `q`, in the static
/// (`φ = -E·r`) and time-dependent (`A = -E t`) gauges, `|C0| = 1`.
pub fn gauge_current_check(charge: f64, e_field: f64, k: f64, t: f64) -> GaugeCurrents {
    GaugeCurrents {
        static_gauge: CurrentParts { convective: charge * (k + charge * e_field * t), diamagnetic: 0.0 },
        time_dependent_gauge: CurrentParts {
            convective: charge * k,
            diamagnetic: charge * charge * e_field * t,
        },
    }
}

/// `α = (2F)^{1/3}` for the linear potential `-F x`.
pub fn airy_scale(f_slope: f64) -> f64 {
    (2.0 * f_slope).cbrt()
}

/// Unnormalized `φ_ε(x) = Ai(-α(x + ε/F))`.
pub fn linear_potential_wf(eps: f64, f_slope: f64, x: f64) -> Result<f64> {
    if !(f_slope > 0.0) {
        return Err(Error::InvalidArgument(format!("force {f_slope} must be positive")));
    }
    airy_ai(-airy_scale(f_slope) * (x + eps / f_slope))
}

/// WKB envelope `exp(-|p0|³/(3F))` in the forbidden region `x < -ε/F`, with
/// `|p0| = √(2F|x + ε/F|)`.
pub fn forbidden_region_envelope(eps: f64, f_slope: f64, x: f64) -> f64 {
    let depth = (-(x + eps / f_slope)).max(0.0);
    let p0 = (2.0 * f_slope * depth).sqrt();
    (-p0.powi(3) / (3.0 * f_slope)).exp()
}

/// Nodes of `φ_ε` from the Airy zeros: `x_k = -ε/F + |a_k|/α`.
pub fn linear_potential_nodes(eps: f64, f_slope: f64, airy_zeros: &[f64]) -> Vec<f64> {
    let alpha = airy_scale(f_slope);
    airy_zeros.iter().map(|a| -eps / f_slope - a / alpha).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit() -> LandauConfig {
        LandauConfig::new(1.0, 10.0, 1.0, 1).unwrap()
    }

    #[test]
    fn landau_energies() {
        let c = unit();
        assert_abs_diff_eq!(landau_energy(&c, 0, 0.0).unwrap(), 0.5);
        assert_abs_diff_eq!(landau_energy(&c, 2, 0.0).unwrap(), 2.5);
        let c2 = LandauConfig::new(2.0, 10.0, 1.0, 1).unwrap();
        assert_abs_diff_eq!(landau_energy(&c2, 3, 0.0).unwrap(), 2.0 * landau_energy(&c, 3, 0.0).unwrap());
        assert!(landau_energy(&c, -1, 0.0).is_err());
    }

    #[test]
    fn landau_wf_peak_and_parity() {
        let c = unit();
        let x0 = 1.3;
        let peak = landau_wf(&c, 0, x0, x0).unwrap();
        for dx in [0.05, 0.2, 0.7] {
            assert!(landau_wf(&c, 0, x0, x0 + dx).unwrap() < peak);
        }
        for n in 0..5 {
            let a = landau_wf(&c, n, x0, x0 + 0.4).unwrap();
            let b = landau_wf(&c, n, x0, x0 - 0.4).unwrap();
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(a, s * b, epsilon = 1e-14);
        }
    }

    #[test]
    fn config_validation() {
        assert!(LandauConfig::new(0.0, 1.0, 1.0, 1).is_err());
        assert!(LandauConfig::new(1.0, 1.0, 1.0, 0).is_err());
        assert!(LandauConfig::new(1.0, -1.0, 1.0, 1).is_err());
    }

    #[test]
    fn coarse_grid_rejected() {
        let c = unit();
        let g = Grid::new(-10.0, 10.0, 101).unwrap();
        let prob = EdgeProblem { potential: TabulatedPotential::constant(&g, 0.0), x0: 0.0, n_levels: 1, grid: g };
        assert!(matches!(edge_spectrum(&c, &prob), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn unnormalized_profile_rejected() {
        let c = unit();
        let g = Grid::new(-10.0, 10.0, 801).unwrap();
        let phi: Vec<f64> = g.points().map(|x| 2.0 * landau_wf(&c, 0, 0.0, x).unwrap()).collect();
        assert!(current_profile_from_wf(&c, 0.0, 0.0, &g, &phi).is_err());
    }

    #[test]
    fn ring_spectrum_zero_flux() {
        let cfg = RingConfig { radius: 2.0, flux_ratio: 0.0, m_range: 3 };
        for (m, e) in ab_ring_spectrum(&cfg).unwrap() {
            assert_abs_diff_eq!(e, (m * m) as f64 / 8.0, epsilon = 1e-15);
        }
        assert!(ab_ring_spectrum(&RingConfig { m_range: 0, ..cfg }).is_err());
    }

    #[test]
    fn sector_levels() {
        let cfg = RingConfig { radius: 1.0, flux_ratio: 0.3, m_range: 1 };
        let e = ab_sector_spectrum(&cfg, PI, 3).unwrap();
        assert_abs_diff_eq!(e[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(e[2] / e[0], 9.0, epsilon = 1e-12);
        let other = ab_sector_spectrum(&RingConfig { flux_ratio: 0.77, ..cfg }, PI, 3).unwrap();
        assert_eq!(e, other);
        assert!(ab_sector_spectrum(&cfg, 2.0 * PI, 3).is_err());
    }

    #[test]
    fn two_slit() {
        assert_eq!(two_slit_shift(1.0, 2.0, 0.5, 0.0).unwrap(), 0.0);
        let fringe = 2.0 * PI * 3.0 / (4.0 * 0.1);
        assert_abs_diff_eq!(two_slit_shift(3.0, 4.0, 0.1, 1.0).unwrap(), fringe, epsilon = 1e-12);
        assert_abs_diff_eq!(
            two_slit_shift(3.0, 4.0, 0.2, 0.3).unwrap(),
            0.5 * two_slit_shift(3.0, 4.0, 0.1, 0.3).unwrap(),
            epsilon = 1e-14
        );
        assert!(two_slit_shift(0.0, 1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn gauge_currents_limits() {
        let g = gauge_current_check(1.0, 0.7, 1.1, 0.0);
        assert_eq!(g.static_gauge, g.time_dependent_gauge);
        let g = gauge_current_check(-1.0, 0.0, 1.1, 3.0);
        assert_eq!(g.static_gauge.diamagnetic, 0.0);
        assert_eq!(g.time_dependent_gauge.diamagnetic, 0.0);
    }

    #[test]
    fn linear_potential_turning_point() {
        let v = linear_potential_wf(1.5, 0.5, -3.0).unwrap();
        assert_abs_diff_eq!(v, airy_ai(0.0).unwrap(), epsilon = 1e-15);
        assert!(linear_potential_wf(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn one_state_per_flux_quantum() {
        for &(b, lx, ly) in &[(1.0, 20.0, 15.0), (2.5, 7.0, 31.0), (0.3, 50.0, 12.0)] {
            let cfg = LandauConfig::new(b, ly, 1.0, 1).unwrap();
            let count = guiding_centers(&cfg, lx).len() as f64;
            let expect = b * lx * ly / (2.0 * PI);
            assert!((count - expect).abs() <= 1.0, "count {count} vs {expect}");
        }
    }
}
