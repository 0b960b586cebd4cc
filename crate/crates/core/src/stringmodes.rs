//! Normal modes of a 1D string, the standing-to-traveling wave transform,
//! quanta spectra and the regularized Casimir energy.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::numerics::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Fixed,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StringConfig {
    pub length: f64,
    pub speed: f64,
    pub cutoff_index: u64,
    pub boundary: Boundary,
}

impl StringConfig {
    pub fn new(length: f64, speed: f64, cutoff_index: u64, boundary: Boundary) -> Result<Self> {
        if !(length > 0.0 && speed > 0.0) {
            return Err(Error::InvalidArgument("length and speed must be positive".into()));
        }
        if cutoff_index < 1 {
            return Err(Error::InvalidArgument("cutoff index must be ≥ 1".into()));
        }
        Ok(Self { length, speed, cutoff_index, boundary })
    }

    /// Wavenumber of signed mode index `nu`.
    pub fn wavenumber(&self, nu: i64) -> f64 {
        match self.boundary {
            Boundary::Fixed => PI * nu as f64 / self.length,
            Boundary::Periodic => 2.0 * PI * nu as f64 / self.length,
        }
    }

    pub fn frequency(&self, nu: i64) -> f64 {
        self.speed * self.wavenumber(nu).abs()
    }

    fn contains(&self, nu: i64) -> bool {
        let c = self.cutoff_index as i64;
        match self.boundary {
            Boundary::Fixed => (1..=c).contains(&nu),
            Boundary::Periodic => nu != 0 && nu.abs() <= c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub index: i64,
    pub k: f64,
    pub omega: f64,
}

/// Fixed ends: `ν = 1..ν_c`. Periodic: `ν = -ν_c..-1, 1..ν_c`.
pub fn mode_table(cfg: &StringConfig) -> Vec<Mode> {
    let c = cfg.cutoff_index as i64;
    let indices: Vec<i64> = match cfg.boundary {
        Boundary::Fixed => (1..=c).collect(),
        Boundary::Periodic => (-c..=-1).chain(1..=c).collect(),
    };
    indices
        .into_iter()
        .map(|nu| Mode { index: nu, k: cfg.wavenumber(nu), omega: cfg.frequency(nu) })
        .collect()
}

/// Real orthonormal mode function on `[0, L]`. For periodic strings a
/// positive index selects the sine and a negative one the cosine of `|k|`.
pub fn mode_function(cfg: &StringConfig, nu: i64, x: f64) -> f64 {
    let norm = (2.0 / cfg.length).sqrt();
    let k = cfg.wavenumber(nu.abs());
    match (cfg.boundary, nu > 0) {
        (Boundary::Periodic, false) => norm * (k * x).cos(),
        _ => norm * (k * x).sin(),
    }
}

/// Variance `1/(2ω)` of a mode coordinate in the string ground state.
pub fn ground_state_variance(cfg: &StringConfig, nu: i64) -> f64 {
    0.5 / cfg.frequency(nu)
}

/// Phase-space coordinates of the two traveling modes `±k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelingPair {
    pub q_k: f64,
    pub p_k: f64,
    pub q_mk: f64,
    pub p_mk: f64,
}

/// Phase-space coordinates of the two degenerate standing modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandingPair {
    pub q1: f64,
    pub p1: f64,
    pub q2: f64,
    pub p2: f64,
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("mode frequency {omega} must be positive")))
    }
}

/// Standing → traveling, the inverse of [`standing_from_traveling`].
pub fn traveling_transform(s: StandingPair, omega: f64) -> Result<TravelingPair> {
    check_omega(omega)?;
    Ok(TravelingPair {
        q_k: FRAC_1_SQRT_2 * (s.q1 - s.p2 / omega),
        p_k: FRAC_1_SQRT_2 * (s.p1 + omega * s.q2),
        q_mk: FRAC_1_SQRT_2 * (-s.q1 - s.p2 / omega),
        p_mk: FRAC_1_SQRT_2 * (omega * s.q2 - s.p1),
    })
}

/// `Q1 = (Q_k - Q_-k)/√2`, `P1 = (P_k - P_-k)/√2`,
/// `Q2 = (P_k + P_-k)/(ω√2)`, `P2 = -ω(Q_k + Q_-k)/√2`.
pub fn standing_from_traveling(t: TravelingPair, omega: f64) -> Result<StandingPair> {
    check_omega(omega)?;
    Ok(StandingPair {
        q1: FRAC_1_SQRT_2 * (t.q_k - t.q_mk),
        p1: FRAC_1_SQRT_2 * (t.p_k - t.p_mk),
        q2: FRAC_1_SQRT_2 * (t.p_k + t.p_mk) / omega,
        p2: -FRAC_1_SQRT_2 * omega * (t.q_k + t.q_mk),
    })
}

/// Jacobian of the standing → traveling map in the variable order
/// `(q1, q2, p1, p2) → (Q_k, Q_-k, P_k, P_-k)`.
pub fn traveling_jacobian(omega: f64) -> Result<[[f64; 4]; 4]> {
    check_omega(omega)?;
    let r = FRAC_1_SQRT_2;
    Ok([
        [r, 0.0, 0.0, -r / omega],
        [-r, 0.0, 0.0, -r / omega],
        [0.0, r * omega, r, 0.0],
        [0.0, r * omega, -r, 0.0],
    ])
}

/// Max-norm of `JᵀΩJ - Ω` for the canonical form `Ω = [[0, I], [-I, 0]]`.
pub fn symplectic_residual(j: &[[f64; 4]; 4]) -> f64 {
    let omega = |a: usize, b: usize| -> f64 {
        match (a, b) {
            (0, 2) | (1, 3) => 1.0,
            (2, 0) | (3, 1) => -1.0,
            _ => 0.0,
        }
    };
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for c in 0..4 {
                for d in 0..4 {
                    s += j[c][a] * omega(c, d) * j[d][b];
                }
            }
            worst = worst.max((s - omega(a, b)).abs());
        }
    }
    worst
}

/// Occupation numbers keyed by signed mode index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModeOccupation {
    pub occupations: BTreeMap<i64, u64>,
}

impl ModeOccupation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, nu: i64, n: u64) -> Self {
        self.occupations.insert(nu, n);
        self
    }
}

fn check_occupation(cfg: &StringConfig, occ: &ModeOccupation) -> Result<()> {
    match occ.occupations.keys().find(|&&nu| !cfg.contains(nu)) {
        Some(nu) => Err(Error::InvalidArgument(format!("mode {nu} outside the cutoff"))),
        None => Ok(()),
    }
}

/// `E = Σ ω_ν N_ν` above the zero-point energy.
pub fn quanta_energy(cfg: &StringConfig, occ: &ModeOccupation) -> Result<f64> {
    check_occupation(cfg, occ)?;
    Ok(occ.occupations.iter().map(|(&nu, &n)| cfg.frequency(nu) * n as f64).sum())
}

/// `(E, P)` with `P = Σ k N_k`; only periodic strings carry momentum.
pub fn quanta_spectrum(cfg: &StringConfig, occ: &ModeOccupation) -> Result<(f64, f64)> {
    if cfg.boundary == Boundary::Fixed {
        return Err(Error::Unsupported("momentum of a fixed-end string".into()));
    }
    let e = quanta_energy(cfg, occ)?;
    let p = occ.occupations.iter().map(|(&nu, &n)| cfg.wavenumber(nu) * n as f64).sum();
    Ok((e, p))
}

/// Largest cutoff accepted by the regularized sums.
pub const MAX_SOFT_CUTOFF: f64 = 1e7;

/// `S(α) = Σ_{ν≥1} ν e^{-αν}`, summed term by term with compensation.
pub fn soft_mode_sum(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || 1.0 / alpha > 1e8 {
        return Err(Error::InvalidArgument(format!("regulator α = {alpha} out of range")));
    }
    let terms = (60.0 / alpha).ceil() as u64;
    let mut acc = CompensatedSum::new();
    for nu in 1..=terms {
        let x = nu as f64;
        acc.add(x * (-alpha * x).exp());
    }
    Ok(acc.value())
}

/// `Σ ν e^{-ν/ν_c} - ν_c²`, which tends to `-1/12`.
pub fn casimir_regularized_sum(nu_c: f64) -> Result<f64> {
    if !(10.0..=MAX_SOFT_CUTOFF).contains(&nu_c) {
        return Err(Error::InvalidArgument(format!("ν_c = {nu_c} outside [10, {MAX_SOFT_CUTOFF}]")));
    }
    Ok(soft_mode_sum(1.0 / nu_c)? - nu_c * nu_c)
}

/// Zero-point energy `½ Σ ω_ν e^{-ω_ν/Ω}` of a fixed segment of length `a`,
/// with `Ω = πvν_c/L` set by the full string.
fn segment_energy_soft(cfg: &StringConfig, a: f64) -> Result<f64> {
    let alpha = cfg.length / (a * cfg.cutoff_index as f64);
    Ok(0.5 * PI * cfg.speed / a * soft_mode_sum(alpha)?)
}

fn segment_energy_hard(cfg: &StringConfig, a: f64) -> f64 {
    let n = (cfg.cutoff_index as f64 * a / cfg.length).floor();
    0.5 * PI * cfg.speed / a * 0.5 * n * (n + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirPoint {
    pub d: f64,
    pub delta_e0: f64,
    pub force: f64,
}

/// `-(πv/24)(1/d + 1/(L-d) - 4/L)`.
pub fn casimir_closed_form(length: f64, speed: f64, d: f64) -> f64 {
    -(PI * speed / 24.0) * (1.0 / d + 1.0 / (length - d) - 4.0 / length)
}

/// `-dΔE0/dd` of the closed form.
pub fn casimir_closed_form_force(length: f64, speed: f64, d: f64) -> f64 {
    -(PI * speed / 24.0) * (1.0 / (d * d) - 1.0 / ((length - d) * (length - d)))
}

/// Relative step of the central difference used for the force.
pub const CASIMIR_FORCE_STEP: f64 = 1e-3;

/// Soft-cutoff zero-point energy of a string pinned at `d`, relative to
/// `d = L/2`, and the force `-dΔE0/dd`.
pub fn casimir_energy(cfg: &StringConfig, d: f64) -> Result<CasimirPoint> {
    let l = cfg.length;
    let h = CASIMIR_FORCE_STEP * d.min(l - d);
    if !(d > 0.0 && d < l) {
        return Err(Error::InvalidArgument(format!("partition at d = {d} not inside (0, {l})")));
    }
    let reference = 2.0 * segment_energy_soft(cfg, 0.5 * l)?;
    let total = |x: f64| -> Result<f64> { Ok(segment_energy_soft(cfg, x)? + segment_energy_soft(cfg, l - x)?) };
    let delta_e0 = total(d)? - reference;
    let force = -(total(d + h)? - total(d - h)?) / (2.0 * h);
    Ok(CasimirPoint { d, delta_e0, force })
}

/// Same construction with a hard cutoff `ν ≤ ν_c a/L` in each segment.
/// Shown for contrast: the result jumps as modes cross the cutoff.
pub fn casimir_energy_hard(cfg: &StringConfig, d: f64) -> Result<f64> {
    let l = cfg.length;
    if !(d > 0.0 && d < l) {
        return Err(Error::InvalidArgument(format!("partition at d = {d} not inside (0, {l})")));
    }
    Ok(segment_energy_hard(cfg, d) + segment_energy_hard(cfg, l - d) - 2.0 * segment_energy_hard(cfg, 0.5 * l))
}

/// Action `I = (p² + ω²q²)/(2ω)` and angle `α = atan2(-p, ωq)`.
pub fn action_angle(q: f64, p: f64, omega: f64) -> Result<(f64, f64)> {
    check_omega(omega)?;
    if q == 0.0 && p == 0.0 {
        return Err(Error::InvalidArgument("angle undefined at the phase-space origin".into()));
    }
    Ok(((p * p + omega * omega * q * q) / (2.0 * omega), (-p).atan2(omega * q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fixed_string_frequencies() {
        let c = StringConfig::new(PI, 1.0, 5, Boundary::Fixed).unwrap();
        for m in mode_table(&c) {
            assert_abs_diff_eq!(m.omega, m.index as f64, epsilon = 1e-14);
        }
    }

    #[test]
    fn periodic_spacing_doubles() {
        let f = StringConfig::new(2.0, 1.0, 3, Boundary::Fixed).unwrap();
        let p = StringConfig { boundary: Boundary::Periodic, ..f };
        let tf = mode_table(&f);
        let tp = mode_table(&p);
        assert_eq!(tp.len(), 6);
        assert_abs_diff_eq!(tp[4].k - tp[3].k, 2.0 * (tf[1].k - tf[0].k), epsilon = 1e-14);
        assert_eq!(p.frequency(2), p.frequency(-2));
    }

    #[test]
    fn transform_example_and_zero() {
        let t = traveling_transform(StandingPair { q1: 1.0, p1: 0.0, q2: 0.0, p2: 0.0 }, 1.0).unwrap();
        assert_abs_diff_eq!(t.q_k, FRAC_1_SQRT_2, epsilon = 1e-16);
        assert_abs_diff_eq!(t.q_mk, -FRAC_1_SQRT_2, epsilon = 1e-16);
        assert_eq!((t.p_k, t.p_mk), (0.0, 0.0));
        let z = StandingPair { q1: 0.0, p1: 0.0, q2: 0.0, p2: 0.0 };
        let tz = traveling_transform(z, 3.0).unwrap();
        assert_eq!(standing_from_traveling(tz, 3.0).unwrap(), z);
        assert!(traveling_transform(z, 0.0).is_err());
    }

    #[test]
    fn jacobian_symplectic() {
        for w in [0.3, 1.0, 7.5] {
            assert!(symplectic_residual(&traveling_jacobian(w).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn quanta() {
        let c = StringConfig::new(1.0, 2.0, 4, Boundary::Periodic).unwrap();
        let (e, p) = quanta_spectrum(&c, &ModeOccupation::new().with(3, 1)).unwrap();
        assert_abs_diff_eq!(e, c.frequency(3));
        assert_abs_diff_eq!(p, c.wavenumber(3));
        assert_abs_diff_eq!(e, c.speed * p.abs(), epsilon = 1e-14);
        let (_, p) = quanta_spectrum(&c, &ModeOccupation::new().with(2, 1).with(-2, 1)).unwrap();
        assert_eq!(p, 0.0);
        assert!(quanta_spectrum(&c, &ModeOccupation::new().with(5, 1)).is_err());
        let f = StringConfig { boundary: Boundary::Fixed, ..c };
        assert!(quanta_spectrum(&f, &ModeOccupation::new().with(1, 1)).is_err());
        assert!(quanta_energy(&f, &ModeOccupation::new().with(1, 2)).is_ok());
    }

    #[test]
    fn action_angle_basics() {
        let (i, a) = action_angle(1.0, 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(i, 1.0);
        assert_abs_diff_eq!(a, 0.0);
        let (i3, _) = action_angle(3.0, 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(i3, 9.0, epsilon = 1e-14);
        assert!(action_angle(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn casimir_midpoint_zero() {
        let c = StringConfig::new(1.0, 1.0, 1000, Boundary::Fixed).unwrap();
        assert_eq!(casimir_energy(&c, 0.5).unwrap().delta_e0, 0.0);
        assert!(casimir_energy(&c, 0.0).is_err());
        assert!(casimir_energy(&c, 1.0).is_err());
    }

    #[test]
    fn regularized_sum_range() {
        assert!(casimir_regularized_sum(5.0).is_err());
        assert!(casimir_regularized_sum(1e9).is_err());
    }
}
