//! Single-mode field states: number, coherent and thermal.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest truncation that keeps the Poisson tail below `1e-10`.
pub fn required_truncation(alpha: Complex64) -> usize {
    let a = alpha.norm();
    (a * a + 8.0 * a + 20.0).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentState {
    pub alpha: Complex64,
    pub omega: f64,
    pub n_max: usize,
}

impl CoherentState {
    pub fn new(alpha: Complex64, omega: f64) -> Result<Self> {
        Self::with_truncation(alpha, omega, required_truncation(alpha))
    }

    pub fn with_truncation(alpha: Complex64, omega: f64, n_max: usize) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidArgument(format!("mode frequency {omega}")));
        }
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::NonFinite("coherent amplitude"));
        }
        let required = required_truncation(alpha);
        if n_max < required {
            return Err(Error::TruncationInsufficient { n_max, required });
        }
        Ok(Self { alpha, omega, n_max })
    }

    /// Build from the classical phase-space point,
    /// `α = √(ω/2) q0 + i p0/√(2ω)`.
    pub fn from_phase_space(q0: f64, p0: f64, omega: f64) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::InvalidArgument(format!("mode frequency {omega}")));
        }
        Self::new(Complex64::new((omega / 2.0).sqrt() * q0, p0 / (2.0 * omega).sqrt()), omega)
    }

    /// `(q0, p0) = (√(2/ω) Re α, √(2ω) Im α)`.
    pub fn phase_space(&self) -> (f64, f64) {
        ((2.0 / self.omega).sqrt() * self.alpha.re, (2.0 * self.omega).sqrt() * self.alpha.im)
    }

    /// `α → α e^{-iωt}`.
    pub fn evolve(&self, t: f64) -> Self {
        Self { alpha: self.alpha * Complex64::from_polar(1.0, -self.omega * t), ..*self }
    }

    /// `c_n = e^{-|α|²/2} αⁿ/√n!`, `n = 0..=n_max`, evaluated in log space.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        let r = self.alpha.norm();
        let theta = self.alpha.arg();
        let mut log_fact = 0.0;
        (0..=self.n_max)
            .map(|n| {
                if n > 0 {
                    log_fact += (n as f64).ln();
                }
                if r == 0.0 {
                    return Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0);
                }
                let log_mod = -0.5 * r * r + n as f64 * r.ln() - 0.5 * log_fact;
                Complex64::from_polar(log_mod.exp(), n as f64 * theta)
            })
            .collect()
    }
}

/// `c_n` of the coherent state, rejecting inadequate truncations.
pub fn coherent_amplitudes(state: &CoherentState) -> Result<Vec<Complex64>> {
    let required = required_truncation(state.alpha);
    if state.n_max < required {
        return Err(Error::TruncationInsufficient { n_max: state.n_max, required });
    }
    Ok(state.amplitudes())
}

pub fn coherent_evolve(state: &CoherentState, t: f64) -> CoherentState {
    state.evolve(t)
}

/// `⟨α|β⟩ = exp(-|α|²/2 - |β|²/2 + α*β)`.
pub fn overlap(alpha: Complex64, beta: Complex64) -> Complex64 {
    (-0.5 * alpha.norm_sqr() - 0.5 * beta.norm_sqr() + alpha.conj() * beta).exp()
}

/// State of one mode used for moments and field profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldState {
    Number(u64),
    Coherent(CoherentState),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uncertainties {
    pub dq: f64,
    pub dp: f64,
}

impl Uncertainties {
    pub fn product(&self) -> f64 {
        self.dq * self.dp
    }
}

/// Closed-form `Δq`, `Δp` for an oscillator of frequency `ω`.
pub fn uncertainties(state: &FieldState, omega: f64) -> Uncertainties {
    let scale = match state {
        FieldState::Number(n) => (2 * n + 1) as f64,
        FieldState::Coherent(_) => 1.0,
    };
    Uncertainties { dq: (scale / (2.0 * omega)).sqrt(), dp: (scale * omega / 2.0).sqrt() }
}

/// Normally ordered moments `⟨a⟩`, `⟨a²⟩`, `⟨a†a⟩` and norm of a state
/// given by number-basis amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderMoments {
    pub norm: f64,
    pub a: Complex64,
    pub a2: Complex64,
    pub n: f64,
}

pub fn ladder_moments(c: &[Complex64]) -> LadderMoments {
    let mut norm = 0.0;
    let mut a = Complex64::new(0.0, 0.0);
    let mut a2 = Complex64::new(0.0, 0.0);
    let mut n = 0.0;
    for (k, ck) in c.iter().enumerate() {
        let kf = k as f64;
        norm += ck.norm_sqr();
        n += kf * ck.norm_sqr();
        if k >= 1 {
            a += kf.sqrt() * c[k - 1].conj() * ck;
        }
        if k >= 2 {
            a2 += (kf * (kf - 1.0)).sqrt() * c[k - 2].conj() * ck;
        }
    }
    LadderMoments { norm, a, a2, n }
}

/// `Δq`, `Δp` evaluated from number-basis amplitudes.
pub fn uncertainties_from_amplitudes(c: &[Complex64], omega: f64) -> Uncertainties {
    let m = ladder_moments(c);
    let (a, a2, n) = (m.a / m.norm, m.a2 / m.norm, m.n / m.norm);
    // q = (a + a†)/√(2ω), p = i√(ω/2)(a† - a)
    let var_x = 2.0 * a2.re + 2.0 * n + 1.0 - 4.0 * a.re * a.re;
    let var_y = -2.0 * a2.re + 2.0 * n + 1.0 - 4.0 * a.im * a.im;
    Uncertainties { dq: (var_x / (2.0 * omega)).max(0.0).sqrt(), dp: (var_y * omega / 2.0).max(0.0).sqrt() }
}

/// Plane-wave mode `E = i ε (a e^{i(kr - ωt)} - a† e^{-i(kr - ωt)})` in a
/// box of volume `V`, with `ε = √(ω/2V)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMode {
    pub omega: f64,
    pub k: f64,
    pub volume: f64,
}

impl FieldMode {
    pub fn new(omega: f64, k: f64, volume: f64) -> Result<Self> {
        if !(omega > 0.0 && volume > 0.0) {
            return Err(Error::InvalidArgument("mode frequency and volume must be positive".into()));
        }
        Ok(Self { omega, k, volume })
    }

    /// Vacuum fluctuation `ε = √(ω/2V)`.
    pub fn base_amplitude(&self) -> f64 {
        (self.omega / (2.0 * self.volume)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMoments {
    pub mean: f64,
    pub uncertainty: f64,
}

/// `⟨E(r, t)⟩` and `ΔE`. Number states have zero mean and
/// `ΔE = ε√(2N+1)`; coherent states have mean `2ε|α| sin(ωt - kr - φ)`
/// and `ΔE = ε`.
pub fn field_moments(state: &FieldState, mode: &FieldMode, r: f64, t: f64) -> FieldMoments {
    let eps = mode.base_amplitude();
    match state {
        FieldState::Number(n) => FieldMoments { mean: 0.0, uncertainty: eps * ((2 * n + 1) as f64).sqrt() },
        FieldState::Coherent(c) => {
            let phase = mode.omega * t - mode.k * r - c.alpha.arg();
            FieldMoments { mean: 2.0 * eps * c.alpha.norm() * phase.sin(), uncertainty: eps }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalMode {
    pub omega: f64,
    pub temperature: f64,
}

impl ThermalMode {
    pub fn new(omega: f64, temperature: f64) -> Result<Self> {
        if !(temperature > 0.0) {
            return Err(Error::InvalidArgument(format!("temperature {temperature} must be positive")));
        }
        if !(omega > 0.0) {
            return Err(Error::InvalidArgument(format!("mode frequency {omega}")));
        }
        Ok(Self { omega, temperature })
    }

    fn x(&self) -> f64 {
        self.omega / self.temperature
    }

    /// Boltzmann weight `w(N) = (1 - e^{-βω}) e^{-βωN}`.
    pub fn weight(&self, n: u64) -> f64 {
        -(-self.x()).exp_m1() * (-self.x() * n as f64).exp()
    }
}

/// `⟨N⟩ = 1/(e^{βω} - 1)`.
pub fn thermal_occupation(mode: &ThermalMode) -> f64 {
    1.0 / mode.x().exp_m1()
}

/// Planck's constant with `ħ = 1`.
pub const PLANCK_H: f64 = 2.0 * PI;

/// Spectral energy density `u(ν) = 8πhν³/(e^{hν/T} - 1)` per unit `ν`.
pub fn planck_density(nu: f64, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::InvalidArgument(format!("temperature {temperature} must be positive")));
    }
    if nu <= 0.0 {
        return Ok(0.0);
    }
    let x = PLANCK_H * nu / temperature;
    Ok(8.0 * PI * PLANCK_H * nu.powi(3) / x.exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_amplitudes() {
        let c = CoherentState::new(Complex64::new(0.0, 0.0), 1.0).unwrap().amplitudes();
        assert_eq!(c[0], Complex64::new(1.0, 0.0));
        assert!(c[1..].iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn truncation_guard() {
        let a = Complex64::new(3.0, 0.0);
        assert!(matches!(
            CoherentState::with_truncation(a, 1.0, 10),
            Err(Error::TruncationInsufficient { required: 53, .. })
        ));
    }

    #[test]
    fn full_period_returns() {
        let s = CoherentState::new(Complex64::new(1.2, -0.7), 2.0).unwrap();
        let back = s.evolve(2.0 * PI / 2.0);
        assert_abs_diff_eq!(back.alpha.re, s.alpha.re, epsilon = 1e-14);
        assert_abs_diff_eq!(back.alpha.im, s.alpha.im, epsilon = 1e-14);
    }

    #[test]
    fn closed_form_uncertainties() {
        assert_abs_diff_eq!(uncertainties(&FieldState::Number(0), 3.0).product(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(uncertainties(&FieldState::Number(3), 0.4).product(), 3.5, epsilon = 1e-14);
        let c = CoherentState::new(Complex64::new(4.0, 1.0), 0.7).unwrap();
        assert_abs_diff_eq!(uncertainties(&FieldState::Coherent(c), 0.7).product(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn overlap_examples() {
        let a = Complex64::new(0.3, 0.8);
        assert_abs_diff_eq!(overlap(a, a).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(overlap(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).norm_sqr(), (-1.0f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn thermal_examples() {
        let m = ThermalMode::new(2f64.ln(), 1.0).unwrap();
        assert_abs_diff_eq!(thermal_occupation(&m), 1.0, epsilon = 1e-14);
        let cold = ThermalMode::new(1.0, 1e-3).unwrap();
        assert!(thermal_occupation(&cold) < 1e-300);
        let hot = ThermalMode::new(0.01, 1.0).unwrap();
        assert!((thermal_occupation(&hot) * 0.01 - 1.0).abs() < 0.01);
        assert!(ThermalMode::new(1.0, 0.0).is_err());
        assert!(planck_density(1.0, -1.0).is_err());
    }

    #[test]
    fn number_state_field() {
        let mode = FieldMode::new(2.0, 1.0, 4.0).unwrap();
        let m = field_moments(&FieldState::Number(0), &mode, 0.3, 1.1);
        assert_eq!(m.mean, 0.0);
        assert_abs_diff_eq!(m.uncertainty, 0.5, epsilon = 1e-15);
    }
}
