//! Weisskopf–Wigner model: one discrete level coupled to a discretized
//! continuum, solved exactly through the secular equation of the bordered
//! Hamiltonian.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::CompensatedSum;

/// Relative tolerance for accepting a continuum grid as uniform.
pub const UNIFORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DecayProblem {
    pub e0: f64,
    pub eps: Vec<f64>,
    pub v: Vec<Complex64>,
    /// Must stay `false`: the model keeps the continuum block diagonal.
    pub include_continuum_coupling: bool,
}

impl DecayProblem {
    pub fn new(e0: f64, eps: Vec<f64>, v: Vec<Complex64>) -> Result<Self> {
        let p = Self { e0, eps, v, include_continuum_coupling: false };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.include_continuum_coupling {
            return Err(Error::Unsupported("continuum–continuum coupling".into()));
        }
        if self.eps.len() != self.v.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} couplings", self.eps.len()),
                found: format!("{}", self.v.len()),
            });
        }
        if !self.e0.is_finite()
            || self.eps.iter().any(|e| !e.is_finite())
            || self.v.iter().any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::NonFinite("decay problem"));
        }
        for w in self.eps.windows(2) {
            if w[1] == w[0] {
                return Err(Error::DuplicateEnergies);
            }
            if w[1] < w[0] {
                return Err(Error::NonUniformGrid);
            }
        }
        Ok(())
    }

    /// Flat band of `m` levels at the cell midpoints of
    /// `[e0 - w/2 + shift, e0 + w/2 + shift]`, constant coupling `v`.
    pub fn flat_band(e0: f64, width: f64, m: usize, v: f64, shift: f64) -> Result<Self> {
        if m == 0 || !(width > 0.0) {
            return Err(Error::InvalidArgument("band needs m ≥ 1 levels and positive width".into()));
        }
        let delta = width / m as f64;
        let lo = e0 - 0.5 * width + shift;
        let eps = (0..m).map(|k| lo + (k as f64 + 0.5) * delta).collect();
        Self::new(e0, eps, vec![Complex64::new(v, 0.0); m])
    }

    /// Same grid with a Gaussian coupling profile `v e^{-(ε-e0)²/(2σ²)}`.
    pub fn gaussian_band(e0: f64, width: f64, m: usize, v: f64, sigma: f64) -> Result<Self> {
        let mut p = Self::flat_band(e0, width, m, v, 0.0)?;
        for (vk, e) in p.v.iter_mut().zip(&p.eps) {
            *vk *= (-(e - e0).powi(2) / (2.0 * sigma * sigma)).exp();
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    /// Uniform level spacing `δ`.
    pub fn spacing(&self) -> Result<f64> {
        if self.eps.len() < 2 {
            return Err(Error::NonUniformGrid);
        }
        let delta = (self.eps[self.eps.len() - 1] - self.eps[0]) / (self.eps.len() - 1) as f64;
        if self.eps.windows(2).any(|w| ((w[1] - w[0]) - delta).abs() > UNIFORM_TOL * delta.abs().max(1.0)) {
            return Err(Error::NonUniformGrid);
        }
        Ok(delta)
    }

    /// `ρ = 1/δ`.
    pub fn density(&self) -> Result<f64> {
        Ok(1.0 / self.spacing()?)
    }

    pub fn bandwidth(&self) -> f64 {
        match (self.eps.first(), self.eps.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }
}

/// Bordered Hamiltonian: diagonal `(E0, ε_1, …)`, first row and column `V_0μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderedMatrix<'a> {
    problem: &'a DecayProblem,
}

impl BorderedMatrix<'_> {
    pub fn dim(&self) -> usize {
        self.problem.len() + 1
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let p = self.problem;
        match (i, j) {
            (0, 0) => Complex64::new(p.e0, 0.0),
            (0, j) => p.v[j - 1],
            (i, 0) => p.v[i - 1].conj(),
            (i, j) if i == j => Complex64::new(p.eps[i - 1], 0.0),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.get(i, j)).collect()).collect()
    }
}

pub fn build(problem: &DecayProblem) -> Result<BorderedMatrix<'_>> {
    problem.validate()?;
    Ok(BorderedMatrix { problem })
}

/// Exact eigenvalue `E_χ` and overlap weight `|⟨ψ0|Ψ_χ⟩|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate {
    pub energy: f64,
    pub weight: f64,
}

struct Secular<'a> {
    e0: f64,
    poles: &'a [f64],
    strength: &'a [f64],
}

impl Secular<'_> {
    /// `g(τ)` and `g'(τ)` with `E = origin + τ`.
    fn eval(&self, origin: f64, tau: f64) -> (f64, f64) {
        let mut s = CompensatedSum::new();
        let mut ds = 0.0;
        for (p, w) in self.poles.iter().zip(self.strength) {
            let d = (origin - p) + tau;
            s.add(w / d);
            ds += w / (d * d);
        }
        ((origin - self.e0) + tau - s.value(), 1.0 + ds)
    }

    fn weight(&self, origin: f64, tau: f64) -> f64 {
        let ds: f64 = self
            .poles
            .iter()
            .zip(self.strength)
            .map(|(p, w)| {
                let d = (origin - p) + tau;
                w / (d * d)
            })
            .sum();
        1.0 / (1.0 + ds)
    }

    /// Root of the increasing function `g` in `(lo, hi)` by safeguarded Newton.
    fn solve(&self, origin: f64, mut lo: f64, mut hi: f64) -> f64 {
        let mut tau = 0.5 * (lo + hi);
        for _ in 0..200 {
            let (g, dg) = self.eval(origin, tau);
            if g == 0.0 {
                return tau;
            }
            if g > 0.0 {
                hi = tau;
            } else {
                lo = tau;
            }
            let mut next = tau - g / dg;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - tau).abs() <= 2.0 * f64::EPSILON * tau.abs().max(f64::MIN_POSITIVE) || hi - lo <= f64::EPSILON * tau.abs() {
                return next;
            }
            tau = next;
        }
        tau
    }
}

/// All eigenpairs of the bordered matrix, sorted by energy. Levels with
/// zero coupling are eigenvectors with zero weight on `ψ0`.
pub fn bordered_spectrum(problem: &DecayProblem) -> Result<Vec<Eigenstate>> {
    problem.validate()?;
    let mut poles = Vec::new();
    let mut strength = Vec::new();
    let mut out = Vec::with_capacity(problem.len() + 1);
    for (e, v) in problem.eps.iter().zip(&problem.v) {
        let s = v.norm_sqr();
        if s > 0.0 {
            poles.push(*e);
            strength.push(s);
        } else {
            out.push(Eigenstate { energy: *e, weight: 0.0 });
        }
    }
    if poles.is_empty() {
        out.push(Eigenstate { energy: problem.e0, weight: 1.0 });
        out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        return Ok(out);
    }
    let sec = Secular { e0: problem.e0, poles: &poles, strength: &strength };
    let total: f64 = strength.iter().sum();
    let reach = (problem.e0 - poles[0]).abs() + (poles[poles.len() - 1] - problem.e0).abs() + total.sqrt() + 1.0;

    // below the lowest pole
    let first = poles[0];
    let mut lo = -reach;
    while sec.eval(first, lo).0 > 0.0 {
        lo *= 2.0;
    }
    let tau = sec.solve(first, lo, 0.0);
    out.push(Eigenstate { energy: first + tau, weight: sec.weight(first, tau) });

    for k in 0..poles.len() - 1 {
        let gap = poles[k + 1] - poles[k];
        let (g_mid, _) = sec.eval(poles[k], 0.5 * gap);
        let (origin, lo, hi) = if g_mid >= 0.0 { (poles[k], 0.0, 0.5 * gap) } else { (poles[k + 1], -0.5 * gap, 0.0) };
        let tau = sec.solve(origin, lo, hi);
        out.push(Eigenstate { energy: origin + tau, weight: sec.weight(origin, tau) });
    }

    let last = poles[poles.len() - 1];
    let mut hi = reach;
    while sec.eval(last, hi).0 < 0.0 {
        hi *= 2.0;
    }
    let tau = sec.solve(last, 0.0, hi);
    out.push(Eigenstate { energy: last + tau, weight: sec.weight(last, tau) });

    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(out)
}

/// `⟨ψ0|e^{-iHt}|ψ0⟩ = Σ_χ w_χ e^{-iE_χ t}`.
pub fn survival_from_spectrum(spectrum: &[Eigenstate], t: f64) -> Complex64 {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for s in spectrum {
        let (sin, cos) = (s.energy * t).sin_cos();
        re.add(s.weight * cos);
        im.add(-s.weight * sin);
    }
    Complex64::new(re.value(), im.value())
}

pub fn survival_amplitude(problem: &DecayProblem, times: &[f64]) -> Result<Vec<Complex64>> {
    let spec = bordered_spectrum(problem)?;
    Ok(times.iter().map(|&t| survival_from_spectrum(&spec, t)).collect())
}

/// Golden-rule width and principal-value shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenRule {
    pub gamma: f64,
    pub delta_e: f64,
    /// Grid level dropped from the principal-value sum because it sits on `E0`.
    pub excluded_level: Option<usize>,
}

/// `Γ = 2π |V(E0)|² ρ` with `|V|²` interpolated linearly on the grid, and
/// `ΔE = P Σ |V_μ|²/(E0 - ε_μ)`. Inside the band the two levels bracketing
/// `E0` are removed and the remaining sum is corrected for the offset of
/// `E0` from the cell midpoint; a level exactly at `E0` is dropped and
/// reported.
pub fn golden_rule(problem: &DecayProblem) -> Result<GoldenRule> {
    problem.validate()?;
    let delta = problem.spacing()?;
    let rho = 1.0 / delta;
    let e0 = problem.e0;
    let eps = &problem.eps;
    let s: Vec<f64> = problem.v.iter().map(|v| v.norm_sqr()).collect();
    let m = eps.len();
    let inside = e0 >= eps[0] && e0 <= eps[m - 1];
    if !inside {
        let mut acc = CompensatedSum::new();
        for k in 0..m {
            acc.add(s[k] / (e0 - eps[k]));
        }
        return Ok(GoldenRule { gamma: 0.0, delta_e: acc.value(), excluded_level: None });
    }
    let k = match eps.partition_point(|&e| e <= e0) {
        0 => 0,
        p => p - 1,
    };
    if eps[k] == e0 {
        let mut acc = CompensatedSum::new();
        for (j, (&e, &sj)) in eps.iter().zip(&s).enumerate() {
            if j != k {
                acc.add(sj / (e0 - e));
            }
        }
        return Ok(GoldenRule { gamma: 2.0 * PI * s[k] * rho, delta_e: acc.value(), excluded_level: Some(k) });
    }
    let f = (e0 - eps[k]) / (eps[k + 1] - eps[k]);
    let s0 = s[k] * (1.0 - f) + s[k + 1] * f;
    let mut acc = CompensatedSum::new();
    for (j, (&e, &sj)) in eps.iter().zip(&s).enumerate() {
        if j != k && j != k + 1 {
            acc.add(sj / (e0 - e));
        }
    }
    // lattice excess of the remaining terms: Σ_{j≠0,1} 1/(f - j) = π cot πf - 1/f + 1/(1 - f)
    acc.add(-s0 * rho * (PI / (PI * f).tan() - 1.0 / f + 1.0 / (1.0 - f)));
    Ok(GoldenRule { gamma: 2.0 * PI * s0 * rho, delta_e: acc.value(), excluded_level: None })
}

/// `K(t) = -Σ |V_μ|² e^{i(E0 - ε_μ)t}`.
pub fn memory_kernel(problem: &DecayProblem, times: &[f64]) -> Result<Vec<Complex64>> {
    problem.validate()?;
    Ok(times
        .iter()
        .map(|&t| {
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            for (e, v) in problem.eps.iter().zip(&problem.v) {
                let (sin, cos) = ((problem.e0 - e) * t).sin_cos();
                re.add(-v.norm_sqr() * cos);
                im.add(-v.norm_sqr() * sin);
            }
            Complex64::new(re.value(), im.value())
        })
        .collect())
}

/// Markov limit of the kernel integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovRates {
    /// `-Re ∫K dt`, which tends to `Γ/2`.
    pub half_gamma: f64,
    /// `Im ∫K dt`, which tends to `-ΔE`.
    pub minus_shift: f64,
    pub window: f64,
}

/// `∫_0^T K dt` averaged over `T ∈ [window/2, window]`, evaluated in closed
/// form level by level. The window must exceed the kernel range `~10/W`.
pub fn markov_rate(problem: &DecayProblem, window: f64) -> Result<MarkovRates> {
    problem.validate()?;
    let w = problem.bandwidth();
    if w <= 0.0 || window < 10.0 / w {
        return Err(Error::UnderResolved(format!("Markov window {window} shorter than the kernel range 10/W")));
    }
    let (t1, t2) = (0.5 * window, window);
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (e, v) in problem.eps.iter().zip(&problem.v) {
        let s = v.norm_sqr();
        let om = problem.e0 - e;
        if om == 0.0 {
            re.add(-s * 0.5 * (t1 + t2));
            continue;
        }
        // ⟨sin(ωT)/ω⟩ and ⟨(1 - cos ωT)/ω⟩ over the window
        let mean_sin = ((om * t1).cos() - (om * t2).cos()) / (om * om * (t2 - t1));
        let mean_cos = ((om * t2).sin() - (om * t1).sin()) / (om * om * (t2 - t1));
        re.add(-s * mean_sin);
        im.add(-s * (1.0 / om - mean_cos));
    }
    Ok(MarkovRates { half_gamma: -re.value(), minus_shift: im.value(), window })
}

/// `t_rev = 2π/δ`.
pub fn revival_time(problem: &DecayProblem) -> Result<f64> {
    Ok(2.0 * PI / problem.spacing()?)
}

/// Straight-line least squares `y = a + b x`.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let b = sxy / sxx;
    (my - b * mx, b)
}

/// Exponential fit of `|c0(t)|²` on `[0.5/Γ, 3/Γ]`, capped below `t_rev/2`.
/// Requires a bandwidth of at least `20Γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub gamma: f64,
    pub amplitude: f64,
    pub t_start: f64,
    pub t_end: f64,
}

pub const FIT_SAMPLES: usize = 200;

/// Smallest bandwidth-to-width ratio accepted by the exponential fit.
pub const MARKOV_RATIO: f64 = 20.0;

pub fn fit_decay_rate(problem: &DecayProblem, spectrum: &[Eigenstate], gamma_ref: f64) -> Result<DecayFit> {
    if !(gamma_ref > 0.0) {
        return Err(Error::FitFailed("reference width must be positive".into()));
    }
    if problem.bandwidth() < MARKOV_RATIO * gamma_ref {
        return Err(Error::FitFailed(format!("bandwidth {} below {MARKOV_RATIO}Γ", problem.bandwidth())));
    }
    let t_rev = revival_time(problem)?;
    let t_start = 0.5 / gamma_ref;
    let t_end = (3.0 / gamma_ref).min(0.5 * t_rev);
    if t_end <= t_start {
        return Err(Error::FitFailed(format!("fit window [{t_start}, {t_end}] empty before t_rev/2")));
    }
    fit_decay_window(spectrum, t_start, t_end)
}

/// Log-linear fit of `|c0(t)|²` on `[t_start, t_end]` without regime checks.
pub fn fit_decay_window(spectrum: &[Eigenstate], t_start: f64, t_end: f64) -> Result<DecayFit> {
    if !(t_end > t_start && t_start >= 0.0) {
        return Err(Error::FitFailed(format!("fit window [{t_start}, {t_end}] is empty")));
    }
    let ts: Vec<f64> = (0..FIT_SAMPLES).map(|k| t_start + (t_end - t_start) * k as f64 / (FIT_SAMPLES - 1) as f64).collect();
    let mut logs = Vec::with_capacity(ts.len());
    for &t in &ts {
        let p = survival_from_spectrum(spectrum, t).norm_sqr();
        if !(p > 0.0) {
            return Err(Error::FitFailed(format!("survival vanished at t = {t}")));
        }
        logs.push(p.ln());
    }
    let (a, b) = linear_fit(&ts, &logs);
    Ok(DecayFit { gamma: -b, amplitude: a.exp(), t_start, t_end })
}

/// Strength density `w_χ / (local level spacing)` at each eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct LineShape {
    pub energy: Vec<f64>,
    pub density: Vec<f64>,
    pub total_strength: f64,
}

/// Lorentzian `A (Γ/2)/π / ((E - E_c)² + Γ²/4)` fitted to a line shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianFit {
    pub center: f64,
    pub fwhm: f64,
    pub amplitude: f64,
}

impl LorentzianFit {
    pub fn eval(&self, e: f64) -> f64 {
        let g = 0.5 * self.fwhm;
        self.amplitude * g / PI / ((e - self.center).powi(2) + g * g)
    }
}

/// Strength function of `ψ0` sampled at the interior eigenvalues.
/// Requires `δ < Γ/5` so that the Lorentzian is resolved.
pub fn line_shape(problem: &DecayProblem, spectrum: &[Eigenstate]) -> Result<LineShape> {
    let delta = problem.spacing()?;
    let gr = golden_rule(problem)?;
    if !(delta < gr.gamma / 5.0) {
        return Err(Error::UnderResolved(format!("level spacing {delta} not below Γ/5 = {}", gr.gamma / 5.0)));
    }
    let total_strength: f64 = spectrum.iter().map(|s| s.weight).sum();
    let coupled: Vec<&Eigenstate> = spectrum.iter().filter(|s| s.weight > 0.0).collect();
    let mut energy = Vec::new();
    let mut density = Vec::new();
    for w in coupled.windows(3) {
        let local = 0.5 * (w[2].energy - w[0].energy);
        energy.push(w[1].energy);
        density.push(w[1].weight / local);
    }
    Ok(LineShape { energy, density, total_strength })
}

/// Fit `1/density` by a parabola over `|E - center_guess| ≤ half_width`.
pub fn fit_lorentzian(shape: &LineShape, center_guess: f64, half_width: f64) -> Result<LorentzianFit> {
    let pts: Vec<(f64, f64)> = shape
        .energy
        .iter()
        .zip(&shape.density)
        .filter(|(e, d)| (*e - center_guess).abs() <= half_width && **d > 0.0)
        .map(|(e, d)| (*e - center_guess, 1.0 / d))
        .collect();
    if pts.len() < 5 {
        return Err(Error::FitFailed(format!("{} points in the fit window", pts.len())));
    }
    // normal equations for y = c0 + c1 x + c2 x²
    let mut m = [[0.0f64; 3]; 3];
    let mut r = [0.0f64; 3];
    for &(x, y) in &pts {
        let p = [1.0, x, x * x];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += p[i] * p[j];
            }
            r[i] += p[i] * y;
        }
    }
    let c = solve3(m, r).ok_or_else(|| Error::FitFailed("singular normal equations".into()))?;
    if !(c[2] > 0.0) {
        return Err(Error::FitFailed("line shape is not peaked".into()));
    }
    let x0 = -c[1] / (2.0 * c[2]);
    let min = c[0] - c[1] * c[1] / (4.0 * c[2]);
    if !(min > 0.0) {
        return Err(Error::FitFailed("non-positive Lorentzian width".into()));
    }
    let half = (min / c[2]).sqrt();
    Ok(LorentzianFit { center: center_guess + x0, fwhm: 2.0 * half, amplitude: PI / (c[2] * half) })
}

fn solve3(mut m: [[f64; 3]; 3], mut r: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        r.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            r[row] -= f * r[col];
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let s: f64 = (i + 1..3).map(|k| m[i][k] * x[k]).sum();
        x[i] = (r[i] - s) / m[i][i];
    }
    Some(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayResult {
    pub gamma_fit: f64,
    pub gamma_golden: f64,
    pub delta_e: f64,
    pub times: Vec<f64>,
    pub survival: Vec<Complex64>,
    pub spectrum: Vec<Eigenstate>,
}

/// Solve, sample the survival amplitude at `times`, and fit the decay rate.
pub fn simulate(problem: &DecayProblem, times: &[f64]) -> Result<DecayResult> {
    let spectrum = bordered_spectrum(problem)?;
    let gr = golden_rule(problem)?;
    let fit = fit_decay_rate(problem, &spectrum, gr.gamma)?;
    let survival = times.iter().map(|&t| survival_from_spectrum(&spectrum, t)).collect();
    Ok(DecayResult {
        gamma_fit: fit.gamma,
        gamma_golden: gr.gamma,
        delta_e: gr.delta_e,
        times: times.to_vec(),
        survival,
        spectrum,
    })
}
