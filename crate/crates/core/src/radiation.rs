//! Photon emission in the long-wavelength limit: E1, E2 and M1 rates and
//! angular distributions, selection rules, Wigner–Eckart tables, hydrogen
//! dipole matrix elements, induced emission and recoil.
//!
//! Natural units `ħ = c = ε0 = 1`. Rates are `dN/dγ` per unit solid angle.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::integrate_adaptive;
use crate::specfun::{cg_int, clebsch_gordan_doubled, gaunt, ylm, AngularMomentum};

/// Common factor `1/(8π²)` of every rate.
pub const RATE_PREFACTOR: f64 = 1.0 / (8.0 * PI * PI);

pub type CVec3 = [Complex64; 3];
pub type CTensor3 = [[Complex64; 3]; 3];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multipole {
    E1,
    E2,
    M1,
}

impl Multipole {
    pub fn name(self) -> &'static str {
        match self {
            Multipole::E1 => "E1",
            Multipole::E2 => "E2",
            Multipole::M1 => "M1",
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            Multipole::E1 | Multipole::M1 => 1,
            Multipole::E2 => 2,
        }
    }

    /// Whether the transition operator flips parity.
    pub fn flips_parity(self) -> bool {
        matches!(self, Multipole::E1)
    }
}

impl fmt::Display for Multipole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixElement {
    Vector(CVec3),
    Tensor(CTensor3),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionSpec {
    pub omega: f64,
    pub multipole: Multipole,
    pub me: MatrixElement,
}

fn check_omega(omega: f64) -> Result<()> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("transition frequency must be positive, got {omega}")))
    }
}

impl EmissionSpec {
    /// `d = ⟨0|d̂|n⟩`.
    pub fn electric_dipole(omega: f64, d: CVec3) -> Result<Self> {
        check_omega(omega)?;
        Ok(Self { omega, multipole: Multipole::E1, me: MatrixElement::Vector(d) })
    }

    /// `m = ⟨0|M̂|n⟩`.
    pub fn magnetic_dipole(omega: f64, m: CVec3) -> Result<Self> {
        check_omega(omega)?;
        Ok(Self { omega, multipole: Multipole::M1, me: MatrixElement::Vector(m) })
    }

    /// `Q_ls = ⟨0|Q̂_ls|n⟩`, symmetric and traceless within 1e-12.
    pub fn electric_quadrupole(omega: f64, q: CTensor3) -> Result<Self> {
        check_omega(omega)?;
        let scale = q.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..3 {
            for j in 0..i {
                if (q[i][j] - q[j][i]).norm() > 1e-12 * scale {
                    return Err(Error::InvalidArgument("quadrupole tensor not symmetric".into()));
                }
            }
        }
        if (q[0][0] + q[1][1] + q[2][2]).norm() > 1e-12 * scale {
            return Err(Error::InvalidArgument("quadrupole tensor not traceless".into()));
        }
        Ok(Self { omega, multipole: Multipole::E2, me: MatrixElement::Tensor(q) })
    }

    /// Quadrupole from its spherical components `Q_{2μ}`, `μ = -2..=2`.
    pub fn electric_quadrupole_spherical(omega: f64, q2: [Complex64; 5]) -> Result<Self> {
        Self::electric_quadrupole(omega, cartesian_quadrupole(&q2))
    }
}

/// `ħω = E_n - E_0`.
pub fn transition_frequency(e_upper: f64, e_lower: f64) -> Result<f64> {
    let w = e_upper - e_lower;
    check_omega(w)?;
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationBasis {
    pub theta: f64,
    pub phi: f64,
    pub lambda1: [f64; 3],
    pub lambda2: [f64; 3],
}

impl PolarizationBasis {
    pub fn k_hat(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `λ_α` for `α ∈ {1, 2}`.
    pub fn lambda(&self, alpha: u8) -> Result<[f64; 3]> {
        match alpha {
            1 => Ok(self.lambda1),
            2 => Ok(self.lambda2),
            _ => Err(Error::InvalidArgument(format!("polarization index {alpha} not in {{1, 2}}"))),
        }
    }
}

/// `λ1 ∥ e_θ`, `λ2 ∥ e_φ`.
pub fn polarization_basis(theta: f64, phi: f64) -> PolarizationBasis {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    PolarizationBasis { theta, phi, lambda1: [ct * cp, ct * sp, -st], lambda2: [-sp, cp, 0.0] }
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot_c(v: &CVec3, r: [f64; 3]) -> Complex64 {
    v[0] * r[0] + v[1] * r[1] + v[2] * r[2]
}

/// Spherical components `a_{±1} = ∓(a_x ± i a_y)/√2`, `a_0 = a_z`, indexed by `μ + 1`.
pub fn spherical_components(a: CVec3) -> CVec3 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::i();
    [(a[0] - i * a[1]) * s, a[2], -(a[0] + i * a[1]) * s]
}

/// Inverse of [`spherical_components`].
pub fn cartesian_components(s: CVec3) -> CVec3 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::i();
    [(s[0] - s[2]) * r, i * (s[0] + s[2]) * r, s[1]]
}

fn real_vec(v: [f64; 3]) -> CVec3 {
    [Complex64::new(v[0], 0.0), Complex64::new(v[1], 0.0), Complex64::new(v[2], 0.0)]
}

fn expect(spec: &EmissionSpec, want: Multipole) -> Result<()> {
    if spec.multipole == want {
        Ok(())
    } else {
        Err(Error::WrongMultipole { expected: want.name(), found: spec.multipole.name() })
    }
}

fn vector(spec: &EmissionSpec) -> Result<CVec3> {
    match spec.me {
        MatrixElement::Vector(v) => Ok(v),
        MatrixElement::Tensor(_) => Err(Error::ShapeMismatch { expected: "vector".into(), found: "tensor".into() }),
    }
}

fn tensor(spec: &EmissionSpec) -> Result<CTensor3> {
    match spec.me {
        MatrixElement::Tensor(q) => Ok(q),
        MatrixElement::Vector(_) => Err(Error::ShapeMismatch { expected: "tensor".into(), found: "vector".into() }),
    }
}

/// `ω³/(8π²) |d·λ_α|²`.
pub fn dipole_rate(spec: &EmissionSpec, theta: f64, phi: f64, alpha: u8) -> Result<f64> {
    expect(spec, Multipole::E1)?;
    let lam = polarization_basis(theta, phi).lambda(alpha)?;
    Ok(RATE_PREFACTOR * spec.omega.powi(3) * dot_c(&vector(spec)?, lam).norm_sqr())
}

/// `ω³/(8π²) (ω/6)² |k̂·Q·λ_α|²`.
pub fn quadrupole_rate(spec: &EmissionSpec, theta: f64, phi: f64, alpha: u8) -> Result<f64> {
    expect(spec, Multipole::E2)?;
    let basis = polarization_basis(theta, phi);
    let lam = basis.lambda(alpha)?;
    let k = basis.k_hat();
    let q = tensor(spec)?;
    let mut amp = ZERO;
    for l in 0..3 {
        for s in 0..3 {
            amp += q[l][s] * (k[l] * lam[s]);
        }
    }
    Ok(RATE_PREFACTOR * spec.omega.powi(3) * (spec.omega / 6.0).powi(2) * amp.norm_sqr())
}

/// `ω³/(8π²) |M·(k̂×λ_α)|²`.
pub fn magnetic_dipole_rate(spec: &EmissionSpec, theta: f64, phi: f64, alpha: u8) -> Result<f64> {
    expect(spec, Multipole::M1)?;
    let basis = polarization_basis(theta, phi);
    let kl = cross(basis.k_hat(), basis.lambda(alpha)?);
    Ok(RATE_PREFACTOR * spec.omega.powi(3) * dot_c(&vector(spec)?, kl).norm_sqr())
}

/// Dispatch on the multipole class.
pub fn emission_rate(spec: &EmissionSpec, theta: f64, phi: f64, alpha: u8) -> Result<f64> {
    match spec.multipole {
        Multipole::E1 => dipole_rate(spec, theta, phi, alpha),
        Multipole::E2 => quadrupole_rate(spec, theta, phi, alpha),
        Multipole::M1 => magnetic_dipole_rate(spec, theta, phi, alpha),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSample {
    pub theta: f64,
    pub phi: f64,
    pub rate1: f64,
    pub rate2: f64,
}

/// Rates on a `n_theta × n_phi` grid of cell-centred directions.
pub fn angular_map(spec: &EmissionSpec, n_theta: usize, n_phi: usize) -> Result<Vec<AngularSample>> {
    if n_theta == 0 || n_phi == 0 {
        return Err(Error::InvalidArgument("angular grid needs at least one cell".into()));
    }
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = PI * (i as f64 + 0.5) / n_theta as f64;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            out.push(AngularSample {
                theta,
                phi,
                rate1: emission_rate(spec, theta, phi, 1)?,
                rate2: emission_rate(spec, theta, phi, 2)?,
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Spherical quadrupole

/// `Q_{2μ} = √(4π/5) ∫ r² Y_{2μ} ρ` from the Cartesian `Q_ls = ∫(3 r_l r_s - δ_ls r²) ρ`,
/// indexed by `μ + 2`.
pub fn spherical_quadrupole(q: &CTensor3) -> [Complex64; 5] {
    let i = Complex64::i();
    let s6 = 6f64.sqrt();
    let pm2 = |sign: f64| (q[0][0] - q[1][1] + i * (2.0 * sign) * q[0][1]) / (2.0 * s6);
    let pm1 = |sign: f64| -(q[0][2] + i * sign * q[1][2]) * sign / s6;
    [pm2(-1.0), pm1(-1.0), 0.5 * q[2][2], pm1(1.0), pm2(1.0)]
}

/// Inverse of [`spherical_quadrupole`].
pub fn cartesian_quadrupole(q2: &[Complex64; 5]) -> CTensor3 {
    let i = Complex64::i();
    let s6 = 6f64.sqrt();
    let zz = 2.0 * q2[2];
    // Q_{2,±2} = (Q_xx - Q_yy ± 2i Q_xy)/(2√6)
    let xx_minus_yy = s6 * (q2[4] + q2[0]);
    let xy = s6 * (q2[4] - q2[0]) / (2.0 * i);
    // Q_{2,±1} = ∓(Q_xz ± i Q_yz)/√6
    let xz = s6 * (q2[1] - q2[3]) / 2.0;
    let yz = -s6 * (q2[3] + q2[1]) / (2.0 * i);
    let xx = 0.5 * (xx_minus_yy - zz);
    let yy = 0.5 * (-xx_minus_yy - zz);
    [[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]]
}

/// `Φ_μ = Σ ⟨2μ|1m;1m'⟩ k̂*_m λ*_m'`.
pub fn quadrupole_angular_factor(mu: i32, theta: f64, phi: f64, alpha: u8) -> Result<Complex64> {
    if mu.abs() > 2 {
        return Err(Error::InvalidArgument(format!("μ = {mu} outside -2..=2")));
    }
    let basis = polarization_basis(theta, phi);
    let k = spherical_components(real_vec(basis.k_hat()));
    let lam = spherical_components(real_vec(basis.lambda(alpha)?));
    let mut acc = ZERO;
    for m in -1..=1i64 {
        let mp = mu as i64 - m;
        if mp.abs() > 1 {
            continue;
        }
        let cg = cg_int(1, m, 1, mp, 2, mu as i64);
        acc += cg * k[(m + 1) as usize].conj() * lam[(mp + 1) as usize].conj();
    }
    Ok(acc)
}

/// Quadrupole rate through `ω/√6 Σ_μ Φ_μ Q_{2μ}`; equal to [`quadrupole_rate`].
pub fn quadrupole_rate_spherical(omega: f64, q2: &[Complex64; 5], theta: f64, phi: f64, alpha: u8) -> Result<f64> {
    check_omega(omega)?;
    let mut amp = ZERO;
    for mu in -2..=2i32 {
        amp += quadrupole_angular_factor(mu, theta, phi, alpha)? * q2[(mu + 2) as usize];
    }
    amp /= 6f64.sqrt();
    Ok(RATE_PREFACTOR * omega.powi(3) * omega * omega * amp.norm_sqr())
}

// ---------------------------------------------------------------------------
// Selection rules

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `(-1)^l`.
    pub fn of_orbital(l: u32) -> Self {
        if l.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectionRule {
    /// `J'` outside `|J - L|..=J + L`.
    AngularMomentum,
    /// `|M' - M| > L`.
    Projection,
    /// `⟨J' M'|J M, L μ⟩ = 0` despite the triangle.
    ClebschGordan,
    Parity,
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionRule::AngularMomentum => "angular momentum triangle",
            SelectionRule::Projection => "projection M' = M + μ",
            SelectionRule::ClebschGordan => "vanishing Clebsch–Gordan coefficient",
            SelectionRule::Parity => "parity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectionVerdict {
    pub allowed: bool,
    pub violated: Option<SelectionRule>,
}

/// Angular momentum and parity selection rules for `|J M P_i⟩ → |J' M' P_f⟩`.
pub fn selection_rules(
    multipole: Multipole,
    initial: AngularMomentum,
    parity_i: Parity,
    final_: AngularMomentum,
    parity_f: Parity,
) -> SelectionVerdict {
    let forbid = |rule| SelectionVerdict { allowed: false, violated: Some(rule) };
    let tl = 2 * multipole.rank() as i64;
    let (tj, tjp) = (initial.twice_j as i64, final_.twice_j as i64);
    if tjp < (tj - tl).abs() || tjp > tj + tl || (tj + tl + tjp) % 2 != 0 {
        return forbid(SelectionRule::AngularMomentum);
    }
    let dm = (final_.twice_m - initial.twice_m) as i64;
    if dm.abs() > tl {
        return forbid(SelectionRule::Projection);
    }
    if clebsch_gordan_doubled(tj, initial.twice_m as i64, tl, dm, tjp, final_.twice_m as i64) == 0.0 {
        return forbid(SelectionRule::ClebschGordan);
    }
    let flips = parity_i != parity_f;
    if flips != multipole.flips_parity() {
        return forbid(SelectionRule::Parity);
    }
    SelectionVerdict { allowed: true, violated: None }
}

// ---------------------------------------------------------------------------
// Wigner–Eckart

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerEckartEntry {
    pub twice_m: i32,
    pub twice_m_final: i32,
    pub mu: i32,
    pub value: f64,
}

/// `⟨J' M'|T_{kμ}|J M⟩ = ⟨J M, k μ|J' M'⟩ ⟨J'||T_k||J⟩` for every `(M, μ)`,
/// with `M' = M + μ`. Entries with `|M'| > J'` are zero.
pub fn wigner_eckart_expand(reduced: f64, twice_j: u32, twice_j_final: u32, rank: u32) -> Result<Vec<WignerEckartEntry>> {
    let (tj, tjp, tk) = (twice_j as i64, twice_j_final as i64, 2 * rank as i64);
    if tjp < (tj - tk).abs() || tjp > tj + tk || (tj + tk + tjp) % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "J' = {}/2 not in the triangle of J = {}/2 and rank {rank}",
            tjp, tj
        )));
    }
    let mut out = Vec::with_capacity(((tj + 1) * (tk + 1)) as usize);
    for m in AngularMomentum::multiplet(twice_j) {
        for mu in -(rank as i32)..=rank as i32 {
            let tmf = m.twice_m + 2 * mu;
            let cg = clebsch_gordan_doubled(tj, m.twice_m as i64, tk, 2 * mu as i64, tjp, tmf as i64);
            out.push(WignerEckartEntry { twice_m: m.twice_m, twice_m_final: tmf, mu, value: cg * reduced });
        }
    }
    Ok(out)
}

/// Reduced matrix element from a single measured `⟨J' M'|T_{kμ}|J M⟩`.
pub fn reduced_from_element(element: f64, initial: AngularMomentum, rank: u32, mu: i32, final_: AngularMomentum) -> Result<f64> {
    let cg = clebsch_gordan_doubled(
        initial.twice_j as i64,
        initial.twice_m as i64,
        2 * rank as i64,
        2 * mu as i64,
        final_.twice_j as i64,
        final_.twice_m as i64,
    );
    if cg == 0.0 {
        return Err(Error::InvalidArgument("CG coefficient vanishes for the measured element".into()));
    }
    Ok(element / cg)
}

// ---------------------------------------------------------------------------
// Hydrogen

pub const HYDROGEN_MAX_N: u32 = 4;

/// Quadrature tolerance for radial integrals.
pub const RADIAL_TOL: f64 = 1e-10;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn check_nl(n: u32, l: u32) -> Result<()> {
    if n == 0 || n > HYDROGEN_MAX_N {
        return Err(Error::Unsupported(format!("hydrogen n = {n}; tabulated for 1..={HYDROGEN_MAX_N}")));
    }
    if l >= n {
        return Err(Error::InvalidArgument(format!("l = {l} requires n > l, got n = {n}")));
    }
    Ok(())
}

/// `R_nl(r)` in Bohr units, `∫ R² r² dr = 1`.
pub fn hydrogen_radial(n: u32, l: u32, r: f64) -> Result<f64> {
    check_nl(n, l)?;
    let nf = n as f64;
    let rho = 2.0 * r / nf;
    let k = n - l - 1;
    let alpha = 2 * l + 1;
    // associated Laguerre L_k^{(α)}(ρ) as an explicit finite sum
    let mut lag = 0.0;
    for i in 0..=k {
        let binom = factorial(k + alpha) / (factorial(k - i) * factorial(alpha + i));
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        lag += sign * binom * rho.powi(i as i32) / factorial(i);
    }
    let norm = ((2.0 / nf).powi(3) * factorial(k) / (2.0 * nf * factorial(n + l))).sqrt();
    Ok(norm * (-rho / 2.0).exp() * rho.powi(l as i32) * lag)
}

/// Upper radial limit where both states are negligible.
pub fn radial_cutoff(n: u32, n_final: u32) -> f64 {
    60.0 / (1.0 / n as f64 + 1.0 / n_final as f64)
}

/// `∫ r³ R_{n'l'} R_{nl} dr`.
pub fn hydrogen_radial_integral(n: u32, l: u32, n_final: u32, l_final: u32) -> Result<f64> {
    check_nl(n, l)?;
    check_nl(n_final, l_final)?;
    let f = |r: f64| r.powi(3) * hydrogen_radial(n_final, l_final, r).unwrap() * hydrogen_radial(n, l, r).unwrap();
    Ok(integrate_adaptive(f, 0.0, radial_cutoff(n, n_final), RADIAL_TOL))
}

/// `⟨n' l' m'|d_μ|n l m⟩` for `d = r` (unit charge), indexed by `μ + 1`.
pub fn hydrogen_dipole_spherical(initial: (u32, u32, i32), final_: (u32, u32, i32)) -> Result<CVec3> {
    let (n, l, m) = initial;
    let (np, lp, mp) = final_;
    check_nl(n, l)?;
    check_nl(np, lp)?;
    if m.unsigned_abs() > l || mp.unsigned_abs() > lp {
        return Err(Error::InvalidArgument("|m| exceeds l".into()));
    }
    let mut out = [ZERO; 3];
    let dm = mp - m;
    if dm.abs() > 1 {
        return Ok(out);
    }
    let angular = gaunt(lp as i64, mp as i64, 1, dm as i64, l as i64, m as i64);
    if angular == 0.0 {
        return Ok(out);
    }
    let radial = hydrogen_radial_integral(n, l, np, lp)?;
    out[(dm + 1) as usize] = Complex64::new((4.0 * PI / 3.0).sqrt() * radial * angular, 0.0);
    Ok(out)
}

/// Cartesian `⟨n' l' m'|r|n l m⟩`.
pub fn hydrogen_dipole_me(initial: (u32, u32, i32), final_: (u32, u32, i32)) -> Result<CVec3> {
    Ok(cartesian_components(hydrogen_dipole_spherical(initial, final_)?))
}

// ---------------------------------------------------------------------------
// Induced emission, recoil, multipole amplitudes

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedRates {
    pub induced: f64,
    pub total_emission: f64,
    pub absorption: f64,
}

/// Rates in a mode already holding `n_photons` quanta.
pub fn induced_and_absorption(rate_spontaneous: f64, n_photons: f64) -> Result<InducedRates> {
    if !(n_photons >= 0.0) || !n_photons.is_finite() {
        return Err(Error::InvalidArgument(format!("photon number must be non-negative, got {n_photons}")));
    }
    let induced = n_photons * rate_spontaneous;
    Ok(InducedRates { induced, total_emission: (n_photons + 1.0) * rate_spontaneous, absorption: induced })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoilRatio {
    /// `ε_recoil/ħω = ħω/(2Mc²)`.
    pub energy: f64,
    /// `v_recoil/c = ħω/(Mc²)`.
    pub velocity: f64,
}

pub fn recoil_ratio(photon_energy: f64, rest_energy: f64) -> Result<RecoilRatio> {
    if !(rest_energy > 0.0) || !(photon_energy >= 0.0) {
        return Err(Error::InvalidArgument("recoil needs positive rest energy and non-negative photon energy".into()));
    }
    let v = photon_energy / rest_energy;
    Ok(RecoilRatio { energy: 0.5 * v, velocity: v })
}

/// `Φ_{LM,l} = Σ_{m,q} ⟨l m, 1 q|L M⟩ Y_{lm}(k̂) λ_q` for a unit wave vector.
pub fn multipole_amplitude(big_l: u32, big_m: i32, l: u32, theta: f64, phi: f64, alpha: u8) -> Result<Complex64> {
    if big_l >= 2 {
        return Err(Error::Unsupported(format!("photon multipole L = {big_l}; only L ≤ 1")));
    }
    if big_m.unsigned_abs() > big_l {
        return Err(Error::InvalidArgument(format!("M = {big_m} outside -L..=L")));
    }
    if l + 1 < big_l || l > big_l + 1 {
        return Err(Error::InvalidArgument(format!("l = {l} not in L-1..=L+1")));
    }
    let lam = spherical_components(real_vec(polarization_basis(theta, phi).lambda(alpha)?));
    let mut acc = ZERO;
    for q in -1..=1i32 {
        let m = big_m - q;
        if m.unsigned_abs() > l {
            continue;
        }
        let cg = cg_int(l as i64, m as i64, 1, q as i64, big_l as i64, big_m as i64);
        acc += cg * ylm(l, m, theta, phi) * lam[(q + 1) as usize];
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn basis_at_equator() {
        let b = polarization_basis(PI / 2.0, 0.0);
        for (x, y) in b.lambda1.iter().zip([0.0, 0.0, -1.0]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-16);
        }
        assert_eq!(b.lambda2, [-0.0, 1.0, 0.0]);
        assert!(b.lambda(3).is_err());
    }

    #[test]
    fn right_handed() {
        let b = polarization_basis(0.7, 2.1);
        let k = cross(b.lambda1, b.lambda2);
        for (x, y) in k.iter().zip(b.k_hat()) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
        }
    }

    #[test]
    fn wrong_class_rejected() {
        let s = EmissionSpec::magnetic_dipole(1.0, [c(0.0), c(0.0), c(1.0)]).unwrap();
        assert_eq!(dipole_rate(&s, 0.3, 0.0, 1), Err(Error::WrongMultipole { expected: "E1", found: "M1" }));
        assert!(quadrupole_rate(&s, 0.3, 0.0, 1).is_err());
    }

    #[test]
    fn quadrupole_validation() {
        let mut q = [[c(0.0); 3]; 3];
        q[0][0] = c(1.0);
        assert!(EmissionSpec::electric_quadrupole(1.0, q).is_err());
        q[2][2] = c(-1.0);
        q[0][1] = c(0.5);
        assert!(EmissionSpec::electric_quadrupole(1.0, q).is_err());
        q[1][0] = c(0.5);
        assert!(EmissionSpec::electric_quadrupole(1.0, q).is_ok());
        assert!(EmissionSpec::electric_quadrupole(-1.0, q).is_err());
    }

    #[test]
    fn spherical_round_trip() {
        let v = [Complex64::new(0.3, -0.2), Complex64::new(1.1, 0.4), Complex64::new(-0.7, 0.9)];
        let back = cartesian_components(spherical_components(v));
        for (a, b) in v.iter().zip(&back) {
            assert!((a - b).norm() < 1e-15);
        }
        let q2 = [Complex64::new(0.1, 0.2), c(-0.4), Complex64::new(0.3, 0.3), c(0.8), Complex64::new(-0.2, 0.5)];
        let q = spherical_quadrupole(&cartesian_quadrupole(&q2));
        for (a, b) in q2.iter().zip(&q) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn radial_normalization() {
        for n in 1..=4 {
            for l in 0..n {
                let norm = integrate_adaptive(|r| (r * hydrogen_radial(n, l, r).unwrap()).powi(2), 0.0, radial_cutoff(n, n), 1e-12);
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-10);
            }
        }
        assert!(matches!(hydrogen_radial(5, 0, 1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn induced_factors() {
        let r = induced_and_absorption(2.0, 9.0).unwrap();
        assert_eq!(r.total_emission, 20.0);
        assert_eq!(r.absorption, r.induced);
        assert!(induced_and_absorption(2.0, -1.0).is_err());
    }

    #[test]
    fn recoil() {
        let r = recoil_ratio(10.0, 1e9).unwrap();
        assert_abs_diff_eq!(r.velocity, 1e-8, epsilon = 1e-22);
        assert_abs_diff_eq!(r.energy, 5e-9, epsilon = 1e-22);
        assert!(recoil_ratio(1.0, 0.0).is_err());
    }

    #[test]
    fn multipole_domain() {
        assert!(matches!(multipole_amplitude(2, 0, 2, 0.1, 0.2, 1), Err(Error::Unsupported(_))));
        assert!(multipole_amplitude(1, 0, 3, 0.1, 0.2, 1).is_err());
        assert_eq!(multipole_amplitude(0, 0, 0, 0.1, 0.2, 1).unwrap(), c(0.0));
    }
}
