//! Scalar special functions and angular-momentum coupling coefficients.
//!
//! Half-integer quantum numbers are carried as doubled integers throughout,
//! so `j = 3/2` is `twice_j = 3`. Phases follow the Condon–Shortley
//! convention everywhere.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Angular momentum `|j m⟩` stored as `(2j, 2m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngularMomentum {
    pub twice_j: u32,
    pub twice_m: i32,
}

impl AngularMomentum {
    pub fn new(twice_j: u32, twice_m: i32) -> Result<Self> {
        if twice_m.unsigned_abs() > twice_j || (twice_j as i32 - twice_m) % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "|j m> with 2j = {twice_j}, 2m = {twice_m}"
            )));
        }
        Ok(Self { twice_j, twice_m })
    }

    /// Integer `|l m⟩`.
    pub fn integer(l: u32, m: i32) -> Result<Self> {
        Self::new(2 * l, 2 * m)
    }

    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.twice_m as f64 / 2.0
    }

    /// All projections `m = -j..=j` of this `j`.
    pub fn multiplet(twice_j: u32) -> impl Iterator<Item = AngularMomentum> {
        (0..=twice_j).map(move |k| AngularMomentum {
            twice_j,
            twice_m: 2 * k as i32 - twice_j as i32,
        })
    }
}

// ---------------------------------------------------------------------------
// Airy function

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;

/// Upper end of the Maclaurin range on the positive axis.
pub const AIRY_SERIES_MAX: f64 = 5.5;
/// Lower end of the Maclaurin range on the negative axis.
pub const AIRY_SERIES_MIN: f64 = -6.5;

/// Airy function `Ai(x)`.
///
/// Maclaurin series of the `f`, `g` pair on `[AIRY_SERIES_MIN, AIRY_SERIES_MAX]`,
/// optimally truncated asymptotic expansions outside.
pub fn airy_ai(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("airy_ai"));
    }
    Ok(if x > AIRY_SERIES_MAX {
        airy_asymptotic_positive(x)
    } else if x < AIRY_SERIES_MIN {
        airy_asymptotic_negative(-x)
    } else {
        airy_series(x)
    })
}

/// `Ai(x) = Ai(0) f(x) + Ai'(0) g(x)` summed until terms drop below `f64` resolution.
pub fn airy_series(x: f64) -> f64 {
    let x3 = x * x * x;
    let (mut f, mut tf) = (1.0, 1.0);
    let (mut g, mut tg) = (x, x);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 - 1.0) * k3);
        tg *= x3 / (k3 * (k3 + 1.0));
        f += tf;
        g += tg;
        if tf.abs() < 1e-18 * f.abs().max(1.0) && tg.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    AI0 * f + AIP0 * g
}

/// Coefficients `u_k` of the Airy asymptotic series.
fn airy_u(n: usize) -> Vec<f64> {
    let mut u = Vec::with_capacity(n);
    u.push(1.0);
    for k in 1..n {
        let kf = k as f64;
        let prev = u[k - 1];
        u.push(prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf));
    }
    u
}

static AIRY_U: Lazy<Vec<f64>> = Lazy::new(|| airy_u(60));

fn airy_asymptotic_positive(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut zk = 1.0;
    for (k, u) in AIRY_U.iter().enumerate() {
        let term = u / zk;
        if term >= prev {
            break;
        }
        sum += if k % 2 == 0 { term } else { -term };
        prev = term;
        if term < 1e-17 {
            break;
        }
        zk *= zeta;
    }
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
}

fn airy_asymptotic_negative(z: f64) -> f64 {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (mut even, mut odd) = (0.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut zk = 1.0;
    for (k, u) in AIRY_U.iter().enumerate() {
        let term = u / zk;
        if term >= prev {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            even += sign * term;
        } else {
            odd += sign * term;
        }
        prev = term;
        if term < 1e-17 {
            break;
        }
        zk *= zeta;
    }
    let phase = zeta + PI / 4.0;
    (phase.sin() * even - phase.cos() * odd) / (PI.sqrt() * z.powf(0.25))
}

/// First `count` zeros `a_k < 0` of `Ai`, refined by bisection from the
/// asymptotic estimate `-[3π(4k-1)/8]^{2/3}`.
pub fn airy_zeros(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| {
            let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
            let guess = -t.powf(2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
            let (mut lo, mut hi) = (guess - 0.2, guess + 0.2);
            let mut flo = airy_ai(lo).unwrap();
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = airy_ai(mid).unwrap();
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-15 * mid.abs() {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Harmonic oscillator eigenfunctions

/// Largest oscillator index accepted by [`oscillator_wf`].
pub const OSCILLATOR_MAX_N: usize = 200;

/// Oscillator eigenfunction `χ_n` with length scale `ℓ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    pub n: usize,
    pub length_scale: f64,
}

impl OscillatorState {
    pub fn new(n: usize, length_scale: f64) -> Result<Self> {
        if n > OSCILLATOR_MAX_N {
            return Err(Error::OscillatorIndex { n, max: OSCILLATOR_MAX_N });
        }
        if !(length_scale > 0.0 && length_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("length scale {length_scale}")));
        }
        Ok(Self { n, length_scale })
    }
}

/// Normalized `χ_n(x) = (πℓ²)^{-1/4} (2^n n!)^{-1/2} H_n(x/ℓ) e^{-x²/2ℓ²}`.
///
/// The recurrence runs on the normalized functions themselves, so nothing
/// overflows up to `n = 200`.
pub fn oscillator_wf(state: OscillatorState, x: f64) -> Result<f64> {
    if state.n > OSCILLATOR_MAX_N {
        return Err(Error::OscillatorIndex { n: state.n, max: OSCILLATOR_MAX_N });
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("oscillator_wf"));
    }
    Ok(oscillator_ladder(state.n, state.length_scale, x)[state.n])
}

/// `[χ_0(x), …, χ_n(x)]` in one recurrence sweep.
pub fn oscillator_ladder(n: usize, length_scale: f64, x: f64) -> Vec<f64> {
    let xi = x / length_scale;
    let mut out = Vec::with_capacity(n + 1);
    let psi0 = (-0.5 * xi * xi).exp() / (PI.powf(0.25) * length_scale.sqrt());
    out.push(psi0);
    if n == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * xi * psi0);
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * xi * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

// ---------------------------------------------------------------------------
// Clebsch–Gordan and Gaunt coefficients

static FACTORIALS: Lazy<Vec<BigUint>> = Lazy::new(|| {
    let mut v = Vec::with_capacity(410);
    v.push(BigUint::one());
    for k in 1..410u32 {
        let next = &v[k as usize - 1] * BigUint::from(k);
        v.push(next);
    }
    v
});

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    let n = n as usize;
    if n < FACTORIALS.len() {
        BigInt::from(FACTORIALS[n].clone())
    } else {
        (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
    }
}

/// `⟨J M | j1 m1, j2 m2⟩` from doubled quantum numbers.
///
/// Evaluated exactly in rational arithmetic (Racah's closed form), then one
/// square root in `f64`. Anything outside the triangle/projection constraints
/// is exactly zero.
pub fn clebsch_gordan_doubled(tj1: i64, tm1: i64, tj2: i64, tm2: i64, tj: i64, tm: i64) -> f64 {
    if tj1 < 0 || tj2 < 0 || tj < 0 {
        return 0.0;
    }
    if tm1.abs() > tj1 || tm2.abs() > tj2 || tm.abs() > tj {
        return 0.0;
    }
    if (tj1 - tm1) % 2 != 0 || (tj2 - tm2) % 2 != 0 || (tj - tm) % 2 != 0 {
        return 0.0;
    }
    if tm1 + tm2 != tm {
        return 0.0;
    }
    if tj < (tj1 - tj2).abs() || tj > tj1 + tj2 || (tj1 + tj2 + tj) % 2 != 0 {
        return 0.0;
    }
    // all half-sums below are integers once the checks pass
    let a = (tj1 + tj2 - tj) / 2;
    let b = (tj1 - tj2 + tj) / 2;
    let c = (-tj1 + tj2 + tj) / 2;
    let total = (tj1 + tj2 + tj) / 2 + 1;
    let j1m = (tj1 - tm1) / 2;
    let j1p = (tj1 + tm1) / 2;
    let j2m = (tj2 - tm2) / 2;
    let j2p = (tj2 + tm2) / 2;
    let jm = (tj - tm) / 2;
    let jp = (tj + tm) / 2;

    // sum over k with every factorial argument non-negative
    let d1 = (tj - tj2 + tm1) / 2;
    let d2 = (tj - tj1 - tm2) / 2;
    let k_min = 0.max(-d1).max(-d2);
    let k_max = a.min(j1m).min(j2p);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial(a - k)
            * factorial(j1m - k)
            * factorial(j2p - k)
            * factorial(d1 + k)
            * factorial(d2 + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return 0.0;
    }
    let pref_num = BigInt::from(tj + 1)
        * factorial(a)
        * factorial(b)
        * factorial(c)
        * factorial(j1m)
        * factorial(j1p)
        * factorial(j2m)
        * factorial(j2p)
        * factorial(jm)
        * factorial(jp);
    let square = BigRational::new(pref_num, factorial(total)) * &sum * &sum;
    let magnitude = square.to_f64().unwrap_or(f64::NAN).sqrt();
    if sum.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// `⟨J M | j1 m1, j2 m2⟩`.
pub fn clebsch_gordan(j1: AngularMomentum, j2: AngularMomentum, total: AngularMomentum) -> f64 {
    clebsch_gordan_doubled(
        j1.twice_j as i64,
        j1.twice_m as i64,
        j2.twice_j as i64,
        j2.twice_m as i64,
        total.twice_j as i64,
        total.twice_m as i64,
    )
}

/// Integer-`l` shorthand: `⟨L M | l1 m1, l2 m2⟩`.
pub fn cg_int(l1: i64, m1: i64, l2: i64, m2: i64, l: i64, m: i64) -> f64 {
    clebsch_gordan_doubled(2 * l1, 2 * m1, 2 * l2, 2 * m2, 2 * l, 2 * m)
}

/// Projection-independent factor `a(l1, l2, L)` relating Gaunt and CG coefficients.
pub fn gaunt_reduced_factor(l1: i64, l2: i64, big_l: i64) -> f64 {
    let norm = ((2 * l1 + 1) as f64 * (2 * l2 + 1) as f64 / (4.0 * PI * (2 * big_l + 1) as f64)).sqrt();
    norm * cg_int(l1, 0, l2, 0, big_l, 0)
}

/// Gaunt coefficient `∫ Y*_{LM} Y_{l1 m1} Y_{l2 m2} dΩ`.
pub fn gaunt(big_l: i64, big_m: i64, l1: i64, m1: i64, l2: i64, m2: i64) -> f64 {
    if big_m != m1 + m2 || (l1 + l2 + big_l) % 2 != 0 {
        return 0.0;
    }
    let cg = cg_int(l1, m1, l2, m2, big_l, big_m);
    if cg == 0.0 {
        return 0.0;
    }
    gaunt_reduced_factor(l1, l2, big_l) * cg
}

// ---------------------------------------------------------------------------
// Landé factor

/// Landé `g` for doubled `J`, `L`, `S`.
pub fn lande_g(twice_j: u32, twice_l: u32, twice_s: u32) -> Result<f64> {
    if twice_j == 0 {
        return Err(Error::InvalidArgument("Landé factor undefined for J = 0".into()));
    }
    if !twice_l.is_multiple_of(2) {
        return Err(Error::InvalidArgument("orbital L must be an integer".into()));
    }
    let (tj, tl, ts) = (twice_j as i64, twice_l as i64, twice_s as i64);
    if tj < (tl - ts).abs() || tj > tl + ts || (tj + tl + ts) % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "J = {}/2 outside the L-S triangle (L = {}/2, S = {}/2)",
            tj, tl, ts
        )));
    }
    let jj = |t: i64| {
        let v = t as f64 / 2.0;
        v * (v + 1.0)
    };
    Ok(1.0 + (jj(tj) - jj(tl) + jj(ts)) / (2.0 * jj(tj)))
}

// ---------------------------------------------------------------------------
// Spherical harmonics

/// Orthonormal `Y_lm(θ, φ)`, Condon–Shortley phase.
pub fn ylm(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    if m.unsigned_abs() > l {
        return Complex64::new(0.0, 0.0);
    }
    let am = m.unsigned_abs();
    let p = normalized_legendre(l, am, theta.cos(), theta.sin());
    let y = Complex64::from_polar(p, am as f64 * phi);
    if m >= 0 {
        y
    } else if am.is_multiple_of(2) {
        y.conj()
    } else {
        -y.conj()
    }
}

/// `sqrt((2l+1)/4π (l-m)!/(l+m)!) P_l^m(x)` with the Condon–Shortley sign, `m ≥ 0`.
fn normalized_legendre(l: u32, m: u32, x: f64, s: f64) -> f64 {
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mf = m as f64;
    let mut p_prev = pmm;
    let mut p = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let next = a * (x * p - b * p_prev);
        p_prev = p;
        p = next;
    }
    p
}
