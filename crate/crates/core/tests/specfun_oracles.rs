#![allow(clippy::excessive_precision)]

mod common;

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use qmbench::specfun::*;

use common::{gauss_hermite, sphere_integral};

/// Reference values of Ai(x), 20-digit arbitrary-precision evaluation.
const AIRY_TABLE: &[(f64, f64)] = &[
    (0.0, 0.35502805388781723926),
    (0.5, 0.23169360648083348977),
    (1.0, 0.13529241631288141552),
    (-1.0, 0.5355608832923521188),
    (2.5, 0.015725923380470489995),
    (-2.5, -0.11232506769296608919),
    (-3.7, -0.28201306184193139823),
    (5.0, 0.00010834442813607441735),
    (-5.0, 0.35076100902411431979),
    (6.0, 9.9476943602528895702e-6),
    (-6.0, -0.32914517362982310523),
    (7.0, 7.4921288639971670808e-7),
    (-7.0, 0.18428083525050563728),
    (8.0, 4.6922076160992316256e-8),
    (-8.0, -0.052705050356386202622),
    (-9.0, -0.022133721547341403674),
    (10.0, 1.1047532552898685934e-10),
    (-10.0, 0.040241238486443190689),
    (-15.0, 0.27821749087082892953),
    (20.0, 1.6916728686705403136e-27),
    (-20.0, -0.17640612707798468959),
    (30.0, 3.2082175915504955711e-49),
    (-30.0, -0.087968188456842162833),
];

const AIRY_ZEROS: [f64; 5] = [
    -2.3381074104597670385,
    -4.0879494441309706166,
    -5.5205598280955510591,
    -6.7867080900717589988,
    -7.9441335871208531231,
];

#[test]
fn airy_matches_reference_table() {
    for &(x, expect) in AIRY_TABLE {
        let got = airy_ai(x).unwrap();
        assert!((got - expect).abs() < 1e-10, "Ai({x}) = {got}, want {expect}");
    }
}

#[test]
fn airy_first_zero() {
    assert_abs_diff_eq!(airy_ai(-2.3381074).unwrap(), 0.0, epsilon = 1e-7);
    for (z, want) in airy_zeros(5).iter().zip(AIRY_ZEROS) {
        assert_abs_diff_eq!(*z, want, epsilon = 1e-12);
    }
}

#[test]
fn airy_ode_residual_is_second_order() {
    // central-difference residual Ai'' - x Ai should shrink ~4x per halving of h
    let xs: Vec<f64> = (0..=40).map(|i| -10.0 + 0.5 * i as f64).collect();
    let residual = |h: f64| {
        xs.iter()
            .map(|&x| {
                let d2 = (airy_ai(x + h).unwrap() - 2.0 * airy_ai(x).unwrap() + airy_ai(x - h).unwrap()) / (h * h);
                (d2 - x * airy_ai(x).unwrap()).abs()
            })
            .fold(0.0f64, f64::max)
    };
    let r1 = residual(0.02);
    let r2 = residual(0.01);
    assert!(r1 < 1e-3, "residual {r1}");
    let ratio = r1 / r2;
    assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn oscillator_orthonormality_gauss_hermite() {
    // χ_m χ_n = e^{-x²} · polynomial of degree ≤ 40: 48 nodes integrate exactly
    let nodes = gauss_hermite(48);
    let nmax = 20;
    let mut worst = 0.0f64;
    for m in 0..=nmax {
        for n in 0..=nmax {
            let s: f64 = nodes
                .iter()
                .map(|&(x, w)| {
                    let a = oscillator_wf(OscillatorState::new(m, 1.0).unwrap(), x).unwrap();
                    let b = oscillator_wf(OscillatorState::new(n, 1.0).unwrap(), x).unwrap();
                    w * a * b
                })
                .sum();
            let target = if m == n { 1.0 } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    assert!(worst < 1e-8, "worst deviation {worst}");
}

#[test]
fn oscillator_normalization_scaled() {
    let ell = 0.37;
    let nodes = gauss_hermite(30);
    let norm = |n: usize| -> f64 {
        nodes
            .iter()
            .map(|&(y, w)| {
                let x = ell * y;
                let v = oscillator_wf(OscillatorState::new(n, ell).unwrap(), x).unwrap();
                ell * w * v * v
            })
            .sum()
    };
    assert_abs_diff_eq!(norm(0), 1.0, epsilon = 1e-10);
    let cross: f64 = nodes
        .iter()
        .map(|&(y, w)| {
            let x = ell * y;
            let a = oscillator_wf(OscillatorState::new(2, ell).unwrap(), x).unwrap();
            let b = oscillator_wf(OscillatorState::new(0, ell).unwrap(), x).unwrap();
            ell * w * a * b
        })
        .sum();
    assert_abs_diff_eq!(cross, 0.0, epsilon = 1e-10);
}

#[test]
fn oscillator_large_n_stays_finite() {
    let v = oscillator_wf(OscillatorState::new(200, 1.0).unwrap(), 3.0).unwrap();
    assert!(v.is_finite() && v.abs() < 1.0);
}

#[test]
fn cg_orthogonality_up_to_j6() {
    let mut worst = 0.0f64;
    for tj1 in 0..=12i64 {
        for tj2 in 0..=12i64 {
            let tjs: Vec<i64> = ((tj1 - tj2).abs()..=tj1 + tj2).step_by(2).collect();
            for &ta in &tjs {
                for &tb in &tjs {
                    for tma in (-ta..=ta).step_by(2) {
                        for tmb in (-tb..=tb).step_by(2) {
                            if tma != tmb {
                                continue;
                            }
                            let mut s = 0.0;
                            for tm1 in (-tj1..=tj1).step_by(2) {
                                let tm2 = tma - tm1;
                                if tm2.abs() > tj2 {
                                    continue;
                                }
                                s += clebsch_gordan_doubled(tj1, tm1, tj2, tm2, ta, tma)
                                    * clebsch_gordan_doubled(tj1, tm1, tj2, tm2, tb, tmb);
                            }
                            let target = if ta == tb { 1.0 } else { 0.0 };
                            worst = worst.max((s - target).abs());
                        }
                    }
                }
            }
        }
    }
    assert!(worst < 1e-10, "worst {worst}");
}

#[test]
fn gaunt_matches_sphere_quadrature() {
    for &(bl, bm, l1, m1, l2, m2) in &[
        (0i64, 0i64, 1i64, 1i64, 1i64, -1i64),
        (0, 0, 1, 0, 1, 0),
        (2, 0, 1, 0, 1, 0),
        (2, 1, 1, 1, 1, 0),
        (3, -1, 2, 1, 1, -2),
        (4, 2, 2, 1, 2, 1),
        (1, 0, 2, 1, 1, -1),
    ] {
        let ylmi = |l: i64, m: i64, t: f64, p: f64| ylm(l as u32, m as i32, t, p);
        let re = sphere_integral(24, 24, |t, p| (ylmi(bl, bm, t, p).conj() * ylmi(l1, m1, t, p) * ylmi(l2, m2, t, p)).re);
        let im = sphere_integral(24, 24, |t, p| (ylmi(bl, bm, t, p).conj() * ylmi(l1, m1, t, p) * ylmi(l2, m2, t, p)).im);
        let g = gaunt(bl, bm, l1, m1, l2, m2);
        assert_abs_diff_eq!(re, g, epsilon = 1e-12);
        assert_abs_diff_eq!(im, 0.0, epsilon = 1e-12);
    }
    // (L,M) = (0,0), l1 = l2 = 1, m1 = -m2 = 1: magnitude 1/√(4π) with phase (-1)^{m}
    assert_abs_diff_eq!(gaunt(0, 0, 1, 1, 1, -1), -1.0 / (4.0 * PI).sqrt(), epsilon = 1e-14);
}

#[test]
fn ylm_normalization_quadrature() {
    let n21 = sphere_integral(20, 20, |t, p| ylm(2, 1, t, p).norm_sqr());
    assert_abs_diff_eq!(n21, 1.0, epsilon = 1e-9);
    let cross = sphere_integral(20, 20, |t, p| (ylm(3, 1, t, p).conj() * ylm(1, 1, t, p)).re);
    assert_abs_diff_eq!(cross, 0.0, epsilon = 1e-12);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn gaunt_symmetric_in_factors(l1 in 0i64..5, l2 in 0i64..5, bl in 0i64..9, m1 in -4i64..=4, m2 in -4i64..=4) {
            prop_assume!(m1.abs() <= l1 && m2.abs() <= l2);
            let a = gaunt(bl, m1 + m2, l1, m1, l2, m2);
            let b = gaunt(bl, m1 + m2, l2, m2, l1, m1);
            prop_assert!((a - b).abs() < 1e-14);
        }

        #[test]
        fn cg_swap_symmetry(tj1 in 0i64..9, tj2 in 0i64..9, k1 in 0i64..9, k2 in 0i64..9, kj in 0i64..17) {
            // ⟨JM|j1m1 j2m2⟩ = (-1)^{j1+j2-J} ⟨JM|j2m2 j1m1⟩
            let tm1 = 2 * (k1 % (tj1 + 1)) - tj1;
            let tm2 = 2 * (k2 % (tj2 + 1)) - tj2;
            let tj = (tj1 - tj2).abs() + 2 * (kj % (tj1.min(tj2) + 1));
            let a = clebsch_gordan_doubled(tj1, tm1, tj2, tm2, tj, tm1 + tm2);
            let b = clebsch_gordan_doubled(tj2, tm2, tj1, tm1, tj, tm1 + tm2);
            let sign = if ((tj1 + tj2 - tj) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - sign * b).abs() < 1e-14);
        }
    }
}
