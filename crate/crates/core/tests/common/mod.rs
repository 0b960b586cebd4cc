//! Independent quadrature oracles for the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};

/// Gauss–Hermite rule for `∫ e^{-x²} f(x) dx`, returned as `(x_i, w_i e^{x_i²})`
/// so callers can integrate already-decaying integrands without overflow.
/// Nodes from Golub–Welsch, scaled weights from the Christoffel function
/// `1 / Σ_k h_k(x)²` of the orthonormal Hermite functions.
pub fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        let b = (i as f64 / 2.0).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut out: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let x = eig.eigenvalues[k];
            // orthonormal Hermite functions h_k(x) = H_k(x) e^{-x²/2} / sqrt(2^k k! √π)
            let mut h_prev = 0.0;
            let mut h = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
            let mut christoffel = h * h;
            for k in 0..n - 1 {
                let kf = k as f64;
                let next = x * (2.0 / (kf + 1.0)).sqrt() * h - (kf / (kf + 1.0)).sqrt() * h_prev;
                h_prev = h;
                h = next;
                christoffel += h * h;
            }
            (x, 1.0 / christoffel)
        })
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Gauss–Legendre nodes/weights on `[-1, 1]` (Golub–Welsch).
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        let k = i as f64;
        let b = k / (4.0 * k * k - 1.0).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut out: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], 2.0 * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// `∫ f(θ, φ) sin θ dθ dφ` with Gauss–Legendre in `cos θ` and a uniform
/// trapezoid (spectrally exact for trigonometric polynomials) in `φ`.
pub fn sphere_integral<F: Fn(f64, f64) -> f64>(n_theta: usize, n_phi: usize, f: F) -> f64 {
    let gl = gauss_legendre(n_theta);
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut total = 0.0;
    for &(x, w) in &gl {
        let theta = x.acos();
        for k in 0..n_phi {
            total += w * dphi * f(theta, k as f64 * dphi);
        }
    }
    total
}

/// Composite Gauss–Legendre on `[a, b]` split into `panels` pieces.
pub fn composite_gauss<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let gl = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for &(x, w) in &gl {
            total += 0.5 * h * w * f(lo + 0.5 * h * (x + 1.0));
        }
    }
    total
}

/// Random Hermitian mode matrix with entries in the unit square.
pub fn random_hermitian<R: rand::Rng>(rng: &mut R, n: usize) -> qmbench::fockspace::ModeMatrix {
    use num_complex::Complex64;
    let raw: Vec<Complex64> = (0..n * n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    qmbench::fockspace::ModeMatrix::from_fn(n, |i, j| 0.5 * (raw[i * n + j] + raw[j * n + i].conj()))
}

/// Random two-body tensor with `V_ijkl = V_jilk = conj(V_klij)`.
pub fn random_symmetric_tensor<R: rand::Rng>(rng: &mut R, n: usize) -> qmbench::fockspace::TwoBodyTensor {
    use num_complex::Complex64;
    let raw: Vec<Complex64> =
        (0..n.pow(4)).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let w = |i: usize, j: usize, k: usize, l: usize| raw[((i * n + j) * n + k) * n + l];
    qmbench::fockspace::TwoBodyTensor::from_fn(n, |i, j, k, l| {
        0.25 * (w(i, j, k, l) + w(j, i, l, k) + w(k, l, i, j).conj() + w(l, k, j, i).conj())
    })
}
