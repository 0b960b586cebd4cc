//! Small numerical utilities shared across modules: compensated summation,
//! adaptive quadrature, and a symmetric tridiagonal eigensolver.

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Composite Simpson rule on uniformly spaced samples; falls back to a
/// trapezoid panel for the last interval when the count is even.
pub fn simpson_uniform(samples: &[f64], h: f64) -> f64 {
    let n = samples.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (samples[0] + samples[1]),
        _ => {
            let panels = if (n - 1).is_multiple_of(2) { n - 1 } else { n - 2 };
            let mut acc = samples[0] + samples[panels];
            for (i, v) in samples.iter().enumerate().take(panels).skip(1) {
                acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            let mut total = acc * h / 3.0;
            if panels < n - 1 {
                total += 0.5 * h * (samples[n - 2] + samples[n - 1]);
            }
            total
        }
    }
}

#[allow(clippy::excessive_precision)]
const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_639,
    0.949_107_912_342_758_525,
    0.864_864_423_359_769_073,
    0.741_531_185_599_394_440,
    0.586_087_235_467_691_130,
    0.405_845_151_377_397_167,
    0.207_784_955_007_898_468,
    0.0,
];
#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_184,
    0.140_653_259_715_525_919,
    0.169_004_726_639_267_903,
    0.190_350_578_064_785_410,
    0.204_432_940_075_298_892,
    0.209_482_141_084_727_828,
];
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_693,
    0.279_705_391_489_276_668,
    0.381_830_050_505_118_945,
    0.417_959_183_673_469_388,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    for i in 0..7 {
        let dx = h * GK_NODES[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += KRONROD_WEIGHTS[i] * s;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature to absolute tolerance `tol`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (val, err) = gk15(f, a, b);
        if err <= tol || depth >= 40 {
            return val;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, 0.5 * tol, depth + 1) + recurse(f, m, b, 0.5 * tol, depth + 1)
    }
    recurse(&f, a, b, tol, 0)
}

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (`off.len() == diag.len() - 1`).
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let denom = if q == 0.0 { f64::EPSILON * self.off[i - 1].abs().max(1e-300) } else { q };
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Unit eigenvector for a converged eigenvalue by inverse iteration.
    /// The sign is fixed so that the largest-magnitude component is positive.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shift = lambda + 1e-12 * lambda.abs().max(1.0);
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.01 * ((i * 7919) % 13) as f64).collect();
        normalize(&mut v);
        for _ in 0..4 {
            v = self.solve_shifted(shift, &v);
            normalize(&mut v);
        }
        let (imax, _) = v
            .iter()
            .enumerate()
            .fold((0, 0.0), |(bi, bv), (i, x)| if x.abs() > bv { (i, x.abs()) } else { (bi, bv) });
        if v[imax] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }

    /// Solve `(T - shift) x = rhs` with partial pivoting (tridiagonal LU).
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        if n == 1 {
            let d = self.diag[0] - shift;
            let d = if d == 0.0 { 1e-300 } else { d };
            return vec![rhs[0] / d];
        }
        // rows stored as (main, upper1, upper2) after elimination
        let mut a: Vec<f64> = self.diag.iter().map(|d| d - shift).collect();
        let mut b: Vec<f64> = self.off.clone();
        b.push(0.0);
        let mut lower: Vec<f64> = self.off.clone();
        let mut c = vec![0.0; n];
        let mut x = rhs.to_vec();
        for i in 0..n - 1 {
            if lower[i].abs() > a[i].abs() {
                // swap rows i and i+1
                std::mem::swap(&mut a[i], &mut lower[i]);
                let (bi, ai1) = (b[i], a[i + 1]);
                b[i] = ai1;
                a[i + 1] = bi;
                let bi1 = b[i + 1];
                c[i] = bi1;
                b[i + 1] = 0.0;
                x.swap(i, i + 1);
            }
            let piv = if a[i] == 0.0 { 1e-300 } else { a[i] };
            let m = lower[i] / piv;
            a[i + 1] -= m * b[i];
            b[i + 1] -= m * c[i];
            x[i + 1] -= m * x[i];
        }
        let mut out = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = x[i];
            if i + 1 < n {
                s -= b[i] * out[i + 1];
            }
            if i + 2 < n {
                s -= c[i] * out[i + 2];
            }
            let piv = if a[i] == 0.0 { 1e-300 } else { a[i] };
            out[i] = s / piv;
        }
        out
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}
