//! Truncated Fock spaces for bosons and fermions.
//!
//! Fermion sign convention: modes are ordered by index and
//! `a†_i |n⟩ = (-1)^{Σ_{j<i} n_j} |n + e_i⟩`, so a basis state is
//! `a†_{m1} a†_{m2} … |0⟩` with `m1 < m2 < …` and a positive sign.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Exactly `N` particles.
    Fixed(u32),
    /// Every `N ≤ N_max`.
    UpTo(u32),
}

impl Sector {
    fn contains(&self, n: u32) -> bool {
        match *self {
            Sector::Fixed(m) => n == m,
            Sector::UpTo(m) => n <= m,
        }
    }

    fn max(&self) -> u32 {
        match *self {
            Sector::Fixed(m) | Sector::UpTo(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// Occupation-number basis in lexicographic order of occupation vectors.
#[derive(Debug, Clone)]
pub struct OccupationBasis {
    statistics: Statistics,
    n_modes: usize,
    sector: Sector,
    cap: u32,
    states: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl OccupationBasis {
    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// Largest allowed occupation of one mode.
    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<u32>] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &[u32] {
        &self.states[i]
    }

    pub fn index_of(&self, occ: &[u32]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    pub fn particle_number(&self, i: usize) -> u32 {
        self.states[i].iter().sum()
    }

    fn admits(&self, occ: &[u32]) -> bool {
        occ.iter().all(|&n| n <= self.cap) && self.sector.contains(occ.iter().sum())
    }
}

/// Enumerate every occupation vector in the sector. `cap` bounds the
/// occupation of each boson mode and defaults to the largest `N`; fermions
/// always use 1.
pub fn enumerate_basis(
    statistics: Statistics,
    n_modes: usize,
    sector: Sector,
    cap: Option<u32>,
) -> Result<OccupationBasis> {
    if n_modes == 0 {
        return Err(Error::SectorInfeasible("no modes".into()));
    }
    let cap = match statistics {
        Statistics::Fermion => 1,
        Statistics::Boson => cap.unwrap_or(sector.max()),
    };
    let capacity = cap as u64 * n_modes as u64;
    if let Sector::Fixed(n) = sector {
        if n as u64 > capacity {
            return Err(Error::SectorInfeasible(format!(
                "{n} particles do not fit in {n_modes} modes with occupation ≤ {cap}"
            )));
        }
    }
    let mut states = Vec::new();
    let mut occ = vec![0u32; n_modes];
    fill(&mut states, &mut occ, 0, 0, cap, sector);
    let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(OccupationBasis { statistics, n_modes, sector, cap, states, index })
}

fn fill(out: &mut Vec<Vec<u32>>, occ: &mut Vec<u32>, mode: usize, used: u32, cap: u32, sector: Sector) {
    if mode == occ.len() {
        if sector.contains(used) {
            out.push(occ.clone());
        }
        return;
    }
    let room = sector.max() - used;
    for n in 0..=cap.min(room) {
        occ[mode] = n;
        fill(out, occ, mode + 1, used + n, cap, sector);
    }
    occ[mode] = 0;
}

/// Result of a product of ladder operators on a number state:
/// coefficient `sign · √weight` times the target occupation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderImage {
    pub sign: i8,
    pub weight: u64,
    pub occupation: Vec<u32>,
}

impl LadderImage {
    pub fn coefficient(&self) -> f64 {
        self.sign as f64 * (self.weight as f64).sqrt()
    }
}

/// Apply `ops` right to left to `occ`. `None` when the result vanishes.
/// Boson occupations are not capped here.
pub fn apply_ladder_string(statistics: Statistics, occ: &[u32], ops: &[(usize, LadderKind)]) -> Option<LadderImage> {
    let mut state = occ.to_vec();
    let mut sign = 1i8;
    let mut weight = 1u64;
    for &(i, kind) in ops.iter().rev() {
        let n = state[i];
        match statistics {
            Statistics::Boson => match kind {
                LadderKind::Create => {
                    weight *= n as u64 + 1;
                    state[i] += 1;
                }
                LadderKind::Annihilate => {
                    if n == 0 {
                        return None;
                    }
                    weight *= n as u64;
                    state[i] -= 1;
                }
            },
            Statistics::Fermion => {
                let target = match kind {
                    LadderKind::Create if n == 0 => 1,
                    LadderKind::Annihilate if n == 1 => 0,
                    _ => return None,
                };
                if state[..i].iter().sum::<u32>() % 2 == 1 {
                    sign = -sign;
                }
                state[i] = target;
            }
        }
    }
    Some(LadderImage { sign, weight, occupation: state })
}

/// Row-compressed complex matrix with no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseOperator {
    /// Build from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Complex64)>>(rows: usize, cols: usize, entries: I) -> Self {
        let mut acc: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}×{cols}");
            *acc.entry((r, c)).or_default() += v;
        }
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(acc.len());
        let mut values = Vec::with_capacity(acc.len());
        for ((r, c), v) in acc {
            if v != Complex64::new(0.0, 0.0) {
                row_ptr[r + 1] += 1;
                col_idx.push(c);
                values.push(v);
            }
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self { rows, cols, row_ptr, col_idx, values }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_triplets(rows, cols, std::iter::empty())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, Complex64::new(1.0, 0.0))))
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        Self::from_triplets(d.len(), d.len(), d.iter().enumerate().map(|(i, &v)| (i, i, v)))
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.col_idx[k], self.values[k]))
        })
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.col_idx[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut out = vec![vec![Complex64::new(0.0, 0.0); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v;
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_triplets(self.rows, self.cols, self.triplets().map(|(r, c, v)| (r, c, s * v)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(shape_error(self.shape(), other.shape()));
        }
        Ok(Self::from_triplets(self.rows, self.cols, self.triplets().chain(other.triplets())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(shape_error(self.shape(), other.shape()));
        }
        let mut entries = Vec::new();
        for (r, k, a) in self.triplets() {
            for j in other.row_ptr[k]..other.row_ptr[k + 1] {
                entries.push((r, other.col_idx[j], a * other.values[j]));
            }
        }
        Ok(Self::from_triplets(self.rows, other.cols, entries))
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(|k| self.values[k] * x[self.col_idx[k]]).sum())
            .collect()
    }

    /// Largest entry modulus, 0 for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.sub(&self.adjoint()).map(|d| d.max_abs() <= tol).unwrap_or(false)
    }

    /// Coordinate list, one `row col re im` line per stored entry.
    pub fn to_coo_text(&self) -> String {
        let mut s = format!("# {} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, c, v) in self.triplets() {
            let _ = writeln!(s, "{r} {c} {:.17e} {:.17e}", v.re, v.im);
        }
        s
    }
}

fn shape_error(a: (usize, usize), b: (usize, usize)) -> Error {
    Error::ShapeMismatch { expected: format!("{}×{}", a.0, a.1), found: format!("{}×{}", b.0, b.1) }
}

fn check_mode(basis: &OccupationBasis, i: usize) -> Result<()> {
    if i < basis.n_modes {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("mode {i} ≥ {}", basis.n_modes)))
    }
}

fn ladder_into(source: &OccupationBasis, target: &OccupationBasis, i: usize, kind: LadderKind) -> SparseOperator {
    let entries = source.states.iter().enumerate().filter_map(|(c, occ)| {
        let img = apply_ladder_string(source.statistics, occ, &[(i, kind)])?;
        let r = target.index_of(&img.occupation)?;
        Some((r, c, Complex64::new(img.coefficient(), 0.0)))
    });
    SparseOperator::from_triplets(target.len(), source.len(), entries)
}

/// `a†_i` or `a_i` inside a basis that holds several `N` sectors.
/// Components leaving the truncated space are dropped.
pub fn ladder_matrix(basis: &OccupationBasis, i: usize, kind: LadderKind) -> Result<SparseOperator> {
    check_mode(basis, i)?;
    if let Sector::Fixed(_) = basis.sector {
        return Err(Error::TargetSectorAbsent);
    }
    Ok(ladder_into(basis, basis, i, kind))
}

/// `a†_i` or `a_i` from `source` into `target`, which must hold the `N ± 1` sector.
pub fn ladder_between(
    source: &OccupationBasis,
    target: &OccupationBasis,
    i: usize,
    kind: LadderKind,
) -> Result<SparseOperator> {
    check_mode(source, i)?;
    if source.statistics != target.statistics || source.n_modes != target.n_modes {
        return Err(Error::InvalidArgument("bases differ in statistics or mode count".into()));
    }
    let reachable = source.states.iter().any(|occ| {
        let n: u32 = occ.iter().sum();
        match kind {
            LadderKind::Create => target.sector.contains(n + 1),
            LadderKind::Annihilate => n > 0 && target.sector.contains(n - 1),
        }
    });
    if !reachable {
        return Err(Error::TargetSectorAbsent);
    }
    Ok(ladder_into(source, target, i, kind))
}

/// Largest deviation of `[a_i, a†_j] - δ_ij` (bosons) or `{a_i, a†_j} - δ_ij`
/// (fermions) with truncated ladder operators. Columns whose `a†_j` image
/// leaves the truncation are skipped. Coefficients come from exact integer
/// weights, so on the remaining columns the deviation is exactly 0.
pub fn commutator_check(basis: &OccupationBasis, i: usize, j: usize) -> Result<f64> {
    check_mode(basis, i)?;
    check_mode(basis, j)?;
    let stats = basis.statistics;
    let sign = match stats {
        Statistics::Boson => -1.0,
        Statistics::Fermion => 1.0,
    };
    let within = |occ: &[u32]| -> bool {
        occ.iter().all(|&n| n <= basis.cap)
            && match basis.sector {
                Sector::UpTo(m) => occ.iter().sum::<u32>() <= m,
                Sector::Fixed(_) => true,
            }
    };
    let two_step = |occ: &[u32], first: (usize, LadderKind), second: (usize, LadderKind)| -> Option<LadderImage> {
        let mid = apply_ladder_string(stats, occ, &[first])?;
        if !within(&mid.occupation) {
            return None;
        }
        let end = apply_ladder_string(stats, &mid.occupation, &[second])?;
        Some(LadderImage { sign: mid.sign * end.sign, weight: mid.weight * end.weight, occupation: end.occupation })
    };
    let mut worst = 0.0f64;
    for occ in &basis.states {
        let mut raised = occ.clone();
        raised[j] += 1;
        let safe = match stats {
            Statistics::Boson => within(&raised),
            Statistics::Fermion => occ[j] == 1 || within(&raised),
        };
        if !safe {
            continue;
        }
        let mut out: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        if let Some(img) = two_step(occ, (j, LadderKind::Create), (i, LadderKind::Annihilate)) {
            *out.entry(img.occupation.clone()).or_default() += img.coefficient();
        }
        if let Some(img) = two_step(occ, (i, LadderKind::Annihilate), (j, LadderKind::Create)) {
            *out.entry(img.occupation.clone()).or_default() += sign * img.coefficient();
        }
        if i == j {
            *out.entry(occ.clone()).or_default() -= 1.0;
        }
        worst = out.values().fold(worst, |w, v| w.max(v.abs()));
    }
    Ok(worst)
}

/// Dense `n × n` complex matrix over single-particle modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ModeMatrix {
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch { expected: format!("{n} columns"), found: format!("{}", bad.len()) });
        }
        Ok(Self { n, data: rows.concat() })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn diagonal(eps: &[f64]) -> Self {
        Self::from_fn(eps.len(), |i, j| Complex64::new(if i == j { eps[i] } else { 0.0 }, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }
}

/// Two-body matrix elements `V_ijkl = ∫ u_i*(1) u_j*(2) V u_k(1) u_l(2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyTensor {
    n: usize,
    data: Vec<Complex64>,
}

impl TwoBodyTensor {
    pub fn from_fn<F: FnMut(usize, usize, usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn from_flat(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n.pow(4) {
            return Err(Error::ShapeMismatch { expected: format!("{} entries", n.pow(4)), found: format!("{}", data.len()) });
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        let n = self.n;
        self.data[((i * n + j) * n + k) * n + l]
    }
}

fn check_dim(basis: &OccupationBasis, n: usize) -> Result<()> {
    if n == basis.n_modes {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { expected: format!("{} modes", basis.n_modes), found: format!("{n}") })
    }
}

fn operator_from_strings<'a, I>(basis: &OccupationBasis, terms: I) -> SparseOperator
where
    I: Iterator<Item = (Complex64, Vec<(usize, LadderKind)>)> + Clone + 'a,
{
    let mut entries = Vec::new();
    for (c, occ) in basis.states.iter().enumerate() {
        for (amp, ops) in terms.clone() {
            if let Some(img) = apply_ladder_string(basis.statistics, occ, &ops) {
                if let Some(r) = basis.index_of(&img.occupation).filter(|_| basis.admits(&img.occupation)) {
                    entries.push((r, c, amp * img.coefficient()));
                }
            }
        }
    }
    SparseOperator::from_triplets(basis.len(), basis.len(), entries)
}

/// `F = Σ_ij h_ij a†_i a_j`.
pub fn one_body_operator(basis: &OccupationBasis, h: &ModeMatrix) -> Result<SparseOperator> {
    check_dim(basis, h.n)?;
    let n = h.n;
    let terms = (0..n)
        .flat_map(move |i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (h.get(i, j), vec![(i, LadderKind::Create), (j, LadderKind::Annihilate)]))
        .filter(|(v, _)| *v != Complex64::new(0.0, 0.0));
    Ok(operator_from_strings(basis, terms))
}

/// `F = ½ Σ V_ijkl a†_i a†_j a_l a_k`.
pub fn two_body_operator(basis: &OccupationBasis, v: &TwoBodyTensor) -> Result<SparseOperator> {
    check_dim(basis, v.n)?;
    let n = v.n;
    let idx = (0..n.pow(4)).map(move |m| (m / n.pow(3), (m / n.pow(2)) % n, (m / n) % n, m % n));
    let terms = idx
        .map(|(i, j, k, l)| {
            (
                0.5 * v.get(i, j, k, l),
                vec![
                    (i, LadderKind::Create),
                    (j, LadderKind::Create),
                    (l, LadderKind::Annihilate),
                    (k, LadderKind::Annihilate),
                ],
            )
        })
        .filter(|(a, _)| *a != Complex64::new(0.0, 0.0));
    Ok(operator_from_strings(basis, terms))
}

/// Diagonal `N = Σ_i n_i`.
pub fn number_operator(basis: &OccupationBasis) -> SparseOperator {
    let d: Vec<Complex64> = (0..basis.len()).map(|i| Complex64::new(basis.particle_number(i) as f64, 0.0)).collect();
    SparseOperator::diagonal(&d)
}

/// `‖[F, N]‖_max`; exactly zero for number-conserving operators.
pub fn number_commutator(basis: &OccupationBasis, op: &SparseOperator) -> Result<f64> {
    Ok(op.commutator(&number_operator(basis))?.max_abs())
}

/// `‖e^{-iαN} A e^{iαN} - e^{iΔα} A‖_max` where `Δ` is the particle-number
/// change of `A` (`Δ = 1` for an annihilator).
pub fn u1_phase_check(basis: &OccupationBasis, op: &SparseOperator, alpha: f64, delta_n: i32) -> Result<f64> {
    let phases = |s: f64| -> SparseOperator {
        let d: Vec<Complex64> =
            (0..basis.len()).map(|i| Complex64::from_polar(1.0, s * alpha * basis.particle_number(i) as f64)).collect();
        SparseOperator::diagonal(&d)
    };
    let rotated = phases(-1.0).matmul(op)?.matmul(&phases(1.0))?;
    let expected = op.scale(Complex64::from_polar(1.0, alpha * delta_n as f64));
    Ok(rotated.sub(&expected)?.max_abs())
}

/// Limits of the dense first-quantized representation.
pub const FQ_MAX_PARTICLES: usize = 4;
pub const FQ_MAX_MODES: usize = 6;

/// N-particle amplitude tensor over `modes^N`, fully (anti)symmetrized.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstQuantizedState {
    pub statistics: Statistics,
    pub n_modes: usize,
    pub n_particles: usize,
    pub amplitudes: Vec<Complex64>,
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let parity = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, parity));
        }
    }
    out
}

impl FirstQuantizedState {
    fn flat_index(&self, modes: &[usize]) -> usize {
        modes.iter().fold(0, |acc, &m| acc * self.n_modes + m)
    }

    fn modes_of(&self, mut idx: usize) -> Vec<usize> {
        let mut m = vec![0; self.n_particles];
        for slot in (0..self.n_particles).rev() {
            m[slot] = idx % self.n_modes;
            idx /= self.n_modes;
        }
        m
    }

    /// `a†_{m1} … a†_{mN} |0⟩` (ascending modes) as a normalized tensor.
    pub fn from_occupation(statistics: Statistics, occ: &[u32]) -> Result<Self> {
        let n_modes = occ.len();
        let n_particles: usize = occ.iter().map(|&n| n as usize).sum();
        if n_particles > FQ_MAX_PARTICLES || n_modes > FQ_MAX_MODES {
            return Err(Error::SizeGuard(format!("N = {n_particles}, modes = {n_modes}")));
        }
        if statistics == Statistics::Fermion && occ.iter().any(|&n| n > 1) {
            return Err(Error::InvalidArgument("antisymmetrized amplitude vanishes for a doubly occupied mode".into()));
        }
        let modes: Vec<usize> = occ.iter().enumerate().flat_map(|(m, &n)| std::iter::repeat_n(m, n as usize)).collect();
        let mut st = Self {
            statistics,
            n_modes,
            n_particles,
            amplitudes: vec![Complex64::new(0.0, 0.0); n_modes.pow(n_particles as u32)],
        };
        for (perm, parity) in permutations(n_particles) {
            let placed: Vec<usize> = perm.iter().map(|&p| modes[p]).collect();
            let s = match statistics {
                Statistics::Boson => 1.0,
                Statistics::Fermion => parity as f64,
            };
            let k = st.flat_index(&placed);
            st.amplitudes[k] += s;
        }
        let norm = st.norm();
        st.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(st)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    fn zeroed(&self) -> Self {
        Self { amplitudes: vec![Complex64::new(0.0, 0.0); self.amplitudes.len()], ..self.clone() }
    }

    /// `Σ_a h(a)` acting slot by slot.
    pub fn apply_one_body(&self, h: &ModeMatrix) -> Result<Self> {
        if h.n != self.n_modes {
            return Err(Error::ShapeMismatch { expected: format!("{} modes", self.n_modes), found: format!("{}", h.n) });
        }
        let mut out = self.zeroed();
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            if *amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let modes = self.modes_of(idx);
            for slot in 0..self.n_particles {
                for a in 0..self.n_modes {
                    let mut m = modes.clone();
                    m[slot] = a;
                    let k = self.flat_index(&m);
                    out.amplitudes[k] += h.get(a, modes[slot]) * amp;
                }
            }
        }
        Ok(out)
    }

    /// `½ Σ_{a≠b} V(a, b)` acting on slot pairs.
    pub fn apply_two_body(&self, v: &TwoBodyTensor) -> Result<Self> {
        if v.n != self.n_modes {
            return Err(Error::ShapeMismatch { expected: format!("{} modes", self.n_modes), found: format!("{}", v.n) });
        }
        let mut out = self.zeroed();
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            if *amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let modes = self.modes_of(idx);
            for s in 0..self.n_particles {
                for t in 0..self.n_particles {
                    if s == t {
                        continue;
                    }
                    for i in 0..self.n_modes {
                        for j in 0..self.n_modes {
                            let mut m = modes.clone();
                            m[s] = i;
                            m[t] = j;
                            let k = self.flat_index(&m);
                            out.amplitudes[k] += 0.5 * v.get(i, j, modes[s], modes[t]) * amp;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Operator handed to the first-quantized oracle.
#[derive(Debug, Clone, Copy)]
pub enum OraclePayload<'a> {
    OneBody(&'a ModeMatrix),
    TwoBody(&'a TwoBodyTensor),
}

/// `⟨bra|F|ket⟩` computed on dense (anti)symmetrized tensors.
pub fn first_quantized_oracle(statistics: Statistics, bra: &[u32], ket: &[u32], payload: OraclePayload<'_>) -> Result<Complex64> {
    let b = FirstQuantizedState::from_occupation(statistics, bra)?;
    let k = FirstQuantizedState::from_occupation(statistics, ket)?;
    if b.n_particles != k.n_particles || b.n_modes != k.n_modes {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let fk = match payload {
        OraclePayload::OneBody(h) => k.apply_one_body(h)?,
        OraclePayload::TwoBody(v) => k.apply_two_body(v)?,
    };
    Ok(b.inner(&fk))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_counts() {
        assert_eq!(enumerate_basis(Statistics::Fermion, 4, Sector::Fixed(2), None).unwrap().len(), 6);
        assert_eq!(enumerate_basis(Statistics::Boson, 2, Sector::Fixed(3), Some(3)).unwrap().len(), 4);
        assert_eq!(enumerate_basis(Statistics::Boson, 1, Sector::UpTo(5), Some(5)).unwrap().len(), 6);
        assert!(matches!(
            enumerate_basis(Statistics::Fermion, 2, Sector::Fixed(3), None),
            Err(Error::SectorInfeasible(_))
        ));
    }

    #[test]
    fn basis_is_lexicographic_and_indexed() {
        let b = enumerate_basis(Statistics::Boson, 3, Sector::UpTo(2), None).unwrap();
        for w in b.states().windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, s) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(s), Some(i));
        }
    }

    #[test]
    fn boson_ladder_element() {
        let b = enumerate_basis(Statistics::Boson, 1, Sector::UpTo(3), None).unwrap();
        let ad = ladder_matrix(&b, 0, LadderKind::Create).unwrap();
        let r = b.index_of(&[2]).unwrap();
        let col = b.index_of(&[1]).unwrap();
        assert_eq!(ad.get(r, col), c(2f64.sqrt()));
    }

    #[test]
    fn fermion_sign_rule() {
        let b = enumerate_basis(Statistics::Fermion, 3, Sector::UpTo(3), None).unwrap();
        let ad = ladder_matrix(&b, 1, LadderKind::Create).unwrap();
        let col = b.index_of(&[1, 0, 0]).unwrap();
        let row = b.index_of(&[1, 1, 0]).unwrap();
        assert_eq!(ad.get(row, col), c(-1.0));
        assert_eq!(ad.matmul(&ad).unwrap().nnz(), 0);
    }

    #[test]
    fn fixed_sector_ladder_needs_target() {
        let b = enumerate_basis(Statistics::Fermion, 3, Sector::Fixed(1), None).unwrap();
        assert_eq!(ladder_matrix(&b, 0, LadderKind::Create), Err(Error::TargetSectorAbsent));
        let b3 = enumerate_basis(Statistics::Fermion, 3, Sector::Fixed(3), None).unwrap();
        assert_eq!(ladder_between(&b, &b3, 0, LadderKind::Create), Err(Error::TargetSectorAbsent));
        let b2 = enumerate_basis(Statistics::Fermion, 3, Sector::Fixed(2), None).unwrap();
        let op = ladder_between(&b, &b2, 0, LadderKind::Create).unwrap();
        assert_eq!(op.shape(), (3, 3));
    }

    #[test]
    fn contact_interaction_single_mode() {
        let b = enumerate_basis(Statistics::Boson, 1, Sector::UpTo(5), None).unwrap();
        let v = TwoBodyTensor::from_fn(1, |_, _, _, _| c(0.8));
        let op = two_body_operator(&b, &v).unwrap();
        for i in 0..b.len() {
            let n = b.state(i)[0] as f64;
            assert!((op.get(i, i).re - 0.4 * n * (n - 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_is_number_operator() {
        let b = enumerate_basis(Statistics::Fermion, 4, Sector::UpTo(4), None).unwrap();
        let f = one_body_operator(&b, &ModeMatrix::identity(4)).unwrap();
        assert_eq!(f, number_operator(&b));
    }

    #[test]
    fn shape_checks() {
        let b = enumerate_basis(Statistics::Boson, 3, Sector::Fixed(2), None).unwrap();
        assert!(matches!(one_body_operator(&b, &ModeMatrix::identity(2)), Err(Error::ShapeMismatch { .. })));
        assert!(TwoBodyTensor::from_flat(2, vec![c(0.0); 15]).is_err());
        assert!(ModeMatrix::from_rows(&[vec![c(1.0)], vec![c(0.0), c(1.0)]]).is_err());
    }

    #[test]
    fn oracle_guards() {
        assert!(matches!(
            FirstQuantizedState::from_occupation(Statistics::Boson, &[5, 0]),
            Err(Error::SizeGuard(_))
        ));
        assert!(FirstQuantizedState::from_occupation(Statistics::Fermion, &[2, 0]).is_err());
        let st = FirstQuantizedState::from_occupation(Statistics::Fermion, &[1, 1, 0]).unwrap();
        assert!((st.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn coo_export() {
        let op = SparseOperator::from_triplets(2, 2, [(0, 1, c(2.0)), (1, 0, c(0.0))]);
        assert_eq!(op.nnz(), 1);
        assert!(op.to_coo_text().starts_with("# 2 2 1\n0 1 "));
    }
}
