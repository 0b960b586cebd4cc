use num_complex::Complex64;
use qmbench::fockspace::{
    commutator_check, enumerate_basis, ladder_matrix, one_body_operator, two_body_operator, FirstQuantizedState, LadderKind,
    ModeMatrix, Sector, SparseOperator, Statistics, TwoBodyTensor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Scenario;
use crate::error::CliError;
use crate::params::{ParamSpec, Params};
use crate::report::{Report, Table};

pub const FOCK_ORACLE: Scenario = Scenario {
    name: "fock-oracle",
    description: "Second-quantized one- and two-body matrix elements against first-quantized brute force",
    anchors: &[
        "F1 = Σ ⟨i|f|j⟩ a†_i a_j",
        "F2 = ½ Σ ⟨ij|v|kl⟩ a†_i a†_j a_l a_k",
    ],
    params: &[
        ParamSpec::int("seed", "2024", "random seed"),
        ParamSpec::int("draws", "50", "random operators per (statistics, N, modes)"),
        ParamSpec::int("max-particles", "3", "largest particle number"),
        ParamSpec::int("max-modes", "4", "largest number of modes"),
    ],
    run: fock_oracle,
};

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ModeMatrix {
    let raw: Vec<Complex64> = (0..n * n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    ModeMatrix::from_fn(n, |i, j| 0.5 * (raw[i * n + j] + raw[j * n + i].conj()))
}

/// `V_ijkl = V_jilk = conj(V_klij)`.
fn random_symmetric_tensor(rng: &mut ChaCha8Rng, n: usize) -> TwoBodyTensor {
    let raw: Vec<Complex64> =
        (0..n.pow(4)).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let w = |i: usize, j: usize, k: usize, l: usize| raw[((i * n + j) * n + k) * n + l];
    TwoBodyTensor::from_fn(n, |i, j, k, l| 0.25 * (w(i, j, k, l) + w(j, i, l, k) + w(k, l, i, j).conj() + w(l, k, j, i).conj()))
}

/// Largest deviation between the sparse operators and the dense
/// first-quantized action, over every basis pair.
fn oracle_gaps(stats: Statistics, n: u32, modes: usize, h: &ModeMatrix, v: &TwoBodyTensor) -> Result<(usize, f64, f64), CliError> {
    let basis = enumerate_basis(stats, modes, Sector::Fixed(n), None)?;
    let f1 = one_body_operator(&basis, h)?;
    let f2 = two_body_operator(&basis, v)?;
    let states: Vec<FirstQuantizedState> =
        basis.states().iter().map(|occ| FirstQuantizedState::from_occupation(stats, occ)).collect::<Result<_, _>>()?;
    let (mut g1, mut g2) = (0.0f64, 0.0f64);
    for (col, ket) in states.iter().enumerate() {
        let hk = ket.apply_one_body(h)?;
        let vk = ket.apply_two_body(v)?;
        for (row, bra) in states.iter().enumerate() {
            g1 = g1.max((f1.get(row, col) - bra.inner(&hk)).norm());
            g2 = g2.max((f2.get(row, col) - bra.inner(&vk)).norm());
        }
    }
    Ok((basis.len(), g1, g2))
}

fn fock_oracle(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.int("seed") as u64);
    let draws = p.count("draws", 1, 100_000)?;
    let max_n = p.count("max-particles", 1, 4)? as u32;
    let max_modes = p.count("max-modes", 1, 6)?;
    let mut t = Table::new("gaps", &["fermion:int", "particles:int", "modes:int", "dim:int", "one_body_gap", "two_body_gap"]);
    let mut worst = 0.0f64;
    for stats in [Statistics::Boson, Statistics::Fermion] {
        for n in 1..=max_n {
            for modes in 2..=max_modes {
                if stats == Statistics::Fermion && n as usize > modes {
                    continue;
                }
                let (mut dim, mut g1, mut g2) = (0, 0.0f64, 0.0f64);
                for _ in 0..draws {
                    let h = random_hermitian(&mut rng, modes);
                    let v = random_symmetric_tensor(&mut rng, modes);
                    let (d, a, b) = oracle_gaps(stats, n, modes, &h, &v)?;
                    dim = d;
                    g1 = g1.max(a);
                    g2 = g2.max(b);
                }
                worst = worst.max(g1).max(g2);
                let fermion = if stats == Statistics::Fermion { 1.0 } else { 0.0 };
                t.push(vec![fermion, n as f64, modes as f64, dim as f64, g1, g2]);
            }
        }
    }
    r.check("max_gap", worst, 1e-12);
    r.table(t);
    Ok(())
}

pub const FERMION_ALGEBRA: Scenario = Scenario {
    name: "fermion-algebra",
    description: "Canonical anticommutators and Pauli exclusion on full fermion Fock spaces",
    anchors: &["{a_i, a†_j} = δ_ij", "(a†_i)² = 0"],
    params: &[ParamSpec::int("max-modes", "12", "largest number of modes")],
    run: fermion_algebra,
};

/// `max |{a_i, a†_j} - δ_ij|` over all pairs, and nonzeros of `(a†_i)²`.
pub fn fermion_algebra_defects(modes: usize) -> Result<(usize, f64, usize), CliError> {
    let full = enumerate_basis(Statistics::Fermion, modes, Sector::UpTo(modes as u32), None)?;
    let create: Vec<SparseOperator> =
        (0..modes).map(|i| ladder_matrix(&full, i, LadderKind::Create)).collect::<Result<_, _>>()?;
    let annihilate: Vec<SparseOperator> =
        (0..modes).map(|i| ladder_matrix(&full, i, LadderKind::Annihilate)).collect::<Result<_, _>>()?;
    let identity = SparseOperator::identity(full.len());
    let mut worst = 0.0f64;
    let mut square_nnz = 0;
    for i in 0..modes {
        square_nnz += create[i].matmul(&create[i])?.nnz();
        for j in 0..modes {
            let mut anti = annihilate[i].matmul(&create[j])?.add(&create[j].matmul(&annihilate[i])?)?;
            if i == j {
                anti = anti.sub(&identity)?;
            }
            worst = worst.max(anti.max_abs());
        }
    }
    for n in 0..=modes as u32 {
        let fixed = enumerate_basis(Statistics::Fermion, modes, Sector::Fixed(n), None)?;
        for i in 0..modes {
            for j in 0..modes {
                worst = worst.max(commutator_check(&fixed, i, j)?);
            }
        }
    }
    Ok((full.len(), worst, square_nnz))
}

fn fermion_algebra(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let mut t = Table::new("algebra", &["modes:int", "dim:int", "anticommutator_defect", "square_nnz:int"]);
    let (mut worst, mut nnz) = (0.0f64, 0usize);
    for modes in 1..=p.count("max-modes", 1, 16)? {
        let (dim, defect, square) = fermion_algebra_defects(modes)?;
        worst = worst.max(defect);
        nnz += square;
        t.push(vec![modes as f64, dim as f64, defect, square as f64]);
    }
    r.check("anticommutator_defect", worst, 0.0);
    r.check("creation_square_nnz", nnz as f64, 0.0);
    r.table(t);
    Ok(())
}
