mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use qmbench::fockspace::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_hermitian, random_symmetric_tensor};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn oracle_gap(stats: Statistics, n: u32, modes: usize, h: &ModeMatrix, v: &TwoBodyTensor) -> f64 {
    let basis = enumerate_basis(stats, modes, Sector::Fixed(n), None).unwrap();
    let f1 = one_body_operator(&basis, h).unwrap();
    let f2 = two_body_operator(&basis, v).unwrap();
    let mut worst = 0.0f64;
    for (r, bra) in basis.states().iter().enumerate() {
        for (col, ket) in basis.states().iter().enumerate() {
            let o1 = first_quantized_oracle(stats, bra, ket, OraclePayload::OneBody(h)).unwrap();
            let o2 = first_quantized_oracle(stats, bra, ket, OraclePayload::TwoBody(v)).unwrap();
            worst = worst.max((f1.get(r, col) - o1).norm()).max((f2.get(r, col) - o2).norm());
        }
    }
    worst
}

#[test]
fn second_quantized_matches_first_quantized() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for stats in [Statistics::Boson, Statistics::Fermion] {
        for n in 1..=3u32 {
            for modes in 2..=4usize {
                if stats == Statistics::Fermion && n as usize > modes {
                    continue;
                }
                for _ in 0..5 {
                    let h = random_hermitian(&mut rng, modes);
                    let v = random_symmetric_tensor(&mut rng, modes);
                    let gap = oracle_gap(stats, n, modes, &h, &v);
                    assert!(gap < 1e-12, "{stats:?} N={n} modes={modes}: {gap}");
                }
            }
        }
    }
}

#[test]
fn oracle_single_particle_expectation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = random_hermitian(&mut rng, 4);
    for m in 0..4 {
        let mut occ = vec![0u32; 4];
        occ[m] = 1;
        let e = first_quantized_oracle(Statistics::Boson, &occ, &occ, OraclePayload::OneBody(&h)).unwrap();
        assert!((e - h.get(m, m)).norm() < 1e-15);
    }
}

#[test]
fn fermion_anticommutators_exact() {
    for modes in 1..=8usize {
        let full = enumerate_basis(Statistics::Fermion, modes, Sector::UpTo(modes as u32), None).unwrap();
        for n in 0..=modes as u32 {
            let fixed = enumerate_basis(Statistics::Fermion, modes, Sector::Fixed(n), None).unwrap();
            for i in 0..modes {
                for j in 0..modes {
                    assert_eq!(commutator_check(&fixed, i, j).unwrap(), 0.0);
                }
            }
        }
        for i in 0..modes {
            let ad = ladder_matrix(&full, i, LadderKind::Create).unwrap();
            assert_eq!(ad.matmul(&ad).unwrap().nnz(), 0);
            for j in 0..modes {
                let a = ladder_matrix(&full, i, LadderKind::Annihilate).unwrap();
                let adj = ladder_matrix(&full, j, LadderKind::Create).unwrap();
                let mut anti = a.matmul(&adj).unwrap().add(&adj.matmul(&a).unwrap()).unwrap();
                if i == j {
                    anti = anti.sub(&SparseOperator::identity(full.len())).unwrap();
                }
                assert_eq!(anti.nnz(), 0, "modes={modes} i={i} j={j}");
            }
        }
    }
}

#[test]
fn boson_commutators_on_safe_subspace() {
    let basis = enumerate_basis(Statistics::Boson, 3, Sector::UpTo(4), Some(3)).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(commutator_check(&basis, i, j).unwrap(), 0.0);
        }
    }
    let fixed = enumerate_basis(Statistics::Boson, 3, Sector::Fixed(3), None).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(commutator_check(&fixed, i, j).unwrap(), 0.0);
        }
    }
}

#[test]
fn truncated_boson_matrices_fail_only_at_the_edge() {
    let basis = enumerate_basis(Statistics::Boson, 1, Sector::UpTo(4), None).unwrap();
    let a = ladder_matrix(&basis, 0, LadderKind::Annihilate).unwrap();
    let ad = ladder_matrix(&basis, 0, LadderKind::Create).unwrap();
    let comm = a.commutator(&ad).unwrap().sub(&SparseOperator::identity(basis.len())).unwrap();
    // floating-point products of square roots leave rounding noise off the edge
    for (r, col, v) in comm.triplets() {
        assert_eq!(r, col);
        if basis.state(col)[0] == 4 {
            assert_eq!(v, c(-5.0));
        } else {
            assert!(v.norm() < 1e-14);
        }
    }
}

#[test]
fn diagonal_one_body_spectrum() {
    let eps = [0.3, -1.1, 2.7, 0.05];
    for stats in [Statistics::Boson, Statistics::Fermion] {
        let basis = enumerate_basis(stats, 4, Sector::UpTo(3), None).unwrap();
        let f = one_body_operator(&basis, &ModeMatrix::diagonal(&eps)).unwrap();
        for (i, occ) in basis.states().iter().enumerate() {
            let expect: f64 = occ.iter().zip(eps).map(|(&n, e)| n as f64 * e).sum();
            assert!((f.get(i, i).re - expect).abs() < 1e-12);
        }
        assert_eq!(f.nnz(), basis.states().iter().filter(|o| o.iter().zip(eps).any(|(&n, _)| n > 0)).count());
    }
}

#[test]
fn boson_hop_element() {
    let basis = enumerate_basis(Statistics::Boson, 2, Sector::Fixed(4), None).unwrap();
    let h = ModeMatrix::from_fn(2, |i, j| c(if i == 0 && j == 1 { 1.0 } else { 0.0 }));
    let f = one_body_operator(&basis, &h).unwrap();
    for n1 in 0..4u32 {
        let ket = basis.index_of(&[n1, 4 - n1]).unwrap();
        let bra = basis.index_of(&[n1 + 1, 3 - n1]).unwrap();
        let expect = (((4 - n1) * (n1 + 1)) as f64).sqrt();
        assert_eq!(f.get(bra, ket), c(expect));
    }
}

#[test]
fn density_density_and_single_fermion() {
    let g = 0.6;
    let v = TwoBodyTensor::from_fn(2, |i, j, k, l| {
        c(if i == k && j == l && i != j { g } else { 0.0 })
    });
    let basis = enumerate_basis(Statistics::Boson, 2, Sector::UpTo(4), None).unwrap();
    let f = two_body_operator(&basis, &v).unwrap();
    for (i, occ) in basis.states().iter().enumerate() {
        assert!((f.get(i, i).re - g * (occ[0] * occ[1]) as f64).abs() < 1e-14);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let vr = random_symmetric_tensor(&mut rng, 4);
    let one = enumerate_basis(Statistics::Fermion, 4, Sector::Fixed(1), None).unwrap();
    assert_eq!(two_body_operator(&one, &vr).unwrap().nnz(), 0);
}

#[test]
fn hermiticity_and_number_conservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for stats in [Statistics::Boson, Statistics::Fermion] {
        let basis = enumerate_basis(stats, 4, Sector::UpTo(3), None).unwrap();
        let h = random_hermitian(&mut rng, 4);
        let v = random_symmetric_tensor(&mut rng, 4);
        let f1 = one_body_operator(&basis, &h).unwrap();
        let f2 = two_body_operator(&basis, &v).unwrap();
        assert!(f1.is_hermitian(1e-14));
        assert!(f2.is_hermitian(1e-14));
        assert_eq!(number_commutator(&basis, &f1).unwrap(), 0.0);
        assert_eq!(number_commutator(&basis, &f2).unwrap(), 0.0);
        for (r, col, _) in f1.triplets().chain(f2.triplets()) {
            assert_eq!(basis.particle_number(r), basis.particle_number(col));
        }
        let nonherm = ModeMatrix::from_fn(4, |i, j| Complex64::new(i as f64 - j as f64 * 0.5, (i * j) as f64));
        let lhs = one_body_operator(&basis, &nonherm).unwrap().adjoint();
        let rhs = one_body_operator(&basis, &nonherm.adjoint()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-15);
    }
}

#[test]
fn u1_phase_rotation() {
    for stats in [Statistics::Boson, Statistics::Fermion] {
        let basis = enumerate_basis(stats, 3, Sector::UpTo(3), None).unwrap();
        for i in 0..3 {
            let a = ladder_matrix(&basis, i, LadderKind::Annihilate).unwrap();
            assert!(u1_phase_check(&basis, &a, 0.7, 1).unwrap() < 1e-15);
            let ad = ladder_matrix(&basis, i, LadderKind::Create).unwrap();
            assert!(u1_phase_check(&basis, &ad, 0.7, -1).unwrap() < 1e-15);
        }
    }
    let basis = enumerate_basis(Statistics::Boson, 2, Sector::UpTo(2), None).unwrap();
    let n = number_operator(&basis);
    assert_eq!(n.get(basis.index_of(&[0, 0]).unwrap(), basis.index_of(&[0, 0]).unwrap()), c(0.0));
}

proptest! {
    #[test]
    fn boson_basis_size_is_multiset_count(modes in 1usize..5, n in 0u32..5) {
        let basis = enumerate_basis(Statistics::Boson, modes, Sector::Fixed(n), None).unwrap();
        let binom = |a: u64, b: u64| (0..b).fold(1u64, |acc, k| acc * (a - k) / (k + 1));
        prop_assert_eq!(basis.len() as u64, binom(n as u64 + modes as u64 - 1, n as u64));
    }

    #[test]
    fn fermion_basis_size_is_binomial(modes in 1usize..10, n in 0u32..10) {
        let r = enumerate_basis(Statistics::Fermion, modes, Sector::Fixed(n), None);
        if n as usize > modes {
            prop_assert!(r.is_err());
        } else {
            let binom = |a: u64, b: u64| (0..b).fold(1u64, |acc, k| acc * (a - k) / (k + 1));
            prop_assert_eq!(r.unwrap().len() as u64, binom(modes as u64, n as u64));
        }
    }
}
