mod common;

use common::nonzero_matrix;
use gamma2lab::boolmat::DensityMode;
use gamma2lab::constructions::gen_p_modp;
use gamma2lab::extraction::{biregularize, dense_submatrix, dense_submatrix_best_effort, regularize, regularize_with};
use gamma2lab::{BoolMatrix, Error};
use proptest::prelude::*;

#[test]
fn regular_inputs_are_fixed_points() {
    for (q, p) in [(2, 3), (3, 5), (4, 7), (5, 11)] {
        let m = gen_p_modp(q, p).unwrap();
        let r = regularize(&m).unwrap();
        assert_eq!((r.rows.len(), r.cols.len()), (m.rows(), m.cols()));
        assert!((r.d_prime - q as f64).abs() < 1e-12);
        let b = biregularize(&m).unwrap();
        assert_eq!((b.rows.len(), b.cols.len(), b.a, b.b), (m.rows(), m.cols(), q, q));
        assert_eq!(b.p, 0.5);
        assert!((b.q - 1.0 / (12.0 * ((2 * q * p) as f64).log2())).abs() < 1e-15);
    }
}

#[test]
fn planted_skew_instance() {
    let m = BoolMatrix::from_fn(40, 10, |i, j| j == 0 || j == i % 10).unwrap();
    let b = biregularize(&m).unwrap();
    b.verify(&m).unwrap();
    assert!((b.d - m.avg_degree() / 2.0).abs() < 1e-15);
}

#[test]
fn zero_matrix_is_rejected() {
    let z = BoolMatrix::zeros(3, 4).unwrap();
    assert!(matches!(regularize(&z), Err(Error::Input(_))));
    assert!(matches!(biregularize(&z), Err(Error::Input(_))));
    assert!(matches!(dense_submatrix(&z, 1, 0), Err(Error::Input(_))));
}

#[test]
fn planted_block_with_identity() {
    for z in [2, 4, 7] {
        let m = BoolMatrix::all_ones(z, z).unwrap().direct_sum(&BoolMatrix::identity(9).unwrap());
        let d = dense_submatrix_best_effort(&m, z, 3).unwrap();
        let block: Vec<usize> = (0..z).collect();
        assert_eq!((d.rows.clone(), d.cols.clone()), (block.clone(), block));
        assert_eq!(d.density, z as f64);
        match dense_submatrix(&m, z, 3) {
            Err(Error::Capability(msg)) => assert!(msg.contains(&format!("max feasible z is {}", d.max_feasible_z))),
            other => panic!("expected capability error, got {other:?}"),
        }
    }
}

#[test]
fn single_cell_request() {
    let m = BoolMatrix::from_rows(&[[0, 0, 0], [0, 0, 1]]).unwrap();
    let d = dense_submatrix_best_effort(&m, 1, 0).unwrap();
    assert_eq!((d.rows, d.cols, d.ones), (vec![1], vec![2], 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn regularized_invariants(m in nonzero_matrix(14, 14)) {
        regularize(&m).unwrap().verify(&m).unwrap();
        regularize_with(&m, DensityMode::Greedy).unwrap().verify(&m).unwrap();
    }

    #[test]
    fn biregular_invariants(m in nonzero_matrix(14, 14)) {
        let b = biregularize(&m).unwrap();
        b.verify(&m).unwrap();
        prop_assert!((b.d - m.avg_degree() / 2.0).abs() < 1e-12);
        prop_assert!((b.q - 1.0 / (12.0 * ((m.rows() + m.cols()) as f64).log2().max(1.0))).abs() < 1e-15);
    }

    #[test]
    fn best_effort_density_sandwich(m in nonzero_matrix(12, 12), z in 1usize..6, seed in any::<u64>()) {
        prop_assume!(z <= m.rows().min(m.cols()));
        let d = dense_submatrix_best_effort(&m, z, seed).unwrap();
        prop_assert_eq!((d.rows.len(), d.cols.len()), (z, z));
        prop_assert!(d.density >= d.alpha * z as f64 && d.density <= z as f64);
        prop_assert_eq!(d, dense_submatrix_best_effort(&m, z, seed).unwrap());
    }
}
