mod common;

use common::{brute_degeneracy, brute_densest, brute_squares, matrix, nonzero_matrix};
use gamma2lab::boolmat::{parse_bmx, DensityMode, Side};
use gamma2lab::constructions::gen_p_modp;
use gamma2lab::BoolMatrix;
use proptest::prelude::*;

#[test]
fn degree_and_four_cycle_examples() {
    let p = gen_p_modp(3, 5).unwrap();
    assert_eq!(BoolMatrix::identity(3).unwrap().avg_degree(), 1.0);
    assert_eq!(BoolMatrix::all_ones(3, 3).unwrap().avg_degree(), 3.0);
    assert_eq!(p.avg_degree(), 3.0);
    assert!(!BoolMatrix::all_ones(2, 2).unwrap().is_four_cycle_free());
    assert!(BoolMatrix::identity(7).unwrap().is_four_cycle_free());
    assert!(p.is_four_cycle_free());
    assert!(BoolMatrix::all_ones(3, 3).unwrap().has_allones_submatrix(2).is_some());
    assert!(BoolMatrix::identity(5).unwrap().has_allones_submatrix(2).is_none());
    assert!(p.has_allones_submatrix(2).is_none());
    assert!(BoolMatrix::all_ones(3, 3).unwrap().has_allones_submatrix(4).is_none());
}

#[test]
fn degeneracy_examples() {
    assert_eq!(BoolMatrix::identity(3).unwrap().degeneracy().value, 1);
    assert_eq!(BoolMatrix::all_ones(3, 4).unwrap().degeneracy().value, 3);
    assert_eq!(gen_p_modp(3, 5).unwrap().degeneracy().value, 3);
}

#[test]
fn square_examples() {
    assert_eq!(BoolMatrix::identity(5).unwrap().count_squares(), 5);
    assert_eq!(BoolMatrix::all_ones(2, 2).unwrap().count_squares(), 16);
    let r = BoolMatrix::random(6, 6, 0.5, 11).unwrap();
    assert_eq!(r.count_squares(), brute_squares(&r));
}

#[test]
fn densest_examples() {
    let m = BoolMatrix::from_rows(&[[1, 1], [1, 1], [0, 0]]).unwrap();
    let d = m.max_avg_degree_subgraph().unwrap();
    assert_eq!((d.rows, d.cols, d.density), (vec![0, 1], vec![0, 1], 2.0));
    let p = gen_p_modp(2, 7).unwrap();
    let d = p.max_avg_degree_subgraph().unwrap();
    assert_eq!((d.rows.len(), d.cols.len(), d.density), (14, 14, 2.0));
    let m = BoolMatrix::identity(2).unwrap().direct_sum(&BoolMatrix::all_ones(3, 3).unwrap());
    let d = m.max_avg_degree_subgraph().unwrap();
    assert_eq!((d.rows, d.cols, d.density), (vec![2, 3, 4], vec![2, 3, 4], 3.0));
    assert!(BoolMatrix::zeros(2, 2).unwrap().max_avg_degree_subgraph().is_err());
}

#[test]
fn from_coords_examples() {
    assert_eq!(BoolMatrix::from_coords(2, 2, &[(0, 0), (1, 1)]).unwrap(), BoolMatrix::identity(2).unwrap());
    assert!(BoolMatrix::from_coords(1, 1, &[]).unwrap().is_zero());
    assert_eq!(BoolMatrix::from_coords(2, 2, &[(0, 0), (0, 0)]).unwrap().count_ones(), 1);
    let e = BoolMatrix::from_coords(2, 2, &[(2, 0)]).unwrap_err().to_string();
    assert!(e.contains("(2, 0)"), "{e}");
}

#[test]
fn bmx_rejects_disorder_accepts_repeats() {
    assert!(parse_bmx("2 2 2\n1 1\n0 0\n").is_err());
    assert_eq!(parse_bmx("2 2 2\n0 1\n0 1\n").unwrap().count_ones(), 1);
    assert!(parse_bmx("2 2 1\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transpose_and_full_submatrix(m in matrix(9, 9)) {
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        let rows: Vec<usize> = (0..m.rows()).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        prop_assert_eq!(m.submatrix(&rows, &cols).unwrap(), m.clone());
        prop_assert_eq!(m.count_ones(), m.coords().len());
    }

    #[test]
    fn bmx_roundtrip(m in matrix(12, 70)) {
        prop_assert_eq!(parse_bmx(&m.to_bmx_string()).unwrap(), m);
    }

    #[test]
    fn squares_match_oracle_and_spectrum(m in matrix(6, 6)) {
        let sq = m.count_squares();
        prop_assert_eq!(sq, brute_squares(&m));
        prop_assert_eq!(sq, m.transpose().count_squares());
        let s4 = m.to_real().schatten_norm(4.0).unwrap().powi(4);
        prop_assert!((s4 - sq as f64).abs() <= 1e-9 * (sq as f64).max(1.0));
    }

    #[test]
    fn four_cycle_iff_no_k22(m in matrix(7, 7)) {
        prop_assert_eq!(m.is_four_cycle_free(), m.has_allones_submatrix(2).is_none());
    }

    #[test]
    fn allones_witness_is_genuine(m in matrix(8, 8), t in 1usize..4) {
        if let Some((r, c)) = m.has_allones_submatrix(t) {
            prop_assert_eq!((r.len(), c.len()), (t, t));
            prop_assert!(r.iter().all(|&i| c.iter().all(|&j| m.get(i, j))));
        }
    }

    #[test]
    fn degeneracy_certificates(m in matrix(5, 5)) {
        let d = m.degeneracy();
        prop_assert_eq!(d.value, brute_degeneracy(&m));
        // each vertex has at most `value` neighbours later in the order
        let mut pos = vec![0usize; m.rows() + m.cols()];
        for (k, v) in d.order.iter().enumerate() {
            pos[match v.side { Side::Row => v.index, Side::Col => m.rows() + v.index }] = k;
        }
        for i in 0..m.rows() {
            let later = m.row_support(i).filter(|&j| pos[m.rows() + j] > pos[i]).count();
            prop_assert!(later <= d.value);
        }
        if d.value > 0 {
            let core = m.submatrix(&d.core_rows, &d.core_cols).unwrap();
            let min = core.row_degrees().into_iter().chain(core.col_degrees()).min().unwrap();
            prop_assert_eq!(min, d.value);
        }
    }

    #[test]
    fn degeneracy_is_monotone(m in matrix(10, 10), rmask in any::<u64>(), cmask in any::<u64>()) {
        let rows = common::subset(rmask, m.rows());
        let cols = common::subset(cmask, m.cols());
        prop_assume!(!rows.is_empty() && !cols.is_empty());
        let sub = m.submatrix(&rows, &cols).unwrap();
        prop_assert!(sub.degeneracy().value <= m.degeneracy().value);
    }

    #[test]
    fn densest_is_exact(m in nonzero_matrix(5, 5)) {
        let d = m.max_avg_degree_subgraph().unwrap();
        prop_assert!((d.density - brute_densest(&m)).abs() < 1e-9);
        prop_assert!(d.density >= m.avg_degree() - 1e-12);
        let sub = m.submatrix(&d.rows, &d.cols).unwrap();
        prop_assert!((sub.avg_degree() - d.density).abs() < 1e-12);
        let g = m.densest_subgraph(DensityMode::Greedy).unwrap();
        prop_assert!(g.density >= d.density / 2.0 - 1e-12);
    }
}
