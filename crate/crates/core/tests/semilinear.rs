use gamma2lab::semilinear::{
    box_factorization, box_factorization_value, count_dominance_edges, count_dominance_edges_naive, f_s_bound,
    gen_dominance, gen_points_boxes, gen_points_corners, thin_to_four_cycle_free, DominanceInstance, LinearForm,
    SemilinearInstance,
};
use gamma2lab::Error;
use proptest::prelude::*;

fn line(xs: Vec<f64>, ys: Vec<f64>, a: f64) -> SemilinearInstance {
    let f = LinearForm::new(vec![a], vec![-1.0], 0.0);
    SemilinearInstance::new(1, 1, xs.into_iter().map(|x| vec![x]).collect(), ys.into_iter().map(|y| vec![y]).collect(), vec![vec![f]])
        .unwrap()
}

#[test]
fn edge_examples() {
    let g = line(vec![3.0, 5.0], vec![5.0, 3.0], 1.0);
    assert!(g.edge(0, 0).unwrap());
    assert!(!g.edge(1, 1).unwrap());
    assert!(!g.edge(0, 1).unwrap(), "f = 0 is not an edge");
    assert!(g.edge(2, 0).is_err());
    assert_eq!(g.biadjacency().unwrap().to_dense(), vec![vec![1, 0], vec![0, 0]]);
}

#[test]
fn hand_built_boxes() {
    // one box (0,2)×(0,1), points inside, on the boundary and outside
    let f = |a: Vec<f64>, b: Vec<f64>| vec![LinearForm::new(a, b, 0.0)];
    let forms = vec![
        f(vec![-1.0, 0.0], vec![1.0, 0.0, 0.0, 0.0]),
        f(vec![0.0, -1.0], vec![0.0, 1.0, 0.0, 0.0]),
        f(vec![1.0, 0.0], vec![0.0, 0.0, -1.0, 0.0]),
        f(vec![0.0, 1.0], vec![0.0, 0.0, 0.0, -1.0]),
    ];
    let pts = vec![vec![1.0, 0.5], vec![2.0, 0.5], vec![3.0, 0.5]];
    let g = SemilinearInstance::new(2, 4, pts, vec![vec![0.0, 0.0, 2.0, 1.0]], forms).unwrap();
    assert_eq!(g.biadjacency().unwrap().to_dense(), vec![vec![1], vec![0], vec![0]]);
}

#[test]
fn dominance_lifts() {
    let g = line(vec![1.0, 2.0], vec![1.5, 0.5], 1.0);
    let d = g.to_dominance().unwrap();
    assert_eq!(d.u1, vec![vec![1.0], vec![2.0]]);
    assert_eq!(d.u2, vec![vec![1.5], vec![0.5]]);
    let flat = line(vec![1.0, 7.0], vec![0.5, 2.0], 0.0).to_dominance().unwrap();
    assert_eq!(flat.u1[0], flat.u1[1]);
    let c = gen_points_corners(25, 2, 4).unwrap();
    assert_eq!(c.to_dominance().unwrap().biadjacency().unwrap(), c.biadjacency().unwrap());

    // two alternatives: u = 2 is refused
    let f = LinearForm::new(vec![1.0], vec![-1.0], 0.0);
    let wide = SemilinearInstance::new(1, 1, vec![vec![0.0]], vec![vec![1.0]], vec![vec![f.clone(), f]]).unwrap();
    assert!(matches!(wide.to_dominance(), Err(Error::Capability(_))));
}

#[test]
fn sign_pattern_split_covers_edges() {
    let g = gen_points_boxes(12, 1, 2).unwrap();
    let parts = g.sign_pattern_split().unwrap();
    let m = g.biadjacency().unwrap();
    let mut union = gamma2lab::BoolMatrix::zeros(m.rows(), m.cols()).unwrap();
    for (_, p) in &parts {
        union = gamma2lab::BoolMatrix::from_fn(m.rows(), m.cols(), |i, j| union.get(i, j) || p.get(i, j)).unwrap();
    }
    assert_eq!(union, m);
}

#[test]
fn counting_examples() {
    let d = DominanceInstance::new(vec![vec![1.0, 1.0]], vec![vec![2.0, 2.0]]).unwrap();
    assert_eq!(count_dominance_edges(&d), 1);
    let d = DominanceInstance::new(vec![vec![0.0, 0.0]], vec![vec![0.0, 0.0]]).unwrap();
    assert_eq!(count_dominance_edges(&d), 0);
    let d = gen_dominance(50, 3, 9).unwrap();
    assert_eq!(count_dominance_edges(&d), count_dominance_edges_naive(&d));
    let big = gen_dominance(500, 2, 1).unwrap();
    assert_eq!(count_dominance_edges(&big), count_dominance_edges_naive(&big));
}

#[test]
fn recursion_examples() {
    assert_eq!(f_s_bound(8, 2, 1).unwrap(), 32);
    assert_eq!(f_s_bound(2, 2, 3).unwrap(), 4);
    assert_eq!(f_s_bound(4, 2, 2).unwrap(), 24);
    assert!(f_s_bound(0, 2, 2).is_err());
    // unrolled by hand: f_2(5) = 2·f_2(3) + f_1(5), f_2(3) = 2·f_2(2) + f_1(3)
    assert_eq!(f_s_bound(5, 2, 2).unwrap(), 2 * (2 * 4 + 12) + 20);
}

#[test]
fn box_certificate_verifies() {
    for (n, d, seed) in [(10, 1, 0), (9, 2, 1)] {
        let g = gen_points_boxes(n, d, seed).unwrap();
        let m = g.biadjacency().unwrap();
        let c = box_factorization(&g).unwrap();
        let v = c.verify(&m).unwrap();
        assert!((v - box_factorization_value(&g).unwrap()).abs() < 1e-9 * v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counting_matches_oracle(n1 in 1usize..120, n2 in 1usize..120, s in 1usize..4, grid in 2u32..6, seed in any::<u64>()) {
        let mut rng = gamma2lab::seed::rng(seed);
        use rand::Rng;
        let mut pts = |n: usize| -> Vec<Vec<f64>> {
            (0..n).map(|_| (0..s).map(|_| rng.random_range(0..grid) as f64).collect()).collect()
        };
        let d = DominanceInstance::new(pts(n1), pts(n2)).unwrap();
        prop_assert_eq!(count_dominance_edges(&d), count_dominance_edges_naive(&d));
    }

    #[test]
    fn boxes_and_dominance_agree(n in 1usize..30, d in 1usize..4, seed in any::<u64>()) {
        let g = gen_points_boxes(n, d, seed).unwrap();
        prop_assert_eq!(g.to_dominance().unwrap().biadjacency().unwrap(), g.biadjacency().unwrap());
    }

    #[test]
    fn thinned_graphs_respect_recursion(n in 4usize..150, s in 1usize..4, seed in any::<u64>()) {
        let d = gen_dominance(n, s, seed).unwrap();
        let m = d.biadjacency().unwrap();
        let kept = thin_to_four_cycle_free(&m);
        let cols: Vec<usize> = (0..n).collect();
        prop_assert!(m.submatrix(&kept, &cols).unwrap().is_four_cycle_free());
        let sub = d.restrict(&kept, &cols);
        prop_assert!(count_dominance_edges(&sub) as u128 <= f_s_bound(kept.len() + n, 2, s).unwrap());
    }
}
