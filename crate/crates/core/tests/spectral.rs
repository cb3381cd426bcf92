use approx::assert_relative_eq;
use gamma2lab::RealMatrix;
use proptest::prelude::*;

fn real(max: usize) -> impl Strategy<Value = RealMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-3.0f64..3.0, m * n).prop_map(move |d| RealMatrix::new(m, n, d).unwrap())
    })
}

#[test]
fn singular_value_examples() {
    assert_eq!(RealMatrix::identity(3).singular_values().unwrap(), vec![1.0; 3]);
    let j = RealMatrix::from_fn(4, 4, |_, _| 1.0).singular_values().unwrap();
    assert_relative_eq!(j[0], 4.0, epsilon = 1e-12);
    assert!(j[1..].iter().all(|&s| s == 0.0));
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let s = RealMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap().singular_values().unwrap();
    assert_relative_eq!(s[0], phi, epsilon = 1e-12);
    assert_relative_eq!(s[1], 1.0 / phi, epsilon = 1e-12);
    assert!(RealMatrix::new(1, 1, vec![f64::NAN]).is_err());
}

#[test]
fn norm_examples() {
    assert_relative_eq!(RealMatrix::identity(4).schatten_norm(1.0).unwrap(), 4.0, epsilon = 1e-12);
    let j = RealMatrix::from_fn(3, 3, |_, _| 1.0);
    assert_relative_eq!(j.schatten_norm(4.0).unwrap(), 3.0, epsilon = 1e-12);
    assert_relative_eq!(j.trace_norm().unwrap(), 3.0, epsilon = 1e-12);
    let u = [0.6, 0.8];
    let v = [1.0 / 3f64.sqrt(); 3];
    let uv = RealMatrix::from_fn(2, 3, |i, k| u[i] * v[k]);
    assert_relative_eq!(uv.trace_norm().unwrap(), 1.0, epsilon = 1e-12);
    assert!(j.schatten_norm(0.0).is_err());
    assert!(j.schatten_norm(-1.0).is_err());
}

#[test]
fn product_examples() {
    let i2 = RealMatrix::identity(2);
    let j2 = RealMatrix::from_fn(2, 2, |_, _| 1.0);
    assert_eq!(i2.hadamard(&j2).unwrap(), i2);
    let k = i2.kronecker(&j2);
    assert_eq!(k, RealMatrix::from_fn(4, 4, |a, b| if a / 2 == b / 2 { 1.0 } else { 0.0 }));
    assert_eq!(RealMatrix::identity(1).direct_sum(&RealMatrix::identity(1)), i2);
    assert!(i2.hadamard(&RealMatrix::identity(3)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_identity(a in real(7)) {
        let s = a.singular_values().unwrap();
        prop_assert_eq!(s.len(), a.rows().min(a.cols()));
        prop_assert!(s.windows(2).all(|w| w[0] >= w[1]) && s.iter().all(|&x| x >= 0.0));
        let f = a.frobenius_sq();
        prop_assert!((s.iter().map(|x| x * x).sum::<f64>() - f).abs() <= 1e-9 * f.max(1.0));
        prop_assert!((a.schatten_norm(2.0).unwrap() - f.sqrt()).abs() <= 1e-9 * f.sqrt().max(1.0));
    }

    #[test]
    fn schatten_monotone(a in real(6)) {
        let ps = [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 8.0, f64::INFINITY];
        let v: Vec<f64> = ps.iter().map(|&p| a.schatten_norm(p).unwrap()).collect();
        prop_assert!(v.windows(2).all(|w| w[0] >= w[1] - 1e-9 * w[0].max(1.0)));
        prop_assert!((v[7] - a.singular_values().unwrap()[0]).abs() < 1e-12);
    }

    #[test]
    fn kronecker_spectrum(a in real(3), b in real(3)) {
        let mut expect: Vec<f64> = a.singular_values().unwrap().iter()
            .flat_map(|x| b.singular_values().unwrap().into_iter().map(move |y| x * y))
            .collect();
        expect.sort_by(|x, y| y.total_cmp(x));
        let got = a.kronecker(&b).singular_values().unwrap();
        let top = expect[0].max(1.0);
        // entries below the clamp threshold are reported as zero
        for (g, e) in got.iter().zip(&expect) {
            prop_assert!((g - e).abs() <= 1e-8 * top, "{:?} vs {:?}", got, expect);
        }
    }

    #[test]
    fn svd_reconstructs(a in real(6)) {
        let svd = a.svd().unwrap();
        let us = RealMatrix::from_fn(svd.u.rows(), svd.s.len(), |i, k| svd.u.get(i, k) * svd.s[k]);
        let back = us.matmul(&svd.v.transpose()).unwrap();
        prop_assert!(back.max_abs_diff(&a).unwrap() < 1e-8);
    }
}
