#![allow(dead_code)]

use std::collections::HashMap;

use gamma2lab::BoolMatrix;
use proptest::prelude::*;
use serde::Deserialize;

/// The 3×3 matrix with row-major bit code `code`.
pub fn cube(code: u32) -> BoolMatrix {
    BoolMatrix::from_fn(3, 3, |i, j| code >> (3 * i + j) & 1 == 1).unwrap()
}

#[derive(Deserialize)]
pub struct Named {
    pub matrix: Vec<Vec<u8>>,
    pub gamma2: f64,
}

#[derive(Deserialize)]
pub struct Oracle {
    pub cubes: HashMap<String, f64>,
    pub named: HashMap<String, Named>,
}

/// γ₂ values computed by an external SDP solver.
pub fn oracle() -> Oracle {
    serde_json::from_str(include_str!("../data/gamma2_oracle.json")).unwrap()
}

pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BoolMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| {
        proptest::collection::vec(any::<bool>(), m * n)
            .prop_map(move |bits| BoolMatrix::from_fn(m, n, |i, j| bits[i * n + j]).unwrap())
    })
}

pub fn nonzero_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BoolMatrix> {
    matrix(max_rows, max_cols).prop_filter("nonzero", |m| !m.is_zero())
}

/// Every subset of `0..n` as a sorted index list, by bitmask.
pub fn subset(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&k| mask >> k & 1 == 1).collect()
}

/// Densest induced subgraph by enumerating all row and column subsets.
pub fn brute_densest(m: &BoolMatrix) -> f64 {
    let mut best = 0.0f64;
    for rm in 1u64..1 << m.rows() {
        for cm in 1u64..1 << m.cols() {
            let sub = m.submatrix(&subset(rm, m.rows()), &subset(cm, m.cols())).unwrap();
            best = best.max(sub.avg_degree());
        }
    }
    best
}

/// Degeneracy as the largest minimum degree over induced subgraphs.
pub fn brute_degeneracy(m: &BoolMatrix) -> usize {
    let mut best = 0;
    let total = m.rows() + m.cols();
    for mask in 1u64..1 << total {
        let rows: Vec<usize> = (0..m.rows()).filter(|&i| mask >> i & 1 == 1).collect();
        let cols: Vec<usize> = (0..m.cols()).filter(|&j| mask >> (m.rows() + j) & 1 == 1).collect();
        let rdeg = rows.iter().map(|&i| cols.iter().filter(|&&j| m.get(i, j)).count());
        let cdeg = cols.iter().map(|&j| rows.iter().filter(|&&i| m.get(i, j)).count());
        let min = rdeg.chain(cdeg).min().unwrap();
        best = best.max(min);
    }
    best
}

pub fn brute_squares(m: &BoolMatrix) -> u64 {
    let mut n = 0;
    for i in 0..m.rows() {
        for k in 0..m.rows() {
            for j in 0..m.cols() {
                for l in 0..m.cols() {
                    n += (m.get(i, j) && m.get(i, l) && m.get(k, j) && m.get(k, l)) as u64;
                }
            }
        }
    }
    n
}
