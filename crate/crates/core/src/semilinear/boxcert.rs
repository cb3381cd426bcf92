//! Polylogarithmic γ₂ certificates for point–box incidences.
//!
//! In one dimension, sort all coordinates so that `1[x > lo]` and
//! `1[x ≥ hi]` become entries of the lower-triangular all-ones matrix
//! `T = L·L`, where `L` is Toeplitz with the coefficients of
//! `(1 − z)^{-1/2}`. Then `1[lo < x < hi] = ⟨L[x, :], L[:, lo] − L[:, hi]⟩`.
//! A `d`-dimensional box is the entrywise product of its `d` intervals,
//! which tensors the factor rows and columns together.

use super::SemilinearInstance;
use crate::error::{Error, Result};
use crate::gamma2::{Factor, FactorizationCert};
use crate::spectral::RealMatrix;

/// Largest tensor rank materialized by [`box_factorization`].
const MAX_MATERIALIZED: usize = 1 << 18;

/// `cₖ = C(2k, k) / 4ᵏ` for `k < n`, so that `Σ_{i+j=k} cᵢcⱼ = 1`.
pub fn threshold_root(n: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n);
    let mut cur = 1.0;
    for k in 0..n {
        if k > 0 {
            cur *= (2 * k - 1) as f64 / (2 * k) as f64;
        }
        c.push(cur);
    }
    c
}

/// Per-dimension positions in the threshold order: points at `2a + 1`,
/// lower ends at `2b + 2`, upper ends at `2c + 1`, where `a, b, c` rank
/// the distinct coordinate values.
struct Axis {
    size: usize,
    row_pos: Vec<usize>,
    lo_pos: Vec<usize>,
    hi_pos: Vec<usize>,
}

fn axes(inst: &SemilinearInstance) -> Result<Vec<Axis>> {
    let d = inst.d1;
    if inst.d2 != 2 * d {
        return Err(Error::input(format!("box instance needs d2 = 2·d1, got d1={d}, d2={}", inst.d2)));
    }
    (0..d)
        .map(|k| {
            let mut vals: Vec<f64> = inst.v1.iter().map(|x| x[k]).collect();
            for b in &inst.v2 {
                if b[k] >= b[d + k] {
                    return Err(Error::input(format!("box with empty side in dimension {k}")));
                }
                vals.push(b[k]);
                vals.push(b[d + k]);
            }
            vals.sort_by(f64::total_cmp);
            vals.dedup();
            let rank = |v: f64| vals.binary_search_by(|p| p.total_cmp(&v)).expect("value present");
            Ok(Axis {
                size: 2 * vals.len() + 1,
                row_pos: inst.v1.iter().map(|x| 2 * rank(x[k]) + 1).collect(),
                lo_pos: inst.v2.iter().map(|b| 2 * rank(b[k]) + 2).collect(),
                hi_pos: inst.v2.iter().map(|b| 2 * rank(b[d + k]) + 1).collect(),
            })
        })
        .collect()
}

/// Column `L[:, p] − L[:, q]` for `p < q`.
fn interval_column(c: &[f64], size: usize, p: usize, q: usize) -> Vec<f64> {
    (0..size)
        .map(|r| {
            let a = if r >= p { c[r - p] } else { 0.0 };
            let b = if r >= q { c[r - q] } else { 0.0 };
            a - b
        })
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Value of the tensored threshold factorization, computed without
/// materializing it: `max_x Π_k ‖u_x^{(k)}‖ · max_box Π_k ‖w_box^{(k)}‖`.
pub fn box_factorization_value(inst: &SemilinearInstance) -> Result<f64> {
    let axes = axes(inst)?;
    let mut row = vec![1.0; inst.v1.len()];
    let mut col = vec![1.0; inst.v2.len()];
    for ax in &axes {
        let c = threshold_root(ax.size);
        let mut prefix = Vec::with_capacity(ax.size + 1);
        prefix.push(0.0);
        for x in &c {
            prefix.push(prefix.last().unwrap() + x * x);
        }
        for (r, &p) in row.iter_mut().zip(&ax.row_pos) {
            *r *= prefix[p + 1].sqrt();
        }
        for (j, w) in col.iter_mut().enumerate() {
            *w *= norm(&interval_column(&c, ax.size, ax.lo_pos[j], ax.hi_pos[j]));
        }
    }
    let rmax = row.into_iter().fold(0.0, f64::max);
    let cmax = col.into_iter().fold(0.0, f64::max);
    Ok(rmax * cmax)
}

/// The same factorization as explicit dense factors; only for small inputs.
pub fn box_factorization(inst: &SemilinearInstance) -> Result<FactorizationCert> {
    let axes = axes(inst)?;
    let rank: usize = axes.iter().map(|a| a.size).try_fold(1usize, |acc, s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    if rank > MAX_MATERIALIZED {
        return Err(Error::Capability(format!("tensor rank {rank} too large to materialize")));
    }
    let (m, n) = (inst.v1.len(), inst.v2.len());
    let mut u = RealMatrix::from_fn(m, 1, |_, _| 1.0);
    let mut v = RealMatrix::from_fn(1, n, |_, _| 1.0);
    for ax in &axes {
        let c = threshold_root(ax.size);
        let uk = RealMatrix::from_fn(m, ax.size, |i, j| {
            let p = ax.row_pos[i];
            if p >= j { c[p - j] } else { 0.0 }
        });
        let cols: Vec<Vec<f64>> = (0..n).map(|j| interval_column(&c, ax.size, ax.lo_pos[j], ax.hi_pos[j])).collect();
        let vk = RealMatrix::from_fn(ax.size, n, |r, j| cols[j][r]);
        u = row_tensor(&u, &uk);
        v = row_tensor(&v.transpose(), &vk.transpose()).transpose();
    }
    Ok(FactorizationCert::single(Factor::Dense(u), Factor::Dense(v)))
}

/// Row-wise Kronecker product: row `i` is `a[i, :] ⊗ b[i, :]`.
fn row_tensor(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let q = b.cols();
    RealMatrix::from_fn(a.rows(), a.cols() * q, |i, j| a.get(i, j / q) * b.get(i, j % q))
}
