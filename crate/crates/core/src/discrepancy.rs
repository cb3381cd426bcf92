//! Exact combinatorial discrepancy for narrow matrices and hereditary
//! discrepancy probes.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::format::sig12_opt;
use crate::gamma2::best_bounds;
use crate::seed;

pub const MAX_DISC_COLS: usize = 24;
/// Number of leading sign bits fixed per parallel block.
const SPLIT_BITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscResult {
    pub value: usize,
    pub argmin: Vec<i8>,
}

impl DiscResult {
    /// `‖M x‖_∞` for the stored sign vector.
    pub fn recompute(&self, m: &BoolMatrix) -> usize {
        signed_max(m, &self.argmin)
    }
}

fn signed_max(m: &BoolMatrix, x: &[i8]) -> usize {
    (0..m.rows())
        .map(|i| m.row_support(i).map(|j| x[j] as i64).sum::<i64>().unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}

/// `min_{x ∈ {±1}ⁿ} ‖Mx‖_∞` by Gray-code enumeration.
///
/// `x₀ = +1` is fixed since `x` and `−x` score the same. The remaining
/// sign space is cut into blocks by its top bits and scanned in parallel;
/// ties resolve to the first vector in enumeration order.
pub fn disc_exact(m: &BoolMatrix) -> Result<DiscResult> {
    let n = m.cols();
    if n > MAX_DISC_COLS {
        return Err(Error::Capability(format!("exact discrepancy needs n ≤ {MAX_DISC_COLS}, got {n}")));
    }
    let t = m.transpose();
    let cols: Vec<Vec<usize>> = (0..n).map(|j| t.row_support(j).collect()).collect();
    let free = n - 1;
    let hi = free.min(SPLIT_BITS);
    let lo = free - hi;

    let best = (0u64..1 << hi)
        .into_par_iter()
        .map(|block| scan_block(m, &cols, block, hi, lo))
        .collect::<Vec<_>>()
        .into_iter()
        .min_by_key(|r| r.value)
        .expect("at least one block");
    Ok(best)
}

/// Coordinates `1..=lo` run through a Gray code; coordinates `lo+1..n` are
/// fixed by the bits of `block`.
fn scan_block(m: &BoolMatrix, cols: &[Vec<usize>], block: u64, hi: usize, lo: usize) -> DiscResult {
    let n = 1 + lo + hi;
    let mut x = vec![1i8; n];
    for b in 0..hi {
        if block >> b & 1 == 1 {
            x[1 + lo + b] = -1;
        }
    }
    let mut r: Vec<i64> = vec![0; m.rows()];
    for (j, col) in cols.iter().enumerate() {
        for &i in col {
            r[i] += x[j] as i64;
        }
    }
    let score = |r: &[i64]| r.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as usize;
    let mut best = DiscResult { value: score(&r), argmin: x.clone() };
    for k in 1u64..1 << lo {
        if best.value == 0 {
            break;
        }
        let j = 1 + k.trailing_zeros() as usize;
        let delta = -2 * x[j] as i64;
        x[j] = -x[j];
        for &i in &cols[j] {
            r[i] += delta;
        }
        let s = score(&r);
        if s < best.value {
            best = DiscResult { value: s, argmin: x.clone() };
        }
    }
    best
}

/// `max disc(N)` over `M` itself, `samples` random submatrices with
/// uniformly random nonempty row and column subsets, and a `1 × 1` probe
/// on a one entry. A lower bound on `herdisc(M)`.
pub fn herdisc_lower(m: &BoolMatrix, samples: usize, seed: u64) -> Result<usize> {
    let mut best = disc_exact(m)?.value;
    if let Some(&(i, j)) = m.coords().first() {
        best = best.max(disc_exact(&m.submatrix(&[i], &[j])?)?.value);
    }
    let mut rng = seed::rng(seed);
    for _ in 0..samples {
        let rows = nonempty_subset(&mut rng, m.rows());
        let cols = nonempty_subset(&mut rng, m.cols());
        best = best.max(disc_exact(&m.submatrix(&rows, &cols)?)?.value);
    }
    Ok(best)
}

fn nonempty_subset(rng: &mut seed::Rng, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MntReport {
    #[serde(serialize_with = "crate::format::sig12_str::serialize")]
    pub gamma2_lower: f64,
    #[serde(serialize_with = "crate::format::sig12_str::serialize")]
    pub gamma2_upper: f64,
    pub herdisc_lower: usize,
    /// `herdisc_lb / (γ₂_ub · √log₂ m)`.
    #[serde(with = "sig12_opt")]
    pub ratio_upper: Option<f64>,
    /// `γ₂_lb / (herdisc_lb · log₂ m)`.
    #[serde(with = "sig12_opt")]
    pub ratio_lower: Option<f64>,
}

/// γ₂ bounds against the hereditary discrepancy probe; logs use
/// `log₂ max(m, 2)`.
pub fn mnt_report(m: &BoolMatrix, samples: usize, seed: u64) -> Result<MntReport> {
    let b = best_bounds(m, false)?;
    let h = herdisc_lower(m, samples, seed)?;
    let lg = (m.rows().max(2) as f64).log2();
    let ratio = |num: f64, den: f64| (den > 0.0).then(|| num / den);
    Ok(MntReport {
        gamma2_lower: b.lower,
        gamma2_upper: b.upper,
        herdisc_lower: h,
        ratio_upper: ratio(h as f64, b.upper * lg.sqrt()),
        ratio_lower: ratio(b.lower, h as f64 * lg),
    })
}
