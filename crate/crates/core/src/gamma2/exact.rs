//! Exact γ₂ at small scale.
//!
//! Uses the dual characterization
//! `γ₂(M) = max_{p ∈ Δₘ, q ∈ Δₙ} ‖D_p^{1/2} M D_q^{1/2}‖_tr`.
//! Every iterate `(p, q)` gives a lower bound (unit witness `u = √p`,
//! `v = √q`), and the SVD `A = PΣQᵀ` of the scaled matrix gives the
//! factorization `U = D_p^{-1/2} P Σ^{1/2}`, `V = Σ^{1/2} Qᵀ D_q^{-1/2}`,
//! whose value `2√(max g · max h)` with `gᵢ = (PΣPᵀ)ᵢᵢ / 2pᵢ`,
//! `hⱼ = (QΣQᵀ)ⱼⱼ / 2qⱼ` is an upper bound. The bounds meet exactly at the
//! optimum, where `g` and `h` are constant on the supports.
//!
//! The update `pᵢ ← pᵢ · gᵢ / (φ/2)` with `φ = ‖A‖_tr` keeps `p` on the
//! simplex (since `Σ pᵢgᵢ = φ/2`) and moves mass towards rows whose
//! factorization norm is too large. Iteration stops once the best upper
//! and lower bounds seen are within `tol`.

use super::cert::{Factor, FactorPart, FactorizationCert, WitnessCert};
use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::spectral::{RealMatrix, Svd};

pub const MAX_EXACT_DIM: usize = 32;
pub const DEFAULT_MAX_ITER: usize = 200_000;
const FLOOR_REL: f64 = 1e-16;

#[derive(Debug, Clone, Copy)]
pub struct ExactOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub max_dim: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { tol: 1e-6, max_iter: DEFAULT_MAX_ITER, max_dim: MAX_EXACT_DIM }
    }
}

impl ExactOptions {
    pub fn with_tol(tol: f64) -> Self {
        ExactOptions { tol, ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct ExactGamma2 {
    /// Midpoint of the certified bracket; within `tol` of γ₂.
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub witness: WitnessCert,
    pub factorization: FactorizationCert,
}

/// γ₂(M) to within `tol`.
pub fn exact_gamma2(m: &BoolMatrix, tol: f64) -> Result<f64> {
    Ok(exact_gamma2_certified(m, ExactOptions::with_tol(tol))?.value)
}

pub fn exact_gamma2_certified(m: &BoolMatrix, opts: ExactOptions) -> Result<ExactGamma2> {
    if !(1e-8..=1e-2).contains(&opts.tol) {
        return Err(Error::input(format!("tolerance {} outside [1e-8, 1e-2]", opts.tol)));
    }
    let small = m.rows().min(m.cols());
    if small > opts.max_dim {
        return Err(Error::Capability(format!(
            "exact γ₂ needs min(m, n) ≤ {}, got {}x{}",
            opts.max_dim,
            m.rows(),
            m.cols()
        )));
    }
    let (rows, cols) = m.support();
    if rows.is_empty() {
        let witness = WitnessCert::new(m, unit(m.rows(), 0), unit(m.cols(), 0))?;
        let factorization = super::bounds::upper_rowcol(m);
        return Ok(ExactGamma2 { value: 0.0, lower: 0.0, upper: 0.0, iterations: 0, witness, factorization });
    }
    let core = m.submatrix(&rows, &cols)?.to_real();
    let (r, c) = (rows.len(), cols.len());

    let mut p = vec![1.0 / r as f64; r];
    let mut q = vec![1.0 / c as f64; c];
    let mut best_lo = (f64::NEG_INFINITY, p.clone(), q.clone());
    let mut best_up: (f64, Option<(Vec<f64>, Vec<f64>, Svd)>) = (f64::INFINITY, None);
    let mut iterations = 0;

    while iterations < opts.max_iter {
        iterations += 1;
        let sp: Vec<f64> = p.iter().map(|x| x.sqrt()).collect();
        let sq: Vec<f64> = q.iter().map(|x| x.sqrt()).collect();
        let svd = core.scale_rows_cols(&sp, &sq).svd()?;
        let phi: f64 = svd.s.iter().sum();
        let g = diag_weight(&svd.u, &svd.s, &p);
        let h = diag_weight(&svd.v, &svd.s, &q);
        let gmax = g.iter().copied().fold(0.0, f64::max);
        let hmax = h.iter().copied().fold(0.0, f64::max);
        let up = 2.0 * (gmax * hmax).sqrt();

        if phi > best_lo.0 {
            best_lo = (phi, p.clone(), q.clone());
        }
        if up < best_up.0 {
            best_up = (up, Some((p.clone(), q.clone(), svd)));
        }
        if best_up.0 - best_lo.0 < opts.tol {
            break;
        }
        let half = phi / 2.0;
        for (pi, gi) in p.iter_mut().zip(&g) {
            *pi *= gi / half;
        }
        for (qj, hj) in q.iter_mut().zip(&h) {
            *qj *= hj / half;
        }
        floor_and_normalize(&mut p);
        floor_and_normalize(&mut q);
    }

    let gap = best_up.0 - best_lo.0;
    if gap >= opts.tol {
        return Err(Error::Convergence { iterations, lower: best_lo.0, upper: best_up.0, gap });
    }

    let u = embed_sqrt(&best_lo.1, &rows, m.rows());
    let v = embed_sqrt(&best_lo.2, &cols, m.cols());
    let witness = WitnessCert::new(m, u, v)?;
    let (bp, bq, bsvd) = best_up.1.expect("at least one iteration ran");
    let factorization = build_factorization(m, &rows, &cols, &bp, &bq, &bsvd)?;
    let lower = witness.value;
    let upper = factorization.value;
    if lower > upper + 1e-9 {
        return Err(Error::internal(format!("exact solver bracket inverted: {lower} > {upper}")));
    }
    Ok(ExactGamma2 { value: (lower + upper) / 2.0, lower, upper, iterations, witness, factorization })
}

/// `(W Σ Wᵀ)ᵢᵢ / (2 wᵢ)` for each row of the singular-vector matrix `W`.
fn diag_weight(w: &RealMatrix, s: &[f64], weight: &[f64]) -> Vec<f64> {
    (0..w.rows())
        .map(|i| {
            let d: f64 = w.row(i).iter().zip(s).map(|(x, sv)| x * x * sv).sum();
            d / (2.0 * weight[i])
        })
        .collect()
}

fn floor_and_normalize(p: &mut [f64]) {
    let top = p.iter().copied().fold(0.0, f64::max);
    for x in p.iter_mut() {
        if !(*x >= FLOOR_REL * top) {
            *x = FLOOR_REL * top;
        }
    }
    let sum: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= sum);
}

fn unit(len: usize, at: usize) -> Vec<f64> {
    let mut v = vec![0.0; len];
    v[at] = 1.0;
    v
}

fn embed_sqrt(w: &[f64], idx: &[usize], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    let norm = w.iter().sum::<f64>().sqrt();
    for (&k, &x) in idx.iter().zip(w) {
        out[k] = x.sqrt() / norm;
    }
    out
}

fn build_factorization(
    m: &BoolMatrix,
    rows: &[usize],
    cols: &[usize],
    p: &[f64],
    q: &[f64],
    svd: &Svd,
) -> Result<FactorizationCert> {
    let rank = svd.s.iter().filter(|&&s| s > 0.0).count().max(1);
    let mut u = RealMatrix::zeros(m.rows(), rank);
    let mut v = RealMatrix::zeros(rank, m.cols());
    for (a, &i) in rows.iter().enumerate() {
        for k in 0..rank {
            u.set(i, k, svd.u.get(a, k) * svd.s[k].sqrt() / p[a].sqrt());
        }
    }
    for (b, &j) in cols.iter().enumerate() {
        for k in 0..rank {
            v.set(k, j, svd.s[k].sqrt() * svd.v.get(b, k) / q[b].sqrt());
        }
    }
    let residual = m.to_real().sub(&u.matmul(&v)?)?;
    let mut parts = vec![FactorPart { u: Factor::Dense(u), v: Factor::Dense(v) }];
    if residual.max_abs_diff(&RealMatrix::zeros(m.rows(), m.cols()))? > 0.0 {
        let fix = if residual.max_col_norm() <= residual.max_row_norm() {
            FactorPart { u: Factor::Identity(m.rows()), v: Factor::Dense(residual) }
        } else {
            FactorPart { u: Factor::Dense(residual), v: Factor::Identity(m.cols()) }
        };
        parts.push(fix);
    }
    let cert = FactorizationCert::new(parts);
    cert.verify(m)?;
    Ok(cert)
}
