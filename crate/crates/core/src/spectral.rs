//! Dense real matrices, one-sided Jacobi SVD and Schatten norms.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Off-diagonal tolerance for a Jacobi rotation: a column pair is treated
/// as orthogonal once `|⟨a,b⟩| ≤ JACOBI_TOL·‖a‖‖b‖`.
const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 60;
/// Singular values below this fraction of `σ₁` are reported as zero.
const CLAMP_REL: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    m: usize,
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(m: usize, n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != m * n {
            return Err(Error::input(format!("{m}x{n} matrix needs {} entries, got {}", m * n, data.len())));
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::input(format!("non-finite entry at ({}, {})", k / n.max(1), k % n.max(1))));
        }
        Ok(RealMatrix { m, n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("ragged rows"));
        }
        Self::new(m, n, rows.concat())
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        RealMatrix { m, n, data: vec![0.0; m * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RealMatrix { m, n, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.m, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.m {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.m, self.n, other.m, other.n
            )));
        }
        let mut out = Self::zeros(self.m, other.n);
        for i in 0..self.m {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.n..(i + 1) * other.n];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.m, self.n, |i, j| self.get(i, j) + other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.m, self.n, |i, j| self.get(i, j) - other.get(i, j)))
    }

    pub fn scale(&self, c: f64) -> Self {
        RealMatrix { m: self.m, n: self.n, data: self.data.iter().map(|x| c * x).collect() }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::input(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.m, self.n, other.m, other.n
            )));
        }
        Ok(())
    }

    /// Entrywise product `A ∘ B`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.m, self.n, |i, j| self.get(i, j) * other.get(i, j)))
    }

    /// `A ⊗ B` with row `(i, i')` at `i·rows(B) + i'`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (p, q) = (other.m, other.n);
        Self::from_fn(self.m * p, self.n * q, |i, j| self.get(i / p, j / q) * other.get(i % p, j % q))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (m, n) = (self.m, self.n);
        Self::from_fn(m + other.m, n + other.n, |i, j| {
            if i < m && j < n {
                self.get(i, j)
            } else if i >= m && j >= n {
                other.get(i - m, j - n)
            } else {
                0.0
            }
        })
    }

    /// `diag(u) · A · diag(v)`, i.e. `A ∘ (u vᵀ)`.
    pub fn scale_rows_cols(&self, u: &[f64], v: &[f64]) -> Self {
        Self::from_fn(self.m, self.n, |i, j| u[i] * self.get(i, j) * v[j])
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    /// `ℓ₂` norms of the rows.
    pub fn row_norms(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.row(i).iter().map(|x| x * x).sum::<f64>().sqrt()).collect()
    }

    /// `ℓ₂` norms of the columns.
    pub fn col_norms(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.n];
        for i in 0..self.m {
            for (a, x) in acc.iter_mut().zip(self.row(i)) {
                *a += x * x;
            }
        }
        acc.into_iter().map(f64::sqrt).collect()
    }

    /// Largest row norm, `‖A‖_{2→∞}`.
    pub fn max_row_norm(&self) -> f64 {
        self.row_norms().into_iter().fold(0.0, f64::max)
    }

    /// Largest column norm, `‖A‖_{1→2}`.
    pub fn max_col_norm(&self) -> f64 {
        self.col_norms().into_iter().fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.m).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn svd(&self) -> Result<Svd> {
        if !self.is_finite() {
            return Err(Error::input("matrix has non-finite entries"));
        }
        Ok(jacobi_svd(self))
    }

    /// Singular values in descending order, `min(m, n)` of them.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        Ok(self.svd()?.s)
    }

    /// `(Σ σᵢᵖ)^{1/p}`; `p = ∞` gives the spectral norm.
    pub fn schatten_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::input(format!("Schatten exponent must be positive, got {p}")));
        }
        let s = self.singular_values()?;
        Ok(schatten_from_singular(&s, p))
    }

    pub fn trace_norm(&self) -> Result<f64> {
        self.schatten_norm(1.0)
    }
}

pub fn schatten_from_singular(s: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return s.first().copied().unwrap_or(0.0);
    }
    if p == 1.0 {
        return s.iter().sum();
    }
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0.0;
    }
    // scale by σ₁ to keep large p from overflowing
    top * s.iter().map(|x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RealMatrix {}x{}", self.m, self.n)?;
        for i in 0..self.m.min(16) {
            let cells: Vec<String> = self.row(i).iter().take(12).map(|x| format!("{x:9.4}")).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for RealMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.m))?;
        for i in 0..self.m {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// Thin SVD `A = U · diag(s) · Vᵀ` with `r = min(m, n)` columns in `U`, `V`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: RealMatrix,
    pub s: Vec<f64>,
    pub v: RealMatrix,
}

/// One-sided (Hestenes) Jacobi on the orientation whose column count is
/// `min(m, n)`: orthogonalize columns by plane rotations, then read the
/// singular values off the column norms.
fn jacobi_svd(a: &RealMatrix) -> Svd {
    let transposed = a.m < a.n;
    let (rows, k) = if transposed { (a.n, a.m) } else { (a.m, a.n) };
    let mut w: Vec<Vec<f64>> = (0..k)
        .map(|c| (0..rows).map(|r| if transposed { a.get(c, r) } else { a.get(r, c) }).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..k).map(|c| (0..k).map(|r| if r == c { 1.0 } else { 0.0 }).collect()).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let (alpha, beta, gamma) = {
                    let (wp, wq) = (&w[p], &w[q]);
                    let mut al = 0.0;
                    let mut be = 0.0;
                    let mut ga = 0.0;
                    for (x, y) in wp.iter().zip(wq) {
                        al += x * x;
                        be += y * y;
                        ga += x * y;
                    }
                    (al, be, ga)
                };
                if gamma == 0.0 || gamma.abs() <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sig: Vec<(f64, usize)> = w
        .iter()
        .enumerate()
        .map(|(c, col)| (col.iter().map(|x| x * x).sum::<f64>().sqrt(), c))
        .collect();
    sig.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let top = sig.first().map_or(0.0, |x| x.0);

    let mut left = RealMatrix::zeros(rows, k);
    let mut right = RealMatrix::zeros(k, k);
    let mut s = Vec::with_capacity(k);
    for (dst, &(sv, c)) in sig.iter().enumerate() {
        let clamped = if sv < CLAMP_REL * top { 0.0 } else { sv };
        s.push(clamped);
        if sv > 0.0 {
            for r in 0..rows {
                left.set(r, dst, w[c][r] / sv);
            }
        }
        for r in 0..k {
            right.set(r, dst, v[c][r]);
        }
    }
    if transposed {
        Svd { u: right, s, v: left }
    } else {
        Svd { u: left, s, v: right }
    }
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}
