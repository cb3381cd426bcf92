use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::format::{sig12, sig12_str};
use crate::spectral::RealMatrix;

/// Entry tolerance when checking that a factorization reproduces its target.
pub const SUM_TOL: f64 = 1e-9;
/// Tolerance on the unit-norm condition of witness vectors.
pub const UNIT_TOL: f64 = 1e-9;

/// One side of a factorization part. Identity and Boolean factors are kept
/// symbolic so that large row/column certificates stay cheap.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Identity(usize),
    Boolean(BoolMatrix),
    Dense(RealMatrix),
}

impl Factor {
    pub fn rows(&self) -> usize {
        match self {
            Factor::Identity(n) => *n,
            Factor::Boolean(b) => b.rows(),
            Factor::Dense(d) => d.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Factor::Identity(n) => *n,
            Factor::Boolean(b) => b.cols(),
            Factor::Dense(d) => d.cols(),
        }
    }

    pub fn max_row_norm(&self) -> f64 {
        match self {
            Factor::Identity(n) => (*n > 0) as u8 as f64,
            Factor::Boolean(b) => (b.row_degrees().into_iter().max().unwrap_or(0) as f64).sqrt(),
            Factor::Dense(d) => d.max_row_norm(),
        }
    }

    pub fn max_col_norm(&self) -> f64 {
        match self {
            Factor::Identity(n) => (*n > 0) as u8 as f64,
            Factor::Boolean(b) => (b.col_degrees().into_iter().max().unwrap_or(0) as f64).sqrt(),
            Factor::Dense(d) => d.max_col_norm(),
        }
    }

    pub fn to_real(&self) -> RealMatrix {
        match self {
            Factor::Identity(n) => RealMatrix::identity(*n),
            Factor::Boolean(b) => b.to_real(),
            Factor::Dense(d) => d.clone(),
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Factor::Dense(d) => d.is_finite(),
            _ => true,
        }
    }

    /// `self · other`, skipping identity multiplications.
    fn product(&self, other: &Factor) -> Result<RealMatrix> {
        if self.cols() != other.rows() {
            return Err(Error::input(format!(
                "factor shapes {}x{} and {}x{} do not chain",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        match (self, other) {
            (Factor::Identity(_), x) | (x, Factor::Identity(_)) => Ok(x.to_real()),
            (a, b) => a.to_real().matmul(&b.to_real()),
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            Factor::Identity(n) => map.serialize_entry("identity", n)?,
            Factor::Boolean(b) => map.serialize_entry("boolean", b)?,
            Factor::Dense(d) => map.serialize_entry("dense", d)?,
        }
        map.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorPart {
    pub u: Factor,
    pub v: Factor,
}

impl FactorPart {
    pub fn value(&self) -> f64 {
        self.u.max_row_norm() * self.v.max_col_norm()
    }
}

/// `M = Σ Uₖ Vₖ`, certifying `γ₂(M) ≤ Σ ‖Uₖ‖_row · ‖Vₖ‖_col`.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationCert {
    pub parts: Vec<FactorPart>,
    #[serde(with = "sig12_str")]
    pub value: f64,
}

impl FactorizationCert {
    pub fn new(parts: Vec<FactorPart>) -> Self {
        let value = parts.iter().map(FactorPart::value).sum();
        FactorizationCert { parts, value }
    }

    pub fn single(u: Factor, v: Factor) -> Self {
        Self::new(vec![FactorPart { u, v }])
    }

    /// Recomputes the value from the raw factors, ignoring the stored one.
    pub fn recompute_value(&self) -> f64 {
        self.parts.iter().map(FactorPart::value).sum()
    }

    /// Checks that the parts sum to `target` and returns the recomputed value.
    pub fn verify(&self, target: &BoolMatrix) -> Result<f64> {
        let (m, n) = (target.rows(), target.cols());
        let mut acc = RealMatrix::zeros(m, n);
        for (k, part) in self.parts.iter().enumerate() {
            if part.u.rows() != m || part.v.cols() != n {
                return Err(Error::internal(format!("part {k} has outer shape {}x{}, target is {m}x{n}", part.u.rows(), part.v.cols())));
            }
            if !part.u.is_finite() || !part.v.is_finite() {
                return Err(Error::internal(format!("part {k} has non-finite entries")));
            }
            acc = acc.add(&part.u.product(&part.v)?)?;
        }
        let err = acc.max_abs_diff(&target.to_real())?;
        if err > SUM_TOL {
            return Err(Error::internal(format!("factorization misses target by {err:e}")));
        }
        Ok(self.recompute_value())
    }
}

/// Unit vectors `u`, `v` with `γ₂(M) ≥ ‖M ∘ u vᵀ‖_tr`.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessCert {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    #[serde(with = "sig12_str")]
    pub value: f64,
}

impl WitnessCert {
    pub fn new(target: &BoolMatrix, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let value = witness_value(target, &u, &v)?;
        Ok(WitnessCert { u, v, value })
    }

    pub fn verify(&self, target: &BoolMatrix) -> Result<f64> {
        for (name, w) in [("u", &self.u), ("v", &self.v)] {
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_TOL {
                return Err(Error::internal(format!("witness {name} has norm {norm}")));
            }
        }
        witness_value(target, &self.u, &self.v)
    }
}

fn witness_value(target: &BoolMatrix, u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != target.rows() || v.len() != target.cols() {
        return Err(Error::input(format!(
            "witness lengths {}/{} do not match {}x{}",
            u.len(),
            v.len(),
            target.rows(),
            target.cols()
        )));
    }
    target.to_real().scale_rows_cols(u, v).trace_norm()
}

/// Lower bound `‖M‖₂³ / (√(mn)·‖M‖₄²)` from the number of ones and squares.
#[derive(Debug, Clone, Serialize)]
pub struct SchattenBound {
    pub m: usize,
    pub n: usize,
    pub ones: usize,
    pub squares: u64,
    #[serde(with = "sig12_str")]
    pub value: f64,
}

impl SchattenBound {
    pub fn compute(m: usize, n: usize, ones: usize, squares: u64) -> Self {
        let value = if squares == 0 {
            0.0
        } else {
            (ones as f64).powf(1.5) / (((m * n) as f64).sqrt() * (squares as f64).sqrt())
        };
        SchattenBound { m, n, ones, squares, value }
    }

    pub fn verify(&self, target: &BoolMatrix) -> Result<f64> {
        let fresh = SchattenBound::compute(target.rows(), target.cols(), target.count_ones(), target.count_squares());
        if fresh.ones != self.ones || fresh.squares != self.squares {
            return Err(Error::internal("Schatten datum does not match target"));
        }
        Ok(fresh.value)
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LowerCert {
    Witness(WitnessCert),
    Schatten(SchattenBound),
}

impl LowerCert {
    pub fn value(&self) -> f64 {
        match self {
            LowerCert::Witness(w) => w.value,
            LowerCert::Schatten(s) => s.value,
        }
    }

    pub fn verify(&self, target: &BoolMatrix) -> Result<f64> {
        match self {
            LowerCert::Witness(w) => w.verify(target),
            LowerCert::Schatten(s) => s.verify(target),
        }
    }
}

impl std::fmt::Display for FactorizationCert {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} part(s), value {}", self.parts.len(), sig12(self.value))
    }
}
