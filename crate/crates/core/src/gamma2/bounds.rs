use std::collections::HashMap;

use super::cert::{Factor, FactorPart, FactorizationCert, SchattenBound, WitnessCert};
use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};

/// `(M, I)` or `(I, M)`, whichever is smaller: `√` of the least of the
/// maximum row and column one-counts.
pub fn upper_rowcol(m: &BoolMatrix) -> FactorizationCert {
    let rmax = m.row_degrees().into_iter().max().unwrap_or(0);
    let cmax = m.col_degrees().into_iter().max().unwrap_or(0);
    if rmax <= cmax {
        FactorizationCert::single(Factor::Boolean(m.clone()), Factor::Identity(m.cols()))
    } else {
        FactorizationCert::single(Factor::Identity(m.rows()), Factor::Boolean(m.clone()))
    }
}

/// Splits `M` along a degeneracy order into a row-sparse and a
/// column-sparse part and certifies each with [`upper_rowcol`].
pub fn upper_degeneracy(m: &BoolMatrix) -> FactorizationCert {
    let (m1, m2) = m.degeneracy().split(m);
    let parts: Vec<FactorPart> = [m1, m2]
        .iter()
        .filter(|p| !p.is_zero())
        .flat_map(|p| upper_rowcol(p).parts)
        .collect();
    if parts.is_empty() {
        return upper_rowcol(m);
    }
    FactorizationCert::new(parts)
}

/// Partition of the ones into rectangles `Aₖ × Bₖ`, one per distinct
/// nonzero row pattern (or column pattern, whichever scores lower).
///
/// With `U = [i ∈ Aₖ]` and `V = [j ∈ Bₖ]` the value is
/// `√(max rectangles per row) · √(max rectangles per column)`; a blocky
/// matrix scores exactly 1.
pub fn upper_rectangle_cover(m: &BoolMatrix) -> FactorizationCert {
    if m.is_zero() {
        return upper_rowcol(m);
    }
    let by_rows = row_pattern_cover(m);
    let by_cols = row_pattern_cover(&m.transpose());
    let by_cols = FactorizationCert::new(
        by_cols
            .parts
            .into_iter()
            .map(|p| FactorPart { u: transpose_factor(p.v), v: transpose_factor(p.u) })
            .collect(),
    );
    if by_cols.value < by_rows.value {
        by_cols
    } else {
        by_rows
    }
}

fn transpose_factor(f: Factor) -> Factor {
    match f {
        Factor::Identity(n) => Factor::Identity(n),
        Factor::Boolean(b) => Factor::Boolean(b.transpose()),
        Factor::Dense(d) => Factor::Dense(d.transpose()),
    }
}

fn row_pattern_cover(m: &BoolMatrix) -> FactorizationCert {
    let mut group_of: HashMap<&[u64], usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut member = Vec::new();
    for i in 0..m.rows() {
        if m.row_degree(i) == 0 {
            continue;
        }
        let k = *group_of.entry(m.row_words(i)).or_insert_with(|| {
            reps.push(i);
            reps.len() - 1
        });
        member.push((i, k));
    }
    let u = BoolMatrix::from_coords(m.rows(), reps.len(), &member).expect("in range");
    let v = BoolMatrix::from_fn(reps.len(), m.cols(), |k, j| m.get(reps[k], j)).expect("nonempty");
    FactorizationCert::single(Factor::Boolean(u), Factor::Boolean(v))
}

/// Uniform unit vectors: `‖M‖_tr / √(mn)`.
pub fn lower_avg(m: &BoolMatrix) -> Result<WitnessCert> {
    let u = vec![1.0 / (m.rows() as f64).sqrt(); m.rows()];
    let v = vec![1.0 / (m.cols() as f64).sqrt(); m.cols()];
    WitnessCert::new(m, u, v)
}

/// `u(i) = √(dᵢ/f)` over row degrees, `v` uniform.
pub fn lower_degree_weighted(m: &BoolMatrix) -> Result<WitnessCert> {
    let f = m.count_ones();
    if f == 0 {
        return Err(Error::input("no witness on zero matrix"));
    }
    let u = m.row_degrees().into_iter().map(|d| (d as f64 / f as f64).sqrt()).collect();
    let v = vec![1.0 / (m.cols() as f64).sqrt(); m.cols()];
    WitnessCert::new(m, u, v)
}

/// Column-side mirror of [`lower_degree_weighted`].
pub fn lower_degree_weighted_cols(m: &BoolMatrix) -> Result<WitnessCert> {
    let f = m.count_ones();
    if f == 0 {
        return Err(Error::input("no witness on zero matrix"));
    }
    let u = vec![1.0 / (m.rows() as f64).sqrt(); m.rows()];
    let v = m.col_degrees().into_iter().map(|d| (d as f64 / f as f64).sqrt()).collect();
    WitnessCert::new(m, u, v)
}

/// `γ₂(M) ≥ ‖M‖₂³ / (√(mn)·‖M‖₄²)`, with `‖M‖₄⁴` counted combinatorially.
pub fn lower_schatten(m: &BoolMatrix) -> Result<SchattenBound> {
    if m.is_zero() {
        return Err(Error::input("Schatten bound undefined on zero matrix"));
    }
    Ok(SchattenBound::compute(m.rows(), m.cols(), m.count_ones(), m.count_squares()))
}
