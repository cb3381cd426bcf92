//! Regularization, biregular certificates and dense square submatrices.

use rand::seq::index::sample;
use serde::Serialize;

use crate::boolmat::{BoolMatrix, DensityMode, Side};
use crate::error::{Error, Result};
use crate::format::sig12_str;
use crate::gamma2::best_upper;
use crate::seed;

const EPS: f64 = 1e-9;
/// Random draws tried before the greedy fallback.
const SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularizedSubmatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "sig12_str")]
    pub d_prime: f64,
    /// Side whose ones-counts are at most `6·d_prime`.
    pub bounded_side: Side,
    /// Density of the first extracted subgraph.
    #[serde(with = "sig12_str")]
    pub d0: f64,
    pub mode: DensityMode,
}

impl RegularizedSubmatrix {
    /// Re-checks every stated inequality against `m`.
    ///
    /// In greedy mode `d′ ≥ d/3` is not guaranteed, and the bounded side is
    /// only held to `2·d0`.
    pub fn verify(&self, m: &BoolMatrix) -> Result<()> {
        let n = m.submatrix(&self.rows, &self.cols)?;
        let fail = |what: String| Err(Error::internal(format!("regularized submatrix: {what}")));
        let avg = n.avg_degree();
        if avg < self.d_prime - EPS {
            return fail(format!("average degree {avg} below d' = {}", self.d_prime));
        }
        let min_deg = n.row_degrees().into_iter().chain(n.col_degrees()).min().unwrap_or(0);
        if (min_deg as f64) < self.d_prime / 2.0 - EPS {
            return fail(format!("minimum degree {min_deg} below d'/2"));
        }
        let bounded = match self.bounded_side {
            Side::Row => n.row_degrees(),
            Side::Col => n.col_degrees(),
        };
        let max_bounded = bounded.into_iter().max().unwrap_or(0) as f64;
        match self.mode {
            DensityMode::Exact => {
                if self.d_prime < m.avg_degree() / 3.0 - EPS {
                    return fail(format!("d' = {} below d/3", self.d_prime));
                }
                if max_bounded > 6.0 * self.d_prime + EPS {
                    return fail(format!("bounded side has {max_bounded} ones, above 6d'"));
                }
            }
            DensityMode::Greedy => {
                if max_bounded > 2.0 * self.d0 + EPS {
                    return fail(format!("bounded side has {max_bounded} ones, above 2·d0"));
                }
            }
        }
        Ok(())
    }
}

/// Dense subgraph, strip high-degree vertices from its larger side, then
/// take the densest subgraph of what is left.
pub fn regularize(m: &BoolMatrix) -> Result<RegularizedSubmatrix> {
    regularize_with(m, DensityMode::Exact)
}

pub fn regularize_with(m: &BoolMatrix, mode: DensityMode) -> Result<RegularizedSubmatrix> {
    if m.is_zero() {
        return Err(Error::input("cannot regularize a zero matrix"));
    }
    let g0 = m.densest_subgraph(mode)?;
    let n0 = m.submatrix(&g0.rows, &g0.cols)?;
    let limit = 2.0 * g0.density;
    let side = if g0.rows.len() >= g0.cols.len() { Side::Row } else { Side::Col };
    let (rows1, cols1): (Vec<usize>, Vec<usize>) = match side {
        Side::Row => {
            let keep = (0..n0.rows()).filter(|&i| n0.row_degree(i) as f64 <= limit).map(|i| g0.rows[i]);
            (keep.collect(), g0.cols.clone())
        }
        Side::Col => {
            let keep = (0..n0.cols()).filter(|&j| n0.col_degree(j) as f64 <= limit).map(|j| g0.cols[j]);
            (g0.rows.clone(), keep.collect())
        }
    };
    let n1 = m.submatrix(&rows1, &cols1)?;
    let g1 = n1.densest_subgraph(mode)?;
    let out = RegularizedSubmatrix {
        rows: g1.rows.iter().map(|&i| rows1[i]).collect(),
        cols: g1.cols.iter().map(|&j| cols1[j]).collect(),
        d_prime: g1.density,
        bounded_side: side,
        d0: g0.density,
        mode,
    };
    out.verify(m)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiregularCert {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "sig12_str")]
    pub p: f64,
    #[serde(with = "sig12_str")]
    pub q: f64,
    #[serde(with = "sig12_str")]
    pub d: f64,
    pub a: usize,
    pub b: usize,
    /// When set, the biregular matrix is `M[rows, cols]ᵀ`.
    pub transposed: bool,
}

impl BiregularCert {
    /// The certified matrix, oriented.
    pub fn matrix(&self, m: &BoolMatrix) -> Result<BoolMatrix> {
        let n = m.submatrix(&self.rows, &self.cols)?;
        Ok(if self.transposed { n.transpose() } else { n })
    }

    pub fn verify(&self, m: &BoolMatrix) -> Result<()> {
        let n = self.matrix(m)?;
        check_biregular(&n, self.p, self.q, self.d, self.a, self.b)
            .map_err(|e| Error::internal(format!("biregular certificate: {e}")))
    }
}

fn check_biregular(n: &BoolMatrix, p: f64, q: f64, d: f64, a: usize, b: usize) -> std::result::Result<(), String> {
    if a as f64 <= d || b as f64 <= d {
        return Err(format!("a={a}, b={b} must exceed d={d}"));
    }
    if n.row_degrees().into_iter().any(|r| r > a) {
        return Err(format!("a row has more than a={a} ones"));
    }
    if n.col_degrees().into_iter().any(|c| c > b) {
        return Err(format!("a column has more than b={b} ones"));
    }
    let ones = n.count_ones() as f64;
    let need = (p * (a * n.rows()) as f64).max(q * (b * n.cols()) as f64);
    if ones < need - EPS {
        return Err(format!("{ones} ones, need {need}"));
    }
    Ok(())
}

/// A `(1/2, 1/(12 log₂(m+n)), d/2)`-biregular submatrix (possibly transposed),
/// where `d` is the average degree of `m`.
///
/// Columns of the regularized submatrix are bucketed by ones-count into
/// dyadic ranges; a bucket carrying enough of the ones gives the candidate.
/// Candidates are checked directly, so any of them that passes is returned.
pub fn biregularize(m: &BoolMatrix) -> Result<BiregularCert> {
    if m.is_zero() {
        return Err(Error::input("cannot biregularize a zero matrix"));
    }
    let reg = regularize(m)?;
    let p = 0.5;
    let q = 1.0 / (12.0 * ((m.rows() + m.cols()) as f64).log2().max(1.0));
    let d = m.avg_degree() / 2.0;

    // Orient so that the unbounded side is bucketed and ends up as rows.
    let transposed = reg.bounded_side == Side::Row;
    let mut candidates: Vec<(Vec<usize>, Vec<usize>, bool)> = Vec::new();
    for t in [transposed, !transposed] {
        for (rows, cols) in bucket_candidates(m, &reg.rows, &reg.cols, t)? {
            candidates.push((rows, cols, t));
        }
        candidates.push((reg.rows.clone(), reg.cols.clone(), t));
    }
    let (all_r, all_c) = m.support();
    candidates.push((all_r.clone(), all_c.clone(), false));
    candidates.push((all_r, all_c, true));

    for (rows, cols, t) in candidates {
        let sub = m.submatrix(&rows, &cols)?;
        let n = if t { sub.transpose() } else { sub };
        let a = n.row_degrees().into_iter().max().unwrap_or(0).max(d.floor() as usize + 1);
        let b = n.col_degrees().into_iter().max().unwrap_or(0).max(d.floor() as usize + 1);
        if check_biregular(&n, p, q, d, a, b).is_ok() {
            let cert = BiregularCert { rows, cols, p, q, d, a, b, transposed: t };
            cert.verify(m)?;
            return Ok(cert);
        }
    }
    Err(Error::internal("no biregular submatrix found"))
}

/// Dyadic buckets of the side that becomes the rows of the oriented
/// matrix, heaviest first among those holding at least a `1/log₂` share of
/// the ones, then the rest by mass. Zero lines are dropped.
fn bucket_candidates(
    m: &BoolMatrix,
    rows: &[usize],
    cols: &[usize],
    transposed: bool,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let sub = m.submatrix(rows, cols)?;
    // lines to bucket: columns when transposed (they become rows)
    let (lines, other, degs): (&[usize], &[usize], Vec<usize>) =
        if transposed { (cols, rows, sub.col_degrees()) } else { (rows, cols, sub.row_degrees()) };
    let total = sub.count_ones() as f64;
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for (k, &deg) in degs.iter().enumerate() {
        if deg == 0 {
            continue;
        }
        let t = usize::BITS as usize - (deg - 1).leading_zeros() as usize; // deg ∈ (2^{t-1}, 2^t]
        if buckets.len() <= t {
            buckets.resize(t + 1, Vec::new());
        }
        buckets[t].push(k);
    }
    let share = 1.0 / (lines.len().max(2) as f64).log2();
    let mut ranked: Vec<(bool, usize, f64, Vec<usize>)> = buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| {
            let mass: usize = b.iter().map(|&k| degs[k]).sum();
            let heavy = mass as f64 >= share * total - EPS;
            let density = mass as f64 / b.len() as f64;
            (heavy, mass, density, b)
        })
        .collect();
    ranked.sort_by(|x, y| y.0.cmp(&x.0).then(y.2.total_cmp(&x.2)).then(y.1.cmp(&x.1)));

    Ok(ranked
        .into_iter()
        .map(|(_, _, _, b)| {
            let picked: Vec<usize> = b.iter().map(|&k| lines[k]).collect();
            // keep only lines of the other side that meet the bucket
            let keep: Vec<usize> = if transposed {
                other.iter().copied().filter(|&i| picked.iter().any(|&j| m.get(i, j))).collect()
            } else {
                other.iter().copied().filter(|&j| picked.iter().any(|&i| m.get(i, j))).collect()
            };
            if transposed { (keep, picked) } else { (picked, keep) }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseSubmatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub ones: usize,
    /// `ones / z`, the average degree of the `z × z` submatrix.
    #[serde(with = "sig12_str")]
    pub density: f64,
    #[serde(with = "sig12_str")]
    pub alpha: f64,
    #[serde(with = "sig12_str")]
    pub gamma2_upper: f64,
    /// Largest `z` admitted by `z ≤ α·d`.
    pub max_feasible_z: usize,
    /// Whether `z` met the precondition.
    pub guaranteed: bool,
}

/// A `z × z` submatrix of average degree at least `α·z`, where
/// `α = 1/(200·γ²·log₂(m+n))` with `γ` the certified γ₂ upper bound.
///
/// Requires `z ≤ α·d`; larger `z` is a capability error.
pub fn dense_submatrix(m: &BoolMatrix, z: usize, seed: u64) -> Result<DenseSubmatrix> {
    extract(m, z, seed, true)
}

/// Same pipeline without the precondition; the output is still checked
/// against `α·z`.
pub fn dense_submatrix_best_effort(m: &BoolMatrix, z: usize, seed: u64) -> Result<DenseSubmatrix> {
    extract(m, z, seed, false)
}

fn extract(m: &BoolMatrix, z: usize, seed: u64, strict: bool) -> Result<DenseSubmatrix> {
    if m.is_zero() {
        return Err(Error::input("zero matrix has no dense submatrix"));
    }
    if z == 0 || z > m.rows() || z > m.cols() {
        return Err(Error::input(format!("z={z} must lie in 1..=min({}, {})", m.rows(), m.cols())));
    }
    let (cert, _) = best_upper(m)?;
    let gamma = cert.value;
    let alpha = 1.0 / (200.0 * gamma * gamma * ((m.rows() + m.cols()) as f64).log2().max(1.0));
    let bound = alpha * m.avg_degree();
    let max_feasible_z = bound.floor() as usize;
    let guaranteed = z as f64 <= bound;
    if strict && !guaranteed {
        return Err(Error::Capability(format!(
            "z={z} exceeds the guarantee z ≤ α·d = {bound:.6}; max feasible z is {max_feasible_z}"
        )));
    }
    let target = alpha * z as f64;

    let (rows, cols) = if z == 1 {
        let (i, j) = m.coords()[0];
        (vec![i], vec![j])
    } else {
        let mut best = candidate_from_biregular(m, z, gamma, seed)?;
        if best.as_ref().is_none_or(|(r, c)| ones_in(m, r, c) as f64 / (z as f64) < target - EPS) {
            let g = greedy(m, &(0..m.rows()).collect::<Vec<_>>(), &(0..m.cols()).collect::<Vec<_>>(), z);
            if best.as_ref().is_none_or(|(r, c)| ones_in(m, &g.0, &g.1) > ones_in(m, r, c)) {
                best = Some(g);
            }
        }
        best.expect("candidate present")
    };
    let ones = ones_in(m, &rows, &cols);
    let density = ones as f64 / z as f64;
    if density < target - EPS || density > z as f64 + EPS {
        return Err(Error::internal(format!("extracted density {density} outside [α·z, z] = [{target}, {z}]")));
    }
    Ok(DenseSubmatrix { rows, cols, ones, density, alpha, gamma2_upper: gamma, max_feasible_z, guaranteed })
}

fn ones_in(m: &BoolMatrix, rows: &[usize], cols: &[usize]) -> usize {
    rows.iter().map(|&i| cols.iter().filter(|&&j| m.get(i, j)).count()).sum()
}

/// Inner step on the biregular certificate: the row in most squares, its
/// neighbourhood `J`, the rows with at least `x` ones in `J`, then seeded
/// sampling against the expected density and a greedy fallback.
fn candidate_from_biregular(m: &BoolMatrix, z: usize, gamma: f64, seed: u64) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let cert = biregularize(m)?;
    let n = cert.matrix(m)?;
    // original indices of the oriented matrix's rows and columns
    let (n_rows, n_cols) =
        if cert.transposed { (&cert.cols, &cert.rows) } else { (&cert.rows, &cert.cols) };
    let i0 = (0..n.rows()).max_by_key(|&i| (n.squares_at_row(i), std::cmp::Reverse(i))).expect("nonzero");
    let j_set: Vec<usize> = n.row_support(i0).collect();
    let x = cert.p * cert.p * cert.q * cert.a as f64 / (2.0 * gamma * gamma);
    let heavy: Vec<usize> = (0..n.rows())
        .filter(|&i| j_set.iter().filter(|&&j| n.get(i, j)).count() as f64 >= x)
        .collect();
    if heavy.len() < z || j_set.len() < z {
        return Ok(None);
    }
    let orient = |r: Vec<usize>, c: Vec<usize>| -> (Vec<usize>, Vec<usize>) {
        let mut r: Vec<usize> = r.into_iter().map(|i| n_rows[i]).collect();
        let mut c: Vec<usize> = c.into_iter().map(|j| n_cols[j]).collect();
        r.sort_unstable();
        c.sort_unstable();
        if cert.transposed { (c, r) } else { (r, c) }
    };
    // expected ones of a uniform draw: z²·x/|J|
    let expect = (z * z) as f64 * x / j_set.len() as f64;
    let mut rng = seed::rng(seed);
    for _ in 0..SAMPLES {
        let r: Vec<usize> = sample(&mut rng, heavy.len(), z).into_iter().map(|k| heavy[k]).collect();
        let c: Vec<usize> = sample(&mut rng, j_set.len(), z).into_iter().map(|k| j_set[k]).collect();
        let ones: usize = r.iter().map(|&i| c.iter().filter(|&&j| n.get(i, j)).count()).sum();
        if ones as f64 >= expect - EPS {
            return Ok(Some(orient(r, c)));
        }
    }
    let (r, c) = greedy(&n, &heavy, &j_set, z);
    Ok(Some(orient(r, c)))
}

/// `z` rows with the most ones in `cols`, then the `z` columns with the
/// most ones among those rows. Ties go to lower indices.
fn greedy(m: &BoolMatrix, rows: &[usize], cols: &[usize], z: usize) -> (Vec<usize>, Vec<usize>) {
    let mut r: Vec<usize> = rows.to_vec();
    r.sort_by_key(|&i| (std::cmp::Reverse(cols.iter().filter(|&&j| m.get(i, j)).count()), i));
    r.truncate(z);
    let mut c: Vec<usize> = cols.to_vec();
    c.sort_by_key(|&j| (std::cmp::Reverse(r.iter().filter(|&&i| m.get(i, j)).count()), j));
    c.truncate(z);
    r.sort_unstable();
    c.sort_unstable();
    (r, c)
}
