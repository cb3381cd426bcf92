//! Bit-packed Boolean matrices, viewed interchangeably as bipartite graphs.
//!
//! Row `i` and column `j` are the two vertex classes; cell `(i, j)` is an
//! edge. Rows are stored as 64-bit words so that row-pair intersections
//! reduce to word-AND plus popcount.

mod bmx;
mod degeneracy;
mod density;

pub use bmx::{parse_bmx, read_bmx, write_bmx};
pub use degeneracy::{DegeneracyResult, Side, Vertex};
pub use density::{DensestSubgraph, DensityMode};

use std::fmt;

use rand::Rng;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::spectral::RealMatrix;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    m: usize,
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    /// All-zero `m × n` matrix.
    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::input(format!("matrix dimensions must be positive, got {m}x{n}")));
        }
        let words = n.div_ceil(WORD);
        Ok(BoolMatrix { m, n, words, bits: vec![0; m * words] })
    }

    pub fn from_coords(m: usize, n: usize, coords: &[(usize, usize)]) -> Result<Self> {
        let mut out = Self::zeros(m, n)?;
        for &(i, j) in coords {
            if i >= m || j >= n {
                return Err(Error::input(format!(
                    "coordinate ({i}, {j}) out of range for {m}x{n} matrix"
                )));
            }
            out.set(i, j);
        }
        Ok(out)
    }

    /// Builds a matrix from dense rows of 0/1 values. Any nonzero byte is a one.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = Self::zeros(m, n)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::input(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.set(i, j);
                }
            }
        }
        Ok(out)
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut out = Self::zeros(m, n)?;
        for i in 0..m {
            for j in 0..n {
                if f(i, j) {
                    out.set(i, j);
                }
            }
        }
        Ok(out)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| i == j)
    }

    /// The all-ones matrix `J`.
    pub fn all_ones(m: usize, n: usize) -> Result<Self> {
        Self::from_fn(m, n, |_, _| true)
    }

    /// Each cell set independently with probability `density`, row-major
    /// from one seeded stream.
    pub fn random(m: usize, n: usize, density: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::input(format!("density must lie in [0, 1], got {density}")));
        }
        let mut rng = crate::seed::rng(seed);
        Self::from_fn(m, n, |_, _| rng.random_bool(density))
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / WORD] |= 1u64 << (j % WORD);
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
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.m && j < self.n);
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    /// Packed words of row `i`; bits past column `n` are always zero.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn row_degree(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_degree(&self, j: usize) -> usize {
        (0..self.m).filter(|&i| self.get(i, j)).count()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.m).map(|i| self.row_degree(i)).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for i in 0..self.m {
            for j in self.row_support(i) {
                deg[j] += 1;
            }
        }
        deg
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bit_iter(self.row_words(i))
    }

    /// All one-cells in ascending row-major order.
    pub fn coords(&self) -> Vec<(usize, usize)> {
        (0..self.m).flat_map(|i| self.row_support(i).map(move |j| (i, j))).collect()
    }

    /// Number of common one-columns of rows `a` and `b`.
    #[inline]
    pub fn row_intersection(&self, a: usize, b: usize) -> usize {
        self.row_words(a)
            .iter()
            .zip(self.row_words(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n, self.m).expect("nonzero dims");
        for i in 0..self.m {
            for j in self.row_support(i) {
                out.set(j, i);
            }
        }
        out
    }

    /// Induced submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.m) {
            return Err(Error::input(format!("row index {i} out of range ({} rows)", self.m)));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.n) {
            return Err(Error::input(format!("column index {j} out of range ({} columns)", self.n)));
        }
        Self::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a], cols[b]))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (m, n) = (self.m, self.n);
        Self::from_fn(m + other.m, n + other.n, |i, j| {
            if i < m && j < n {
                self.get(i, j)
            } else if i >= m && j >= n {
                other.get(i - m, j - n)
            } else {
                false
            }
        })
        .expect("nonzero dims")
    }

    /// Kronecker product; row `(i, i')` is `i * other.rows() + i'`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (p, q) = (other.m, other.n);
        Self::from_fn(self.m * p, self.n * q, |i, j| {
            self.get(i / p, j / q) && other.get(i % p, j % q)
        })
        .expect("nonzero dims")
    }

    /// `J − M`.
    pub fn complement(&self) -> Self {
        Self::from_fn(self.m, self.n, |i, j| !self.get(i, j)).expect("nonzero dims")
    }

    pub fn to_real(&self) -> RealMatrix {
        RealMatrix::from_fn(self.m, self.n, |i, j| if self.get(i, j) { 1.0 } else { 0.0 })
    }

    /// `2·ones / (m + n)`, the average degree of the bipartite graph.
    pub fn avg_degree(&self) -> f64 {
        2.0 * self.count_ones() as f64 / (self.m + self.n) as f64
    }

    /// True iff no two rows share two or more one-columns.
    pub fn is_four_cycle_free(&self) -> bool {
        for a in 0..self.m {
            for b in a + 1..self.m {
                if self.row_intersection(a, b) >= 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Searches for `t` rows and `t` columns spanning an all-ones submatrix.
    ///
    /// Exact branch-and-bound: rows of degree `< t` are discarded, the rest
    /// are tried in decreasing degree order while the running column
    /// intersection keeps at least `t` members. Returns the witness
    /// `(rows, cols)`, both ascending, or `None`.
    pub fn has_allones_submatrix(&self, t: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        if t == 0 {
            return Some((vec![], vec![]));
        }
        if t > self.m.min(self.n) {
            return None;
        }
        let mut cand: Vec<usize> = (0..self.m).filter(|&i| self.row_degree(i) >= t).collect();
        if cand.len() < t {
            return None;
        }
        cand.sort_by_key(|&i| (std::cmp::Reverse(self.row_degree(i)), i));
        let mut chosen = Vec::with_capacity(t);
        let full = vec![u64::MAX; self.words];
        if self.kst_search(&cand, 0, t, &full, &mut chosen) {
            let mut rows = chosen.clone();
            rows.sort_unstable();
            let mut common = full;
            for &r in &rows {
                for (c, w) in common.iter_mut().zip(self.row_words(r)) {
                    *c &= w;
                }
            }
            let cols: Vec<usize> = bit_iter(&common).take(t).collect();
            return Some((rows, cols));
        }
        None
    }

    fn kst_search(
        &self,
        cand: &[usize],
        start: usize,
        t: usize,
        common: &[u64],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == t {
            return true;
        }
        let need = t - chosen.len();
        for k in start..cand.len() {
            if cand.len() - k < need {
                return false;
            }
            let r = cand[k];
            let next: Vec<u64> = common.iter().zip(self.row_words(r)).map(|(a, b)| a & b).collect();
            let cnt: usize = next.iter().map(|w| w.count_ones() as usize).sum();
            if cnt < t {
                continue;
            }
            chosen.push(r);
            if self.kst_search(cand, k + 1, t, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Number of 4-tuples `(i, i', j, j')` whose four cells are all one.
    ///
    /// Equals `Σ_{i,i'} |N(i) ∩ N(i')|²`, i.e. the Schatten-4 norm to the
    /// fourth power of the real lift.
    pub fn count_squares(&self) -> u64 {
        let mut total = 0u64;
        for a in 0..self.m {
            let d = self.row_degree(a) as u64;
            total += d * d;
            for b in a + 1..self.m {
                let c = self.row_intersection(a, b) as u64;
                total += 2 * c * c;
            }
        }
        total
    }

    /// Squares whose first coordinate is row `i`: `Σ_{i'} |N(i) ∩ N(i')|²`.
    pub fn squares_at_row(&self, i: usize) -> u64 {
        (0..self.m)
            .map(|b| {
                let c = self.row_intersection(i, b) as u64;
                c * c
            })
            .sum()
    }

    /// Rank over the rationals.
    ///
    /// Computed as the maximum of the ranks modulo two large primes; each
    /// modular rank is a lower bound and they agree with the rational rank
    /// unless a prime divides every maximal nonvanishing minor.
    pub fn rank(&self) -> usize {
        const PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];
        PRIMES.iter().map(|&p| self.rank_mod(p)).max().unwrap_or(0)
    }

    fn rank_mod(&self, p: u64) -> usize {
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            r
        };
        let mut a: Vec<Vec<u64>> = (0..self.m)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u64).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(piv) = (rank..self.m).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = powmod(a[rank][col], p - 2);
            for r in 0..self.m {
                if r != rank && a[r][col] != 0 {
                    let f = mulmod(a[r][col], inv);
                    for c in col..self.n {
                        let sub = mulmod(f, a[rank][c]);
                        a[r][c] = (a[r][c] + p - sub) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Indices of the nonzero rows and nonzero columns.
    pub fn support(&self) -> (Vec<usize>, Vec<usize>) {
        let rows = (0..self.m).filter(|&i| self.row_degree(i) > 0).collect();
        let cols = self.col_degrees().iter().enumerate().filter(|(_, &d)| d > 0).map(|(j, _)| j).collect();
        (rows, cols)
    }

    /// Dense 0/1 rows, mostly for serialization and debugging.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.m).map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect()).collect()
    }
}

pub(crate) fn bit_iter(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * WORD + b)
        })
    })
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{} ({} ones)", self.m, self.n, self.count_ones())?;
        if self.m <= 32 && self.n <= 64 {
            for i in 0..self.m {
                let line: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for BoolMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.m))?;
        for row in self.to_dense() {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_coords_examples() {
        let m = BoolMatrix::from_coords(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(m, BoolMatrix::identity(2).unwrap());
        let z = BoolMatrix::from_coords(1, 1, &[]).unwrap();
        assert!(z.is_zero());
        let d = BoolMatrix::from_coords(2, 2, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(d.count_ones(), 1);
    }

    #[test]
    fn from_coords_rejects_out_of_range() {
        let err = BoolMatrix::from_coords(2, 3, &[(0, 0), (2, 1)]).unwrap_err();
        assert!(err.to_string().contains("(2, 1)"), "{err}");
        assert!(BoolMatrix::from_coords(0, 3, &[]).is_err());
    }

    #[test]
    fn avg_degree_examples() {
        assert_eq!(BoolMatrix::identity(3).unwrap().avg_degree(), 1.0);
        assert_eq!(BoolMatrix::all_ones(3, 3).unwrap().avg_degree(), 3.0);
    }

    #[test]
    fn four_cycles_and_kst() {
        let j2 = BoolMatrix::all_ones(2, 2).unwrap();
        assert!(!j2.is_four_cycle_free());
        assert!(BoolMatrix::identity(6).unwrap().is_four_cycle_free());
        let j3 = BoolMatrix::all_ones(3, 3).unwrap();
        let (r, c) = j3.has_allones_submatrix(2).unwrap();
        assert_eq!((r.len(), c.len()), (2, 2));
        assert!(BoolMatrix::identity(5).unwrap().has_allones_submatrix(2).is_none());
        assert!(j3.has_allones_submatrix(4).is_none());
    }

    #[test]
    fn kst_witness_is_all_ones() {
        let m = BoolMatrix::from_rows(&[
            [1, 0, 1, 1, 0],
            [0, 1, 1, 1, 1],
            [1, 1, 1, 0, 1],
            [0, 1, 1, 1, 1],
            [1, 0, 0, 1, 1],
        ])
        .unwrap();
        let (rows, cols) = m.has_allones_submatrix(3).unwrap();
        for &i in &rows {
            for &j in &cols {
                assert!(m.get(i, j));
            }
        }
        assert!(m.has_allones_submatrix(4).is_none());
    }

    #[test]
    fn count_squares_examples() {
        assert_eq!(BoolMatrix::identity(7).unwrap().count_squares(), 7);
        assert_eq!(BoolMatrix::all_ones(2, 2).unwrap().count_squares(), 16);
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let m = BoolMatrix::from_coords(2, 130, &[(0, 63), (0, 64), (0, 129), (1, 64), (1, 129)]).unwrap();
        assert_eq!(m.row_degree(0), 3);
        assert_eq!(m.row_support(0).collect::<Vec<_>>(), vec![63, 64, 129]);
        assert_eq!(m.row_intersection(0, 1), 2);
        assert!(!m.is_four_cycle_free());
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn rank_small() {
        assert_eq!(BoolMatrix::all_ones(4, 5).unwrap().rank(), 1);
        assert_eq!(BoolMatrix::identity(5).unwrap().rank(), 5);
        let m = BoolMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 3);
        let m = BoolMatrix::from_rows(&[[1, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn structural_products() {
        let i2 = BoolMatrix::identity(2).unwrap();
        let j2 = BoolMatrix::all_ones(2, 2).unwrap();
        let k = i2.kronecker(&j2);
        assert_eq!(k.count_ones(), 8);
        assert!(k.get(1, 0) && !k.get(2, 1) && k.get(3, 2));
        let one = BoolMatrix::identity(1).unwrap();
        assert_eq!(one.direct_sum(&one), i2);
    }
}
