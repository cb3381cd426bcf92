//! Blocky matrices (blow-ups of partial permutation matrices) and thin
//! blocky decompositions.

use std::collections::HashMap;

use serde::Serialize;

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};

/// Labels rows and columns by block; label `0` means "in no block".
/// Block `b ≥ 1` is the all-ones rectangle `{i : row_label[i] = b} × {j : col_label[j] = b}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockyMatrix {
    pub k: usize,
    pub row_label: Vec<usize>,
    pub col_label: Vec<usize>,
}

impl BlockyMatrix {
    pub fn rows(&self) -> usize {
        self.row_label.len()
    }

    pub fn cols(&self) -> usize {
        self.col_label.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_label[i] != 0 && self.row_label[i] == self.col_label[j]
    }

    pub fn to_bool(&self) -> BoolMatrix {
        BoolMatrix::from_fn(self.rows(), self.cols(), |i, j| self.get(i, j)).expect("nonempty labels")
    }

    /// `(rows, cols)` of each block, in label order.
    pub fn block_shapes(&self) -> Vec<(usize, usize)> {
        let mut shape = vec![(0, 0); self.k];
        for &l in self.row_label.iter().filter(|&&l| l > 0) {
            shape[l - 1].0 += 1;
        }
        for &l in self.col_label.iter().filter(|&&l| l > 0) {
            shape[l - 1].1 += 1;
        }
        shape
    }

    /// Every block has a single row or a single column.
    pub fn is_thin(&self) -> bool {
        self.block_shapes().iter().all(|&(r, c)| r == 1 || c == 1)
    }

    pub fn count_ones(&self) -> usize {
        self.block_shapes().iter().map(|(r, c)| r * c).sum()
    }
}

/// Recognizes `M` as blocky: rows with the same nonzero support form a
/// block, and supports of different blocks must be disjoint. Blocks are
/// numbered by their first row.
pub fn recognize_blocky(m: &BoolMatrix) -> Option<BlockyMatrix> {
    let mut label_of: HashMap<&[u64], usize> = HashMap::new();
    let mut row_label = vec![0; m.rows()];
    let mut col_label = vec![0; m.cols()];
    for i in 0..m.rows() {
        if m.row_degree(i) == 0 {
            continue;
        }
        let next = label_of.len() + 1;
        let label = *label_of.entry(m.row_words(i)).or_insert(next);
        if label == next {
            for j in m.row_support(i) {
                if col_label[j] != 0 {
                    return None;
                }
                col_label[j] = label;
            }
        }
        row_label[i] = label;
    }
    Some(BlockyMatrix { k: label_of.len(), row_label, col_label })
}

#[derive(Debug, Clone, Serialize)]
pub struct ThinBlockyDecomposition {
    pub terms: Vec<BlockyMatrix>,
    pub degeneracy: usize,
}

impl ThinBlockyDecomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Checks thinness, exact summation to `target` and the sandwich
    /// `dgc/2 ≤ terms ≤ 2·dgc`.
    pub fn verify(&self, target: &BoolMatrix) -> Result<()> {
        if let Some(t) = self.terms.iter().position(|t| !t.is_thin()) {
            return Err(Error::internal(format!("term {t} is not thin")));
        }
        let signed: Vec<(i8, BlockyMatrix)> = self.terms.iter().map(|t| (1, t.clone())).collect();
        if !verify_signed_combination(&signed, target)? {
            return Err(Error::internal("terms do not sum to the target"));
        }
        let (k, d) = (self.terms.len(), self.degeneracy);
        if 2 * k < d || k > 2 * d {
            return Err(Error::internal(format!("{k} terms outside [{d}/2, 2·{d}]")));
        }
        Ok(())
    }
}

/// Splits `M = M₁ + M₂` with `M₁` row-sparse and `M₂` column-sparse, then
/// peels `M₁` into "ℓ-th one of each row" terms and `M₂` into "ℓ-th one of
/// each column" terms. Among the degeneracy split and the two one-sided
/// splits, the one needing the fewest terms is used.
pub fn thin_decompose(m: &BoolMatrix) -> ThinBlockyDecomposition {
    let dg = m.degeneracy();
    let zero = BoolMatrix::zeros(m.rows(), m.cols()).expect("nonempty");
    let splits = [dg.split(m), (m.clone(), zero.clone()), (zero, m.clone())];
    let cost = |(a, b): &(BoolMatrix, BoolMatrix)| {
        a.row_degrees().into_iter().max().unwrap_or(0) + b.col_degrees().into_iter().max().unwrap_or(0)
    };
    let (m1, m2) = splits.iter().min_by_key(|s| cost(s)).expect("three candidates");

    let mut terms = row_terms(m1);
    terms.extend(row_terms(&m2.transpose()).into_iter().map(|t| BlockyMatrix {
        k: t.k,
        row_label: t.col_label,
        col_label: t.row_label,
    }));
    let terms = terms.into_iter().map(|t| recanonicalize(&t)).collect();
    ThinBlockyDecomposition { terms, degeneracy: dg.value }
}

/// Term `ℓ` holds the `ℓ`-th one (by ascending column) of each row: one
/// cell per row, so each column's cells form a single-column block.
fn row_terms(m: &BoolMatrix) -> Vec<BlockyMatrix> {
    let supports: Vec<Vec<usize>> = (0..m.rows()).map(|i| m.row_support(i).collect()).collect();
    let depth = supports.iter().map(Vec::len).max().unwrap_or(0);
    (0..depth)
        .map(|l| {
            let mut row_label = vec![0; m.rows()];
            let mut col_label = vec![0; m.cols()];
            for (i, s) in supports.iter().enumerate() {
                if let Some(&j) = s.get(l) {
                    row_label[i] = j + 1;
                    col_label[j] = j + 1;
                }
            }
            BlockyMatrix { k: 0, row_label, col_label }
        })
        .collect()
}

/// Renumbers labels `1..=k` in order of each block's smallest row.
fn recanonicalize(t: &BlockyMatrix) -> BlockyMatrix {
    let mut map = HashMap::new();
    let row_label: Vec<usize> = t
        .row_label
        .iter()
        .map(|&l| {
            if l == 0 {
                0
            } else {
                let next = map.len() + 1;
                *map.entry(l).or_insert(next)
            }
        })
        .collect();
    let col_label = t.col_label.iter().map(|l| map.get(l).copied().unwrap_or(0)).collect();
    BlockyMatrix { k: map.len(), row_label, col_label }
}

/// True iff `Σ εₖ Bₖ = M` entrywise.
pub fn verify_signed_combination(terms: &[(i8, BlockyMatrix)], m: &BoolMatrix) -> Result<bool> {
    let (r, c) = (m.rows(), m.cols());
    let mut acc = vec![0i64; r * c];
    for (k, (sign, t)) in terms.iter().enumerate() {
        if t.rows() != r || t.cols() != c {
            return Err(Error::input(format!("term {k} is {}x{}, target is {r}x{c}", t.rows(), t.cols())));
        }
        if *sign != 1 && *sign != -1 {
            return Err(Error::input(format!("term {k} has sign {sign}")));
        }
        let mut cols_of: Vec<Vec<usize>> = vec![Vec::new(); t.k + 1];
        for (j, &l) in t.col_label.iter().enumerate() {
            cols_of[l.min(t.k)].push(j);
        }
        for (i, &l) in t.row_label.iter().enumerate() {
            if l == 0 || l > t.k {
                continue;
            }
            for &j in &cols_of[l] {
                acc[i * c + j] += *sign as i64;
            }
        }
    }
    Ok((0..r).all(|i| (0..c).all(|j| acc[i * c + j] == m.get(i, j) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn figure_one() -> BoolMatrix {
        let blocks = [(0..2, 0..3), (2..5, 3..5), (5..7, 5..6), (7..8, 6..7)];
        BoolMatrix::from_fn(8, 7, |i, j| blocks.iter().any(|(r, c)| r.contains(&i) && c.contains(&j))).unwrap()
    }

    #[test]
    fn recognizes_figure_one() {
        let b = recognize_blocky(&figure_one()).unwrap();
        assert_eq!(b.k, 4);
        assert_eq!(b.block_shapes(), vec![(2, 3), (3, 2), (2, 1), (1, 1)]);
        assert_eq!(b.to_bool(), figure_one());
    }

    #[test]
    fn recognize_examples() {
        let b = recognize_blocky(&BoolMatrix::identity(5).unwrap()).unwrap();
        assert_eq!(b.k, 5);
        assert!(recognize_blocky(&BoolMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap()).is_none());
        let z = recognize_blocky(&BoolMatrix::zeros(2, 3).unwrap()).unwrap();
        assert_eq!((z.k, z.row_label, z.col_label), (0, vec![0, 0], vec![0, 0, 0]));
    }

    #[test]
    fn thin_examples() {
        let i3 = BoolMatrix::identity(3).unwrap();
        let d = thin_decompose(&i3);
        assert_eq!(d.len(), 1);
        assert_eq!(d.terms[0].to_bool(), i3);
        d.verify(&i3).unwrap();

        let j2 = BoolMatrix::all_ones(2, 2).unwrap();
        let d = thin_decompose(&j2);
        assert_eq!(d.len(), 2);
        d.verify(&j2).unwrap();

        let z = BoolMatrix::zeros(3, 3).unwrap();
        assert!(thin_decompose(&z).is_empty());
    }

    #[test]
    fn signed_combinations() {
        let i2 = BoolMatrix::identity(2).unwrap();
        let j2 = BoolMatrix::all_ones(2, 2).unwrap();
        let bi = recognize_blocky(&i2).unwrap();
        let bj = recognize_blocky(&j2).unwrap();
        let anti = recognize_blocky(&BoolMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap()).unwrap();
        assert!(verify_signed_combination(&[(1, bi.clone())], &i2).unwrap());
        assert!(verify_signed_combination(&[(1, bj), (-1, anti)], &i2).unwrap());
        assert!(!verify_signed_combination(&[(1, bi)], &j2).unwrap());
        let small = recognize_blocky(&BoolMatrix::identity(3).unwrap()).unwrap();
        assert!(verify_signed_combination(&[(1, small)], &i2).is_err());
    }
}
