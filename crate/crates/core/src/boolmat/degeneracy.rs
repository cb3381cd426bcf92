use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::BoolMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "R")]
    Row,
    #[serde(rename = "C")]
    Col,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyResult {
    pub value: usize,
    /// Peeling order over rows and columns; each vertex has at most `value`
    /// neighbours appearing after it.
    pub order: Vec<Vertex>,
    /// Rows and columns of a submatrix whose minimum degree is `value`.
    pub core_rows: Vec<usize>,
    pub core_cols: Vec<usize>,
}

impl BoolMatrix {
    /// Degeneracy by minimum-degree peeling over the combined vertex pool.
    ///
    /// Rows are vertices `0..m`, columns `m..m+n`; ties on degree go to the
    /// lowest combined index.
    pub fn degeneracy(&self) -> DegeneracyResult {
        let (m, n) = (self.rows(), self.cols());
        let t = self.transpose();
        let total = m + n;
        let mut deg: Vec<usize> = (0..m).map(|i| self.row_degree(i)).collect();
        deg.extend((0..n).map(|j| t.row_degree(j)));

        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            deg.iter().enumerate().map(|(v, &d)| Reverse((d, v))).collect();
        let mut removed = vec![false; total];
        let mut order = Vec::with_capacity(total);
        let mut peel_deg = Vec::with_capacity(total);

        while let Some(Reverse((d, v))) = heap.pop() {
            if removed[v] || d != deg[v] {
                continue;
            }
            removed[v] = true;
            order.push(v);
            peel_deg.push(d);
            let nbrs: Vec<usize> = if v < m {
                self.row_support(v).map(|j| m + j).collect()
            } else {
                t.row_support(v - m).collect()
            };
            for u in nbrs {
                if !removed[u] {
                    deg[u] -= 1;
                    heap.push(Reverse((deg[u], u)));
                }
            }
        }

        let value = peel_deg.iter().copied().max().unwrap_or(0);
        let start = peel_deg.iter().position(|&d| d == value).unwrap_or(0);
        let mut core_rows: Vec<usize> = order[start..].iter().filter(|&&v| v < m).copied().collect();
        let mut core_cols: Vec<usize> =
            order[start..].iter().filter(|&&v| v >= m).map(|&v| v - m).collect();
        core_rows.sort_unstable();
        core_cols.sort_unstable();

        let order = order
            .into_iter()
            .map(|v| {
                if v < m {
                    Vertex { side: Side::Row, index: v }
                } else {
                    Vertex { side: Side::Col, index: v - m }
                }
            })
            .collect();
        DegeneracyResult { value, order, core_rows, core_cols }
    }
}

impl DegeneracyResult {
    /// Splits `m` into `(M₁, M₂)` along the peeling order: an edge goes to
    /// `M₁` when its row is peeled before its column, otherwise to `M₂`.
    /// Rows of `M₁` and columns of `M₂` then carry at most `value` ones.
    pub fn split(&self, m: &BoolMatrix) -> (BoolMatrix, BoolMatrix) {
        let mut row_pos = vec![0usize; m.rows()];
        let mut col_pos = vec![0usize; m.cols()];
        for (k, v) in self.order.iter().enumerate() {
            match v.side {
                Side::Row => row_pos[v.index] = k,
                Side::Col => col_pos[v.index] = k,
            }
        }
        let (mut c1, mut c2) = (Vec::new(), Vec::new());
        for (i, j) in m.coords() {
            if row_pos[i] < col_pos[j] {
                c1.push((i, j));
            } else {
                c2.push((i, j));
            }
        }
        let m1 = BoolMatrix::from_coords(m.rows(), m.cols(), &c1).expect("in range");
        let m2 = BoolMatrix::from_coords(m.rows(), m.cols(), &c2).expect("in range");
        (m1, m2)
    }
}
