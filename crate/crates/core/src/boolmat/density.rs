use serde::Serialize;

use super::{BoolMatrix, Side};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMode {
    /// Parametric min-cut; returns a true maximizer.
    #[default]
    Exact,
    /// Best suffix of the minimum-degree peeling order; within a factor 2.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensestSubgraph {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `2·ones / (|rows| + |cols|)` of the induced submatrix.
    pub density: f64,
}

impl BoolMatrix {
    /// Induced submatrix maximizing the average degree `2e / (rows + cols)`.
    pub fn max_avg_degree_subgraph(&self) -> Result<DensestSubgraph> {
        self.densest_subgraph(DensityMode::Exact)
    }

    pub fn densest_subgraph(&self, mode: DensityMode) -> Result<DensestSubgraph> {
        if self.is_zero() {
            return Err(Error::input("no edges"));
        }
        let (rows, cols) = match mode {
            DensityMode::Exact => self.densest_exact(),
            DensityMode::Greedy => self.densest_greedy(),
        };
        let e: usize = rows.iter().map(|&i| cols.iter().filter(|&&j| self.get(i, j)).count()).sum();
        let density = 2.0 * e as f64 / (rows.len() + cols.len()) as f64;
        Ok(DensestSubgraph { rows, cols, density })
    }

    /// Dinkelbach iteration on the ratio `e(S)/|S|`.
    ///
    /// For the current ratio `p/q`, a min cut in the network
    /// `s→v: qD`, `v→t: qD + 2p − q·deg(v)`, `u↔v: q` has capacity
    /// `N·q·D + 2·min_S (p|S| − q·e(S))`, so a cut below `N·q·D` exposes a
    /// strictly denser vertex set. All arithmetic is integral.
    fn densest_exact(&self) -> (Vec<usize>, Vec<usize>) {
        let (m, n) = (self.rows(), self.cols());
        let total = m + n;
        let mut deg: Vec<i64> = self.row_degrees().into_iter().map(|d| d as i64).collect();
        deg.extend(self.col_degrees().into_iter().map(|d| d as i64));
        let dmax = *deg.iter().max().unwrap_or(&0);
        let coords = self.coords();

        let mut best: Vec<bool> = vec![true; total];
        let mut p = coords.len() as i64;
        let mut q = total as i64;
        loop {
            let (s, t) = (total, total + 1);
            let mut g = FlowNetwork::new(total + 2);
            for v in 0..total {
                g.add_edge(s, v, q * dmax, 0);
                g.add_edge(v, t, q * dmax + 2 * p - q * deg[v], 0);
            }
            for &(i, j) in &coords {
                g.add_edge(i, m + j, q, q);
            }
            let cut = g.max_flow(s, t);
            if cut >= total as i64 * q * dmax {
                break;
            }
            let side = g.source_side(s);
            let chosen: Vec<bool> = (0..total).map(|v| side[v]).collect();
            let e = coords.iter().filter(|&&(i, j)| chosen[i] && chosen[m + j]).count() as i64;
            let size = chosen.iter().filter(|&&b| b).count() as i64;
            // strict improvement: e/size > p/q
            if size == 0 || e * q <= p * size {
                break;
            }
            best = chosen;
            p = e;
            q = size;
        }
        let rows = (0..m).filter(|&i| best[i]).collect();
        let cols = (0..n).filter(|&j| best[m + j]).collect();
        (rows, cols)
    }

    fn densest_greedy(&self) -> (Vec<usize>, Vec<usize>) {
        let dg = self.degeneracy();
        let (m, n) = (self.rows(), self.cols());
        let mut pos_r = vec![0; m];
        let mut pos_c = vec![0; n];
        for (k, v) in dg.order.iter().enumerate() {
            match v.side {
                Side::Row => pos_r[v.index] = k,
                Side::Col => pos_c[v.index] = k,
            }
        }
        // edges removed when vertex k is peeled = its later neighbours
        let mut removed_at = vec![0usize; m + n];
        for (i, j) in self.coords() {
            removed_at[pos_r[i].min(pos_c[j])] += 1;
        }
        let mut e = self.count_ones();
        let mut best_k = 0;
        let mut best = (e, m + n);
        for k in 0..m + n {
            let size = m + n - k;
            // e/size > best.0/best.1
            if e * best.1 > best.0 * size {
                best = (e, size);
                best_k = k;
            }
            e -= removed_at[k];
        }
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for v in &dg.order[best_k..] {
            match v.side {
                Side::Row => rows.push(v.index),
                Side::Col => cols.push(v.index),
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        (rows, cols)
    }
}
