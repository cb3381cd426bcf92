//! Semilinear incidence graphs: strict linear predicates between point
//! sets, their dominance form, and the `f_s` edge recursion.

mod boxcert;
mod dominance;
mod generators;

pub use boxcert::{box_factorization, box_factorization_value, threshold_root};
pub use dominance::{count_dominance_edges, count_dominance_edges_naive};
pub use generators::{
    gen_dominance, gen_points_boxes, gen_points_corners, gen_pol_h, gen_pol_h_random, thin_to_four_cycle_free, PolH,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};

/// `f(x, y) = ⟨a, x⟩ + ⟨b, y⟩ + c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearForm {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: f64,
}

impl LinearForm {
    pub fn new(a: Vec<f64>, b: Vec<f64>, c: f64) -> Self {
        LinearForm { a, b, c }
    }

    /// `⟨a, x⟩ + c`, the part depending on the first point only.
    pub fn x_part(&self, x: &[f64]) -> f64 {
        dot(&self.a, x) + self.c
    }

    /// `⟨b, y⟩`.
    pub fn y_part(&self, y: &[f64]) -> f64 {
        dot(&self.b, y)
    }

    /// Evaluated as `(⟨a, x⟩ + c) + ⟨b, y⟩` so that its sign agrees exactly
    /// with the dominance comparison `⟨a, x⟩ + c < −⟨b, y⟩`.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        self.x_part(x) + self.y_part(y)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// Points `V₁ ⊂ ℝ^{d₁}`, `V₂ ⊂ ℝ^{d₂}` and an `s × u` array of forms;
/// `(x, y)` is an edge iff `∃ j ∀ i: f_{ij}(x, y) < 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemilinearInstance {
    pub d1: usize,
    pub d2: usize,
    pub v1: Vec<Vec<f64>>,
    pub v2: Vec<Vec<f64>>,
    /// `forms[i][j]`, `i < s`, `j < u`.
    pub forms: Vec<Vec<LinearForm>>,
}

impl SemilinearInstance {
    pub fn new(d1: usize, d2: usize, v1: Vec<Vec<f64>>, v2: Vec<Vec<f64>>, forms: Vec<Vec<LinearForm>>) -> Result<Self> {
        let inst = SemilinearInstance { d1, d2, v1, v2, forms };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        for (k, x) in self.v1.iter().enumerate() {
            if x.len() != self.d1 || !finite(x) {
                return Err(Error::input(format!("V1 point {k} must be {} finite coordinates", self.d1)));
            }
        }
        for (k, y) in self.v2.iter().enumerate() {
            if y.len() != self.d2 || !finite(y) {
                return Err(Error::input(format!("V2 point {k} must be {} finite coordinates", self.d2)));
            }
        }
        let u = self.forms.first().map_or(0, Vec::len);
        if self.forms.is_empty() || u == 0 {
            return Err(Error::input("need at least one form"));
        }
        for (i, row) in self.forms.iter().enumerate() {
            if row.len() != u {
                return Err(Error::input(format!("form row {i} has {} entries, expected {u}", row.len())));
            }
            for (j, f) in row.iter().enumerate() {
                if f.a.len() != self.d1 || f.b.len() != self.d2 || !finite(&f.a) || !finite(&f.b) || !f.c.is_finite() {
                    return Err(Error::input(format!("form ({i}, {j}) has inconsistent dimensions or non-finite data")));
                }
            }
        }
        Ok(())
    }

    pub fn s(&self) -> usize {
        self.forms.len()
    }

    pub fn u(&self) -> usize {
        self.forms[0].len()
    }

    pub fn edge(&self, x: usize, y: usize) -> Result<bool> {
        let (Some(px), Some(py)) = (self.v1.get(x), self.v2.get(y)) else {
            return Err(Error::input(format!(
                "pair ({x}, {y}) out of range for {} x {} points",
                self.v1.len(),
                self.v2.len()
            )));
        };
        Ok(self.edge_points(px, py))
    }

    fn edge_points(&self, x: &[f64], y: &[f64]) -> bool {
        (0..self.u()).any(|j| self.forms.iter().all(|row| row[j].eval(x, y) < 0.0))
    }

    pub fn biadjacency(&self) -> Result<BoolMatrix> {
        BoolMatrix::from_fn(self.v1.len(), self.v2.len(), |i, j| self.edge_points(&self.v1[i], &self.v2[j]))
    }

    /// `x̃ = (⟨aᵢ, x⟩ + cᵢ)ᵢ`, `ỹ = (−⟨bᵢ, y⟩)ᵢ`; edges become `x̃ ≺ ỹ`.
    pub fn to_dominance(&self) -> Result<DominanceInstance> {
        if self.u() != 1 {
            return Err(Error::Capability(format!(
                "dominance form needs u = 1, got u = {}; split into u sub-instances first",
                self.u()
            )));
        }
        let u1 = self.v1.iter().map(|x| self.forms.iter().map(|r| r[0].x_part(x)).collect()).collect();
        let u2 = self.v2.iter().map(|y| self.forms.iter().map(|r| -r[0].y_part(y)).collect()).collect();
        DominanceInstance::new(u1, u2)
    }

    /// Sign pattern `ε ∈ {±1}^{s×u}` of a pair: `−1` where the form is
    /// negative, `+1` otherwise.
    pub fn sign_pattern(&self, x: &[f64], y: &[f64]) -> Vec<i8> {
        self.forms.iter().flat_map(|row| row.iter().map(|f| if f.eval(x, y) < 0.0 { -1 } else { 1 })).collect()
    }

    /// Decomposes the biadjacency matrix as `M = Σ_{ε ∈ E} M_ε`, where `M_ε`
    /// marks pairs with sign pattern `ε` and `E` collects the patterns on
    /// which the edge predicate holds. The predicate depends only on the
    /// pattern, so the sum is exact and the supports are disjoint. Patterns
    /// are returned in lexicographic order; empty ones are omitted.
    pub fn sign_pattern_split(&self) -> Result<Vec<(Vec<i8>, BoolMatrix)>> {
        let (m, n) = (self.v1.len(), self.v2.len());
        let (s, u) = (self.s(), self.u());
        let mut cells: HashMap<Vec<i8>, Vec<(usize, usize)>> = HashMap::new();
        for (i, x) in self.v1.iter().enumerate() {
            for (j, y) in self.v2.iter().enumerate() {
                let eps = self.sign_pattern(x, y);
                let hit = (0..u).any(|c| (0..s).all(|r| eps[r * u + c] < 0));
                if hit {
                    cells.entry(eps).or_default().push((i, j));
                }
            }
        }
        let mut out: Vec<(Vec<i8>, BoolMatrix)> = cells
            .into_iter()
            .map(|(eps, coords)| BoolMatrix::from_coords(m, n, &coords).map(|b| (eps, b)))
            .collect::<Result<_>>()?;
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

/// Point sets `U₁, U₂ ⊂ ℝˢ`; `(x, y)` is an edge iff `x ≺ y` strictly in
/// every coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceInstance {
    pub s: usize,
    pub u1: Vec<Vec<f64>>,
    pub u2: Vec<Vec<f64>>,
}

impl DominanceInstance {
    pub fn new(u1: Vec<Vec<f64>>, u2: Vec<Vec<f64>>) -> Result<Self> {
        let s = u1.first().or(u2.first()).map_or(0, Vec::len);
        if s == 0 {
            return Err(Error::input("dominance points need dimension s ≥ 1"));
        }
        if u1.iter().chain(&u2).any(|p| p.len() != s || p.iter().any(|x| !x.is_finite())) {
            return Err(Error::input(format!("all dominance points must have {s} finite coordinates")));
        }
        Ok(DominanceInstance { s, u1, u2 })
    }

    pub fn dominates(x: &[f64], y: &[f64]) -> bool {
        x.iter().zip(y).all(|(a, b)| a < b)
    }

    pub fn biadjacency(&self) -> Result<BoolMatrix> {
        BoolMatrix::from_fn(self.u1.len(), self.u2.len(), |i, j| Self::dominates(&self.u1[i], &self.u2[j]))
    }

    /// Restriction to the given members of `U₁` and `U₂`.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        DominanceInstance {
            s: self.s,
            u1: rows.iter().map(|&i| self.u1[i].clone()).collect(),
            u2: cols.iter().map(|&j| self.u2[j].clone()).collect(),
        }
    }
}

/// The recursion `f_s(n) = 2·f_s(⌈n/2⌉) + f_{s−1}(n)` with `f_s(n) = n²`
/// for `n ≤ t` and `f_1(n) = 2tn` for `n > t`.
pub fn f_s_bound(n: usize, t: usize, s: usize) -> Result<u128> {
    if n == 0 || t == 0 || s == 0 {
        return Err(Error::input(format!("f_s needs n, t, s ≥ 1, got n={n}, t={t}, s={s}")));
    }
    let mut memo = HashMap::new();
    Ok(f_rec(n as u128, t as u128, s, &mut memo))
}

fn f_rec(n: u128, t: u128, s: usize, memo: &mut HashMap<(u128, usize), u128>) -> u128 {
    if n <= t {
        return n * n;
    }
    if s == 1 {
        return 2 * t * n;
    }
    if let Some(&v) = memo.get(&(n, s)) {
        return v;
    }
    let v = 2 * f_rec(n.div_ceil(2), t, s, memo) + f_rec(n, t, s - 1, memo);
    memo.insert((n, s), v);
    v
}
