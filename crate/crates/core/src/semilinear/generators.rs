use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{DominanceInstance, LinearForm, SemilinearInstance};
use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::seed;

fn unit(k: usize, d: usize, scale: f64) -> Vec<f64> {
    (0..d).map(|i| if i == k { scale } else { 0.0 }).collect()
}

fn uniform_points(rng: &mut seed::Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..d).map(|_| rng.random::<f64>()).collect()).collect()
}

fn check_dims(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::input(format!("need n ≥ 1 and d ≥ 1, got n={n}, d={d}")));
    }
    Ok(())
}

/// `n` uniform points and `n` boxes in `[0, 1)^d`. Box `y` is stored as
/// `(lo₁..lo_d, hi₁..hi_d)`; membership is `lo_k < x_k < hi_k` for all `k`,
/// i.e. `2d` strict forms with `u = 1`.
pub fn gen_points_boxes(n: usize, d: usize, seed: u64) -> Result<SemilinearInstance> {
    check_dims(n, d)?;
    let mut rng = seed::rng(seed);
    let points = uniform_points(&mut rng, n, d);
    let boxes = (0..n)
        .map(|_| {
            let mut lo = Vec::with_capacity(d);
            let mut hi = Vec::with_capacity(d);
            for _ in 0..d {
                let (a, b) = loop {
                    let (a, b): (f64, f64) = (rng.random(), rng.random());
                    if a != b {
                        break (a.min(b), a.max(b));
                    }
                };
                lo.push(a);
                hi.push(b);
            }
            lo.extend(hi);
            lo
        })
        .collect();
    let mut forms = Vec::with_capacity(2 * d);
    for k in 0..d {
        forms.push(vec![LinearForm::new(unit(k, d, -1.0), unit(k, 2 * d, 1.0), 0.0)]);
        forms.push(vec![LinearForm::new(unit(k, d, 1.0), unit(d + k, 2 * d, -1.0), 0.0)]);
    }
    SemilinearInstance::new(d, 2 * d, points, boxes, forms)
}

/// `n` points and `n` corners `C_t = {x : x_k < t_k ∀k}` in `[0, 1)^d`.
pub fn gen_points_corners(n: usize, d: usize, seed: u64) -> Result<SemilinearInstance> {
    check_dims(n, d)?;
    let mut rng = seed::rng(seed);
    let points = uniform_points(&mut rng, n, d);
    let corners = uniform_points(&mut rng, n, d);
    let forms = (0..d).map(|k| vec![LinearForm::new(unit(k, d, 1.0), unit(k, d, -1.0), 0.0)]).collect();
    SemilinearInstance::new(d, d, points, corners, forms)
}

/// Incidences of points with polytopes `⋂_h {x : ⟨a_h, x − w_{k,h}⟩ < c_h}`,
/// each the intersection of translates of the half-spaces `(a_h, c_h)`.
/// `translates[k][h]` is the offset of half-space `h` in polytope `k`.
pub fn gen_pol_h(points: &[Vec<f64>], halfspaces: &[(Vec<f64>, f64)], translates: &[Vec<Vec<f64>>]) -> Result<BoolMatrix> {
    let d = points.first().map_or(0, Vec::len);
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(Error::input("points must share a positive dimension"));
    }
    if halfspaces.is_empty() || halfspaces.iter().any(|(a, _)| a.len() != d) {
        return Err(Error::input(format!("half-space normals must have dimension {d}")));
    }
    for (k, t) in translates.iter().enumerate() {
        if t.len() != halfspaces.len() || t.iter().any(|w| w.len() != d) {
            return Err(Error::input(format!("polytope {k} needs {} offsets of dimension {d}", halfspaces.len())));
        }
    }
    BoolMatrix::from_fn(points.len(), translates.len(), |i, k| {
        halfspaces.iter().zip(&translates[k]).all(|((a, c), w)| {
            let v: f64 = a.iter().zip(&points[i]).zip(w).map(|((a, x), w)| a * (x - w)).sum();
            v < *c
        })
    })
}

/// A concrete POL(H) instance: points, half-spaces and per-polytope offsets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolH {
    pub points: Vec<Vec<f64>>,
    pub halfspaces: Vec<(Vec<f64>, f64)>,
    pub translates: Vec<Vec<Vec<f64>>>,
}

impl PolH {
    pub fn matrix(&self) -> Result<BoolMatrix> {
        gen_pol_h(&self.points, &self.halfspaces, &self.translates)
    }
}

/// `s` random unit normals through the origin; polytope `k` is the
/// homothet `{x : ⟨a_h, x − z_k⟩ < r_k ∀h}` with random centre and radius.
pub fn gen_pol_h_random(n: usize, d: usize, s: usize, seed: u64) -> Result<PolH> {
    check_dims(n, d)?;
    if s == 0 {
        return Err(Error::input("need at least one half-space"));
    }
    let mut rng = seed::rng(seed);
    let halfspaces: Vec<(Vec<f64>, f64)> = (0..s)
        .map(|_| loop {
            let a: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = a.iter().map(|x: &f64| x * x).sum::<f64>().sqrt();
            if norm > 1e-9 {
                break (a.into_iter().map(|x| x / norm).collect(), 0.0);
            }
        })
        .collect();
    let points = uniform_points(&mut rng, n, d);
    let translates = (0..n)
        .map(|_| {
            let z: Vec<f64> = (0..d).map(|_| rng.random()).collect();
            let r = rng.random_range(0.05..0.3);
            halfspaces.iter().map(|(a, _)| z.iter().zip(a).map(|(z, a)| z + r * a).collect()).collect()
        })
        .collect();
    Ok(PolH { points, halfspaces, translates })
}

/// `n` uniform points per side in `[0, 1)^s`.
pub fn gen_dominance(n: usize, s: usize, seed: u64) -> Result<DominanceInstance> {
    check_dims(n, s)?;
    let mut rng = seed::rng(seed);
    let u1 = uniform_points(&mut rng, n, s);
    let u2 = uniform_points(&mut rng, n, s);
    DominanceInstance::new(u1, u2)
}

/// Rows kept by a greedy scan in order of increasing degree: a row is
/// kept when it shares at most one column with every kept row. The
/// induced submatrix on the kept rows (all columns) is four-cycle-free.
pub fn thin_to_four_cycle_free(m: &BoolMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by_key(|&i| (m.row_degree(i), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if kept.iter().all(|&k| m.row_intersection(i, k) <= 1) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}
