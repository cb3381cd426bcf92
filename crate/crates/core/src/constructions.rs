//! Named matrix families: point-line incidences `P(q, p)`, `P_p(q, p)` and a
//! randomized set-system construction with a small γ₂ certificate.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::gamma2::{Factor, FactorPart, FactorizationCert};
use crate::seed;
use crate::spectral::RealMatrix;

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Row `(x, x')` and column `(y, y')`, `x, y ∈ 1..=q`, `x', y' ∈ 0..p`,
/// flattened as `(x − 1)·p + x'`.
fn incidence(q: usize, p: usize, hit: impl Fn(usize, usize, usize, usize) -> bool) -> Result<BoolMatrix> {
    BoolMatrix::from_fn(q * p, q * p, |r, c| hit(r / p + 1, r % p, c / p + 1, c % p))
}

/// Lines `y' = x·y + x' (mod p)` against points: `q` ones per row and column,
/// no two lines meet twice.
pub fn gen_p_modp(q: usize, p: usize) -> Result<BoolMatrix> {
    if !is_prime(p) {
        return Err(Error::input(format!("p = {p} is not prime")));
    }
    if q == 0 || q >= p {
        return Err(Error::input(format!("need 1 ≤ q ≤ p − 1, got q = {q}, p = {p}")));
    }
    incidence(q, p, |x, xp, y, yp| (x * y + xp) % p == yp)
}

/// Same incidence over the integers, without reduction.
pub fn gen_p_real(q: usize, p: usize) -> Result<BoolMatrix> {
    if q == 0 || q > p {
        return Err(Error::input(format!("need 1 ≤ q ≤ p, got q = {q}, p = {p}")));
    }
    incidence(q, p, |x, xp, y, yp| x * y + xp == yp)
}

pub const SETSYSTEM_RETRIES: u64 = 16;

#[derive(Debug, Clone, Serialize)]
pub struct SetSystemConstruction {
    pub gamma: f64,
    pub ell: usize,
    pub m: usize,
    pub seed: u64,
    /// Seed actually used: `seed + retries`.
    pub used_seed: u64,
    pub retries: u64,
    pub inclusion_prob: f64,
    /// `C(m, ℓ) · p`.
    pub expected_family: f64,
    pub sampled_family: usize,
    pub family: Vec<Vec<usize>>,
    pub a: Vec<Vec<usize>>,
    pub b: Vec<Vec<usize>>,
    #[serde(skip)]
    pub m0: BoolMatrix,
    #[serde(skip)]
    pub matrix: BoolMatrix,
    pub cert: FactorizationCert,
}

impl SetSystemConstruction {
    /// Size `n` of the two halves; `M` is `n × n`.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Re-checks the structural invariants from scratch.
    pub fn verify(&self) -> Result<()> {
        for (x, s) in self.family.iter().enumerate() {
            if s.len() != self.ell {
                return Err(Error::internal(format!("set {x} has size {}", s.len())));
            }
            for t in &self.family[x + 1..] {
                if intersection(s, t) > 1 {
                    return Err(Error::internal(format!("sets {s:?} and {t:?} share two elements")));
                }
            }
        }
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let k = intersection(&self.a[i], &self.b[j]);
                if k > 1 || (k == 1) != self.m0.get(i, j) || self.matrix.get(i, j) == self.m0.get(i, j) {
                    return Err(Error::internal(format!("M0/M mismatch at ({i}, {j})")));
                }
            }
        }
        let value = self.cert.verify(&self.matrix)?;
        if value > self.ell as f64 + 1.0 + 1e-9 {
            return Err(Error::internal(format!("certificate value {value} exceeds ℓ + 1")));
        }
        Ok(())
    }
}

fn intersection(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

fn binomial_coeff(m: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// Random family of `ℓ`-subsets of `[m]` (`ℓ = ⌊γ − 1⌋`) with pairwise
/// intersections at most one, split into halves `A`, `B`;
/// `M = J − M₀` with `M₀[a, b] = |a ∩ b|`.
///
/// The certificate is `J = 1·1ᵀ` plus `−M₀ = (−U)·V` with characteristic
/// rows `U` and columns `V`, of value `1 + ℓ`.
pub fn gen_setsystem(gamma: f64, m: usize, seed: u64) -> Result<SetSystemConstruction> {
    if !gamma.is_finite() || gamma < 3.0 {
        return Err(Error::input(format!("γ must be at least 3, got {gamma}")));
    }
    let ell = (gamma - 1.0).floor() as usize;
    if m < ell {
        return Err(Error::input(format!("ground set of size {m} is smaller than ℓ = {ell}")));
    }
    let prob = (m as f64).powf(1.5 - ell as f64);
    let total = binomial_coeff(m, ell);
    let mut last = 0;
    for retry in 0..=SETSYSTEM_RETRIES {
        let used = seed.wrapping_add(retry);
        let mut rng = seed::rng(used);
        let draws = Binomial::new(total.round() as u64, prob.min(1.0))
            .map_err(|e| Error::Generation(format!("binomial parameters: {e}")))?
            .sample(&mut rng) as usize;

        let mut seen = HashSet::new();
        while seen.len() < draws {
            let mut s: Vec<usize> = index::sample(&mut rng, m, ell).into_vec();
            s.sort_unstable();
            seen.insert(s);
        }
        let mut family: Vec<Vec<usize>> = seen.into_iter().collect();
        family.sort();
        let sampled = family.len();

        let mut alive = vec![true; family.len()];
        for x in 0..family.len() {
            if !alive[x] {
                continue;
            }
            for y in x + 1..family.len() {
                if alive[y] && intersection(&family[x], &family[y]) >= 2 {
                    alive[y] = false;
                }
            }
        }
        let family: Vec<Vec<usize>> = family.into_iter().zip(alive).filter(|(_, a)| *a).map(|(s, _)| s).collect();
        last = family.len();
        if family.len() < 2 {
            continue;
        }

        let mut order = family.clone();
        order.shuffle(&mut rng);
        let n = order.len() / 2;
        let a = order[..n].to_vec();
        let b = order[n..2 * n].to_vec();
        let m0 = BoolMatrix::from_fn(n, n, |i, j| intersection(&a[i], &b[j]) == 1)?;
        let matrix = m0.complement();

        let u = BoolMatrix::from_fn(n, m, |i, e| a[i].binary_search(&e).is_ok())?;
        let v = BoolMatrix::from_fn(m, n, |e, j| b[j].binary_search(&e).is_ok())?;
        let neg_u = u.to_real().scale(-1.0);
        let ones_col = RealMatrix::from_fn(n, 1, |_, _| 1.0);
        let ones_row = RealMatrix::from_fn(1, n, |_, _| 1.0);
        let cert = FactorizationCert::new(vec![
            FactorPart { u: Factor::Dense(ones_col), v: Factor::Dense(ones_row) },
            FactorPart { u: Factor::Dense(neg_u), v: Factor::Boolean(v) },
        ]);

        let out = SetSystemConstruction {
            gamma,
            ell,
            m,
            seed,
            used_seed: used,
            retries: retry,
            inclusion_prob: prob,
            expected_family: total * prob,
            sampled_family: sampled,
            family,
            a,
            b,
            m0,
            matrix,
            cert,
        };
        out.verify()?;
        return Ok(out);
    }
    Err(Error::Generation(format!(
        "family degenerated after {SETSYSTEM_RETRIES} retries: expected about {:.1} sets before pruning, last attempt kept {last}",
        total * prob
    )))
}
