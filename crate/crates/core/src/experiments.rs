//! Parameter sweeps producing CSV tables.
//!
//! Instances fan out over the rayon pool; rows come back in instance order,
//! and floats are printed with 12 significant digits, so equal arguments
//! give byte-identical output.

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{gen_p_modp, gen_setsystem, is_prime};
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::gamma2::best_bounds;
use crate::seed;
use crate::semilinear::{box_factorization_value, count_dominance_edges, f_s_bound, gen_dominance, gen_points_boxes, thin_to_four_cycle_free};

/// A table with `#` comment lines before and after the data.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footer: Vec<String>,
}

impl Table {
    fn new(header: &[&str], columns: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(&format!("# {h}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        for f in &self.footer {
            out.push_str(&format!("# {f}\n"));
        }
        out
    }

    /// Values of one column.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k].as_str()).collect())
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(ys).filter(|(x, y)| **x > 0.0 && **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn yes(b: bool) -> String {
    b.to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C4Row {
    pub p: usize,
    pub q: usize,
    pub dgc: usize,
    pub four_cycle_free: bool,
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
}

/// `P_p(q, p)` for every prime `p` given and every `1 ≤ q ≤ p − 1`.
pub fn c4sandwich_rows(ps: &[usize]) -> Result<Vec<C4Row>> {
    if let Some(&p) = ps.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let jobs: Vec<(usize, usize)> = ps.iter().flat_map(|&p| (1..p).map(move |q| (p, q))).collect();
    jobs.par_iter()
        .map(|&(p, q)| {
            let m = gen_p_modp(q, p)?;
            let b = best_bounds(&m, false)?;
            Ok(C4Row {
                p,
                q,
                dgc: m.degeneracy().value,
                four_cycle_free: m.is_four_cycle_free(),
                lower: b.lower,
                upper: b.upper,
                ratio: b.upper / b.lower,
            })
        })
        .collect()
}

pub fn c4sandwich(ps: &[usize]) -> Result<Table> {
    let rows = c4sandwich_rows(ps)?;
    let mut t = Table::new(
        &[
            "c4sandwich: certified γ₂ bounds on P_p(q, p)",
            "p,q: parameters; dgc: degeneracy; lower/upper: certified bounds; ratio = upper/lower",
            "upper_le_2sqrtq: upper ≤ 2√q + 1e-9",
        ],
        &["p", "q", "dgc", "four_cycle_free", "lower", "upper", "ratio", "upper_le_2sqrtq"],
    );
    for r in &rows {
        t.rows.push(vec![
            r.p.to_string(),
            r.q.to_string(),
            r.dgc.to_string(),
            yes(r.four_cycle_free),
            sig12(r.lower),
            sig12(r.upper),
            sig12(r.ratio),
            yes(r.upper <= 2.0 * (r.q as f64).sqrt() + 1e-9),
        ]);
    }
    let worst = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    t.footer.push(format!("max ratio {}", sig12(worst)));
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZaraRow {
    pub n: usize,
    pub rows_kept: usize,
    pub edges: u64,
    pub bound: u128,
}

/// Dominance graphs on `n + n` points in `[0,1)^s`, thinned to
/// `K_{2,2}`-free by dropping rows, against `f_s(kept + n, 2, s)`.
pub fn zarabound_rows(s: usize, t: usize, ns: &[usize], seed: u64) -> Result<Vec<ZaraRow>> {
    if t != 2 {
        return Err(Error::input(format!("only t = 2 is supported, got t = {t}")));
    }
    ns.par_iter()
        .enumerate()
        .map(|(k, &n)| {
            let inst = gen_dominance(n, s, seed::derive(seed, k as u64))?;
            let m = inst.biadjacency()?;
            let kept = thin_to_four_cycle_free(&m);
            let cols: Vec<usize> = (0..n).collect();
            let sub = inst.restrict(&kept, &cols);
            let edges = count_dominance_edges(&sub);
            Ok(ZaraRow { n, rows_kept: kept.len(), edges, bound: f_s_bound(kept.len() + n, t, s)? })
        })
        .collect()
}

pub fn zarabound(s: usize, t: usize, ns: &[usize], seed: u64) -> Result<Table> {
    let rows = zarabound_rows(s, t, ns, seed)?;
    let mut tab = Table::new(
        &[
            &format!("zarabound: K_{{{t},{t}}}-free dominance graphs in dimension s={s}, seed={seed}"),
            "n: points per side; rows_kept: rows after thinning; edges: dominance pairs among kept rows",
            "bound: f_s evaluated at the total vertex count; ok: edges ≤ bound",
        ],
        &["n", "s", "t", "rows_kept", "edges", "bound", "ok"],
    );
    for r in &rows {
        tab.rows.push(vec![
            r.n.to_string(),
            s.to_string(),
            t.to_string(),
            r.rows_kept.to_string(),
            r.edges.to_string(),
            r.bound.to_string(),
            yes(r.edges as u128 <= r.bound),
        ]);
    }
    Ok(tab)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub ones: usize,
    pub lower: f64,
    pub lower_source: String,
    pub upper: f64,
    pub upper_source: String,
    pub box_value: f64,
    pub best_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Growth {
    pub d: usize,
    pub rows: Vec<GrowthRow>,
    pub exp_lower: Option<f64>,
    pub exp_upper: Option<f64>,
    pub exp_box: Option<f64>,
    pub exp_best: Option<f64>,
}

/// Points against boxes in `[0,1)^d` for each `n`.
pub fn gammagrowth_rows(d: usize, ns: &[usize], seed: u64) -> Result<Growth> {
    let rows: Vec<GrowthRow> = ns
        .par_iter()
        .enumerate()
        .map(|(k, &n)| {
            let inst = gen_points_boxes(n, d, seed::derive(seed, k as u64))?;
            let m = inst.biadjacency()?;
            let box_value = box_factorization_value(&inst)?;
            if m.is_zero() {
                return Ok(GrowthRow {
                    n,
                    ones: 0,
                    lower: 0.0,
                    lower_source: "trivial".into(),
                    upper: 0.0,
                    upper_source: "trivial".into(),
                    box_value,
                    best_upper: 0.0,
                });
            }
            let b = best_bounds(&m, false)?;
            Ok(GrowthRow {
                n,
                ones: m.count_ones(),
                lower: b.lower,
                lower_source: b.lower_source.to_string(),
                upper: b.upper,
                upper_source: b.upper_source.to_string(),
                box_value,
                best_upper: b.upper.min(box_value),
            })
        })
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let fit = |f: fn(&GrowthRow) -> f64| fit_exponent(&xs, &rows.iter().map(f).collect::<Vec<_>>());
    Ok(Growth {
        d,
        exp_lower: fit(|r| r.lower),
        exp_upper: fit(|r| r.upper),
        exp_box: fit(|r| r.box_value),
        exp_best: fit(|r| r.best_upper),
        rows,
    })
}

/// Exponent above which the growth curve is flagged.
pub const GROWTH_WARN_EXPONENT: f64 = 0.2;

pub fn gammagrowth(d: usize, ns: &[usize], seed: u64) -> Result<Table> {
    let g = gammagrowth_rows(d, ns, seed)?;
    let mut t = Table::new(
        &[
            &format!("gammagrowth: points vs boxes in dimension d={d}, seed={seed}"),
            "lower/upper: best certified bounds from the generic certificates",
            "box_value: value of the tensored threshold factorization; best_upper = min(upper, box_value)",
            &format!("best_over_logd: best_upper / (log2 n)^{d}"),
        ],
        &["n", "ones", "lower", "lower_source", "upper", "upper_source", "box_value", "best_upper", "best_over_logd"],
    );
    for r in &g.rows {
        let logd = (r.n.max(2) as f64).log2().powi(d as i32);
        t.rows.push(vec![
            r.n.to_string(),
            r.ones.to_string(),
            sig12(r.lower),
            r.lower_source.clone(),
            sig12(r.upper),
            r.upper_source.clone(),
            sig12(r.box_value),
            sig12(r.best_upper),
            sig12(r.best_upper / logd),
        ]);
    }
    let show = |e: Option<f64>| e.map_or("n/a".to_string(), sig12);
    t.footer.push(format!("fitted exponent of n, lower: {}", show(g.exp_lower)));
    t.footer.push(format!("fitted exponent of n, upper: {}", show(g.exp_upper)));
    t.footer.push(format!("fitted exponent of n, box_value: {}", show(g.exp_box)));
    t.footer.push(format!("fitted exponent of n, best_upper: {}", show(g.exp_best)));
    if g.exp_best.is_some_and(|e| e > GROWTH_WARN_EXPONENT) {
        t.footer.push(format!("warning: best_upper exponent exceeds {GROWTH_WARN_EXPONENT}"));
    }
    Ok(t)
}

/// Largest ground-set size for the exhaustive all-ones submatrix search.
const KTT_CHECK_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionRow {
    pub m: usize,
    pub seed_index: usize,
    pub used_seed: u64,
    pub retries: u64,
    pub ell: usize,
    pub n: usize,
    pub expected_family: f64,
    pub sampled_family: usize,
    pub family: usize,
    pub m0_ones: usize,
    pub cert_value: f64,
    /// Smallest `t` with `t > 8·2^{−ℓ}·n`.
    pub t_threshold: usize,
    /// `"free"`, `"found"`, `"vacuous"` (threshold above `n`) or `"skipped"`.
    pub ktt: String,
}

pub fn construction_rows(gamma: f64, ms: &[usize], seeds: usize, seed: u64) -> Result<Vec<ConstructionRow>> {
    let jobs: Vec<(usize, usize)> = ms.iter().flat_map(|&m| (0..seeds).map(move |k| (m, k))).collect();
    jobs.par_iter()
        .enumerate()
        .map(|(idx, &(m, k))| {
            let c = gen_setsystem(gamma, m, seed::derive(seed, idx as u64))?;
            c.verify()?;
            let n = c.n();
            let t_threshold = (8.0 * n as f64 / 2f64.powi(c.ell as i32)).floor() as usize + 1;
            let ktt = if t_threshold > n {
                "vacuous"
            } else if n > KTT_CHECK_MAX_N {
                "skipped"
            } else if c.matrix.has_allones_submatrix(t_threshold).is_some() {
                "found"
            } else {
                "free"
            };
            Ok(ConstructionRow {
                m,
                seed_index: k,
                used_seed: c.used_seed,
                retries: c.retries,
                ell: c.ell,
                n,
                expected_family: c.expected_family,
                sampled_family: c.sampled_family,
                family: c.family.len(),
                m0_ones: c.m0.count_ones(),
                cert_value: c.cert.value,
                t_threshold,
                ktt: ktt.to_string(),
            })
        })
        .collect()
}

pub fn construction(gamma: f64, ms: &[usize], seeds: usize, seed: u64) -> Result<Table> {
    let rows = construction_rows(gamma, ms, seeds, seed)?;
    let mut t = Table::new(
        &[
            &format!("construction: J − M0 from random ℓ-set systems, γ={}, seed={seed}", sig12(gamma)),
            "expected/sampled/family: family size before sampling, after sampling, after pruning",
            "m0_lt_10m2: M0 has fewer than 10·m² ones; cert_le_gamma: certificate value ≤ γ",
            "ktt: K_{t,t} search in M for t = t_threshold (free/found/vacuous/skipped)",
        ],
        &[
            "m",
            "seed_index",
            "used_seed",
            "retries",
            "ell",
            "n",
            "expected_family",
            "sampled_family",
            "family",
            "m0_ones",
            "m0_lt_10m2",
            "cert_value",
            "cert_le_gamma",
            "t_threshold",
            "ktt",
        ],
    );
    for r in &rows {
        t.rows.push(vec![
            r.m.to_string(),
            r.seed_index.to_string(),
            r.used_seed.to_string(),
            r.retries.to_string(),
            r.ell.to_string(),
            r.n.to_string(),
            sig12(r.expected_family),
            r.sampled_family.to_string(),
            r.family.to_string(),
            r.m0_ones.to_string(),
            yes(r.m0_ones < 10 * r.m * r.m),
            sig12(r.cert_value),
            yes(r.cert_value <= gamma + 1e-9),
            r.t_threshold.to_string(),
            r.ktt.clone(),
        ]);
    }
    Ok(t)
}
