use std::collections::BTreeMap;
use std::time::Instant;

use gamma2lab::blocky::{recognize_blocky, thin_decompose};
use gamma2lab::constructions::{gen_p_modp, gen_p_real, gen_setsystem};
use gamma2lab::discrepancy::{disc_exact, mnt_report, MAX_DISC_COLS};
use gamma2lab::extraction::{biregularize, dense_submatrix, dense_submatrix_best_effort, regularize};
use gamma2lab::format::sig12;
use gamma2lab::gamma2::{best_bounds_with, ExactOptions};
use gamma2lab::semilinear::{gen_dominance, gen_points_boxes, gen_points_corners, gen_pol_h_random};
use gamma2lab::{experiments, BoolMatrix, Error, Result};
use serde_json::{json, Value};

use crate::report::{AnalysisReport, BlockyField, DiscField, Gamma2Field, Outcome, Source};
use crate::{emit, load, AnalyzeArgs, Experiment, ExperimentCmd, ExtractArgs, Family, GenCmd, GenFormat, TableFormat};

pub fn gen(g: GenCmd) -> Result<()> {
    let seed = g.common.seed;
    let (provenance, matrix, extra): (Value, BoolMatrix, Option<Value>) = match g.family {
        Family::Pmodp { q, p } => (json!({"family": "pmodp", "q": q, "p": p}), gen_p_modp(q, p)?, None),
        Family::Preal { q, p } => (json!({"family": "preal", "q": q, "p": p}), gen_p_real(q, p)?, None),
        Family::Setsystem { gamma, m } => {
            let c = gen_setsystem(gamma, m, seed)?;
            let extra = serde_json::to_value(&c)?;
            (
                json!({"family": "setsystem", "gamma": sig12(gamma), "m": m, "seed": seed, "used_seed": c.used_seed, "retries": c.retries}),
                c.matrix,
                Some(extra),
            )
        }
        Family::Boxes { n, d } => {
            let inst = gen_points_boxes(n, d, seed)?;
            (json!({"family": "boxes", "n": n, "d": d, "seed": seed}), inst.biadjacency()?, Some(serde_json::to_value(&inst)?))
        }
        Family::Corners { n, d } => {
            let inst = gen_points_corners(n, d, seed)?;
            (json!({"family": "corners", "n": n, "d": d, "seed": seed}), inst.biadjacency()?, Some(serde_json::to_value(&inst)?))
        }
        Family::Polh { n, d, s } => {
            let inst = gen_pol_h_random(n, d, s, seed)?;
            (json!({"family": "polh", "n": n, "d": d, "s": s, "seed": seed}), inst.matrix()?, Some(serde_json::to_value(&inst)?))
        }
        Family::Dominance { n, s } => {
            let inst = gen_dominance(n, s, seed)?;
            (json!({"family": "dominance", "n": n, "s": s, "seed": seed}), inst.biadjacency()?, Some(serde_json::to_value(&inst)?))
        }
        Family::Random { m, n, density } => (
            json!({"family": "random", "m": m, "n": n, "density": sig12(density), "seed": seed}),
            BoolMatrix::random(m, n, density, seed)?,
            None,
        ),
    };
    let text = match g.format {
        GenFormat::Bmx => matrix.to_bmx_string(),
        GenFormat::Json => {
            let mut v = json!({
                "provenance": provenance,
                "rows": matrix.rows(),
                "cols": matrix.cols(),
                "ones": matrix.count_ones(),
                "bmx": matrix.to_bmx_string(),
            });
            if let Some(x) = extra {
                v["instance"] = x;
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    emit(g.common.out.as_deref(), &text)?;
    let fields: Vec<String> = provenance
        .as_object()
        .expect("provenance is an object")
        .iter()
        .map(|(k, v)| format!("{k}={}", v.as_str().map_or_else(|| v.to_string(), str::to_string)))
        .collect();
    eprintln!("gen {} -> {}x{}, {} ones", fields.join(" "), matrix.rows(), matrix.cols(), matrix.count_ones());
    Ok(())
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn analyze(a: AnalyzeArgs) -> Result<()> {
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let m = load(&a.input)?;
    timings.insert("load", ms(t));

    let t = Instant::now();
    let degeneracy = m.degeneracy().value;
    let four_cycle_free = m.is_four_cycle_free();
    timings.insert("structure", ms(t));

    let t = Instant::now();
    let mut exact_field = None;
    let bounds = if a.exact {
        let opts = ExactOptions { tol: a.tol, max_dim: a.max_exact_dim, ..Default::default() };
        match best_bounds_with(&m, Some(opts)) {
            Ok(b) => {
                exact_field = b.exact.map(|v| Outcome::Done(sig12(v)));
                b
            }
            Err(e @ (Error::Capability(_) | Error::Convergence { .. })) => {
                exact_field = Some(Outcome::skipped(e));
                best_bounds_with(&m, None)?
            }
            Err(e) => return Err(e),
        }
    } else {
        best_bounds_with(&m, None)?
    };
    timings.insert(if a.exact { "gamma2_with_exact" } else { "gamma2" }, ms(t));

    let blocky = a.blocky.then(|| {
        let t = Instant::now();
        let d = thin_decompose(&m);
        let out = d.verify(&m).map(|()| BlockyField { terms: d.len(), is_blocky: recognize_blocky(&m).is_some() });
        timings.insert("blocky", ms(t));
        out
    });
    let blocky = blocky.transpose()?;

    let discrepancy = if a.disc {
        let t = Instant::now();
        let out = if m.cols() > MAX_DISC_COLS {
            Outcome::skipped(format!("exact discrepancy needs at most {MAX_DISC_COLS} columns, got {}", m.cols()))
        } else {
            let d = disc_exact(&m)?;
            let mnt = mnt_report(&m, a.disc_samples, a.common.seed)?;
            Outcome::Done(DiscField { disc: d.value, argmin: d.argmin, mnt })
        };
        timings.insert("discrepancy", ms(t));
        Some(out)
    } else {
        None
    };

    let report = AnalysisReport {
        source: Source { path: a.input.display().to_string() },
        rows: m.rows(),
        cols: m.cols(),
        ones: m.count_ones(),
        avg_degree: sig12(m.avg_degree()),
        degeneracy,
        four_cycle_free,
        gamma2: Gamma2Field {
            lower: sig12(bounds.lower),
            upper: sig12(bounds.upper),
            lower_source: bounds.lower_source,
            upper_source: bounds.upper_source,
            exact: exact_field,
        },
        certificates: if a.certs {
            Some(json!({"lower": bounds.lower_cert, "upper": bounds.upper_cert}))
        } else {
            None
        },
        blocky,
        discrepancy,
        timings_ms: timings,
    };
    emit(a.common.out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))
}

pub fn extract(x: ExtractArgs) -> Result<()> {
    let m = load(&x.input)?;
    let reg = regularize(&m)?;
    let bireg = biregularize(&m)?;
    let dense = match x.z {
        None => Value::Null,
        Some(z) => {
            let r = if x.best_effort {
                dense_submatrix_best_effort(&m, z, x.common.seed)
            } else {
                dense_submatrix(&m, z, x.common.seed)
            };
            match r {
                Ok(d) => serde_json::to_value(d)?,
                Err(e @ Error::Capability(_)) => Value::String(format!("skipped: {e}")),
                Err(e) => return Err(e),
            }
        }
    };
    let v = json!({
        "source": {"path": x.input.display().to_string()},
        "avg_degree": sig12(m.avg_degree()),
        "regularized": reg,
        "biregular": bireg,
        "dense_submatrix": dense,
    });
    emit(x.common.out.as_deref(), &(serde_json::to_string_pretty(&v)? + "\n"))
}

pub fn experiment(e: ExperimentCmd) -> Result<()> {
    let seed = e.common.seed;
    let table = match e.name {
        Experiment::C4sandwich { p } => experiments::c4sandwich(&p)?,
        Experiment::Zarabound { s, t, n } => experiments::zarabound(s, t, &n, seed)?,
        Experiment::Gammagrowth { d, n } => experiments::gammagrowth(d, &n, seed)?,
        Experiment::Construction { gamma, m, seeds } => experiments::construction(gamma, &m, seeds, seed)?,
    };
    let text = match e.format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => serde_json::to_string_pretty(&table)? + "\n",
    };
    emit(e.common.out.as_deref(), &text)
}
