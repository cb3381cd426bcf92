//! Certified bounds on `γ₂(M) = min_{UV = M} ‖U‖_row · ‖V‖_col`.

mod bounds;
mod cert;
mod exact;

pub use bounds::{
    lower_avg, lower_degree_weighted, lower_degree_weighted_cols, lower_schatten, upper_degeneracy,
    upper_rectangle_cover, upper_rowcol,
};
pub use cert::{Factor, FactorPart, FactorizationCert, LowerCert, SchattenBound, WitnessCert, SUM_TOL, UNIT_TOL};
pub use exact::{exact_gamma2, exact_gamma2_certified, ExactGamma2, ExactOptions, DEFAULT_MAX_ITER, MAX_EXACT_DIM};

use serde::Serialize;

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::format::{sig12_opt, sig12_str};

/// Slack allowed between the best lower and best upper certificate.
pub const BRACKET_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct Gamma2Bounds {
    #[serde(with = "sig12_str")]
    pub lower: f64,
    #[serde(with = "sig12_str")]
    pub upper: f64,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
    pub lower_cert: LowerCert,
    pub upper_cert: FactorizationCert,
    #[serde(with = "sig12_opt")]
    pub exact: Option<f64>,
}

/// Cheapest upper bound among the combinatorial certificates.
pub fn best_upper(m: &BoolMatrix) -> Result<(FactorizationCert, &'static str)> {
    let cands = [
        (upper_rowcol(m), "rowcol"),
        (upper_degeneracy(m), "degeneracy"),
        (upper_rectangle_cover(m), "rectangle_cover"),
    ];
    let mut best: Option<(FactorizationCert, &'static str)> = None;
    for (cert, name) in cands {
        let value = cert.verify(m)?;
        if best.as_ref().is_none_or(|(b, _)| value < b.value) {
            best = Some((cert, name));
        }
    }
    Ok(best.expect("nonempty candidate list"))
}

pub fn best_bounds(m: &BoolMatrix, with_exact: bool) -> Result<Gamma2Bounds> {
    best_bounds_with(m, with_exact.then(ExactOptions::default))
}

/// Aggregates every lower and upper certificate; with `exact` set, also
/// runs the exact solver and checks that it lands inside the bracket.
pub fn best_bounds_with(m: &BoolMatrix, exact: Option<ExactOptions>) -> Result<Gamma2Bounds> {
    let (mut upper_cert, mut upper_source) = best_upper(m)?;
    let (mut lower_cert, mut lower_source) = if m.is_zero() {
        (LowerCert::Schatten(SchattenBound::compute(m.rows(), m.cols(), 0, 0)), "trivial")
    } else {
        let cands = [
            (LowerCert::Witness(lower_avg(m)?), "average"),
            (LowerCert::Witness(lower_degree_weighted(m)?), "degree_weighted_rows"),
            (LowerCert::Witness(lower_degree_weighted_cols(m)?), "degree_weighted_cols"),
            (LowerCert::Schatten(lower_schatten(m)?), "schatten"),
        ];
        let mut best = None::<(LowerCert, &'static str)>;
        for (c, name) in cands {
            if best.as_ref().is_none_or(|(b, _)| c.value() > b.value()) {
                best = Some((c, name));
            }
        }
        best.expect("nonempty")
    };

    let mut exact_value = None;
    if let Some(opts) = exact {
        let ex = exact_gamma2_certified(m, opts)?;
        let (lo, up) = (lower_cert.value(), upper_cert.value);
        if ex.value < lo - opts.tol || ex.value > up + opts.tol {
            return Err(Error::internal(format!(
                "exact γ₂ {} outside certified bracket [{lo}, {up}]",
                ex.value
            )));
        }
        if ex.witness.value > lower_cert.value() {
            lower_cert = LowerCert::Witness(ex.witness);
            lower_source = "exact_dual";
        }
        if ex.factorization.value < upper_cert.value {
            upper_cert = ex.factorization;
            upper_source = "exact_primal";
        }
        exact_value = Some(ex.value);
    }

    let (lower, upper) = (lower_cert.value(), upper_cert.value);
    if lower > upper + BRACKET_TOL {
        return Err(Error::internal(format!("lower bound {lower} exceeds upper bound {upper}")));
    }
    Ok(Gamma2Bounds { lower, upper, lower_source, upper_source, lower_cert, upper_cert, exact: exact_value })
}
