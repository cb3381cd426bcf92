use std::collections::BTreeMap;

use gamma2lab::discrepancy::MntReport;
use serde::Serialize;

/// A computed value, or why it was not computed.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome<T> {
    Done(T),
    Skipped(String),
}

impl<T> Outcome<T> {
    pub fn skipped(reason: impl std::fmt::Display) -> Self {
        Outcome::Skipped(format!("skipped: {reason}"))
    }
}

#[derive(Debug, Serialize)]
pub struct Source {
    pub path: String,
}

#[derive(Debug, Serialize)]
pub struct Gamma2Field {
    pub lower: String,
    pub upper: String,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
    /// `null` unless requested.
    pub exact: Option<Outcome<String>>,
}

#[derive(Debug, Serialize)]
pub struct BlockyField {
    pub terms: usize,
    pub is_blocky: bool,
}

#[derive(Debug, Serialize)]
pub struct DiscField {
    pub disc: usize,
    pub argmin: Vec<i8>,
    #[serde(flatten)]
    pub mnt: MntReport,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub source: Source,
    pub rows: usize,
    pub cols: usize,
    pub ones: usize,
    pub avg_degree: String,
    pub degeneracy: usize,
    pub four_cycle_free: bool,
    pub gamma2: Gamma2Field,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<serde_json::Value>,
    pub blocky: Option<BlockyField>,
    pub discrepancy: Option<Outcome<DiscField>>,
    /// Wall-clock milliseconds per stage.
    pub timings_ms: BTreeMap<&'static str, f64>,
}
