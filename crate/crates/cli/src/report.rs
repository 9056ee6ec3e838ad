//! JSON report types with stable field names. All reals are rendered by
//! serde_json's shortest round-trip encoding; non-finite values (the
//! out-of-domain sweep cells) become null.

use serde::Serialize;

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub mode: String,
    pub n: usize,
    pub ratios: Vec<f64>,
    pub bounds: BoundsSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    pub duration_seconds: f64,
}

#[derive(Serialize, Default)]
pub struct BoundsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xia: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tung: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

#[derive(Serialize)]
pub struct OracleSection {
    pub closed_form_bound: f64,
    pub max_ratio: f64,
    pub gap: f64,
    pub converged: bool,
    pub iterations: usize,
    pub restarts: usize,
    pub samples: usize,
    pub violations: usize,
    pub worst_ratio: f64,
}

#[derive(Serialize)]
pub struct SweepReport {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub mode: String,
    pub n: usize,
    pub r1: f64,
    pub r2_start: f64,
    pub r2_end: f64,
    pub points: usize,
    pub rows: Vec<SweepRow>,
    pub duration_seconds: f64,
}

#[derive(Serialize)]
pub struct SweepRow {
    pub r2: f64,
    pub xia_bound: f64,
    pub tung_bound: f64,
    pub margin: f64,
    pub domain_ok: bool,
}
