//! Machine-readable experiment reports.
//!
//! JSON output is canonical: struct fields are declared in alphabetical
//! order, map keys are sorted, and every count is an integer, so identical
//! configurations serialize byte-identically. The CSV column order is fixed
//! and documented in the README.

use seplearn::OracleStats;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One named bound: `observed` against `bound`, with the pass verdict
/// computed by the runner (comparisons differ per bound: equality for the
/// size checks, at-most for the count checks).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: u64,
    pub name: String,
    pub observed: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub delta: Option<usize>,
    pub kappa: Option<usize>,
    pub m: usize,
    pub n: usize,
    pub name: String,
    pub tw: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketReport {
    pub count: u64,
    pub max_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub buckets: BTreeMap<String, BucketReport>,
    pub max_size_seen: usize,
    pub per_size: Vec<(usize, u64)>,
    pub raw_calls: u64,
    pub total_tests: u64,
}

impl From<&OracleStats> for StatsReport {
    fn from(stats: &OracleStats) -> Self {
        StatsReport {
            buckets: stats
                .per_bucket_counts
                .iter()
                .map(|(name, b)| {
                    (
                        name.clone(),
                        BucketReport {
                            count: b.count,
                            max_size: b.max_size,
                        },
                    )
                })
                .collect(),
            max_size_seen: stats.max_size_seen,
            per_size: stats
                .per_size_counts
                .iter()
                .map(|(&size, &count)| (size, count))
                .collect(),
            raw_calls: stats.raw_calls,
            total_tests: stats.total_tests,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub bounds: Vec<BoundCheck>,
    pub error: Option<String>,
    pub instance: InstanceMeta,
    pub learner: String,
    pub stats: StatsReport,
    pub success: bool,
}

impl Report {
    pub fn failing_bounds(&self) -> Vec<&str> {
        self.bounds
            .iter()
            .filter(|b| !b.pass)
            .map(|b| b.name.as_str())
            .collect()
    }
}

pub fn write_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn parse_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

pub const CSV_HEADER: &str =
    "instance,learner,n,m,kappa,delta,tw,success,total_tests,raw_calls,max_size_seen,bounds_failed,error\n";

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// One CSV row in the fixed column order. Free-text fields are quoted.
pub fn write_csv_row(report: &Report) -> String {
    let failed = report.failing_bounds().join(";");
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        quote(&report.instance.name),
        report.learner,
        report.instance.n,
        report.instance.m,
        opt(report.instance.kappa),
        opt(report.instance.delta),
        opt(report.instance.tw),
        report.success,
        report.stats.total_tests,
        report.stats.raw_calls,
        report.stats.max_size_seen,
        quote(&failed),
        quote(report.error.as_deref().unwrap_or("")),
    )
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
