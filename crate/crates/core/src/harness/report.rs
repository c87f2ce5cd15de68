use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Report;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Column order of the per-trial CSV rows, matching the trial record fields.
pub const CSV_COLUMNS: &[&str] = &[
    "index",
    "seed",
    "edges",
    "alpha",
    "alpha_status",
    "gp_bound",
    "tau_upper",
    "tau_exact",
    "tau_status",
    "alon_upper",
    "density_max_c",
    "subsets",
    "biclique_side_max",
    "family",
    "min_uncovered",
    "certificate",
    "certificate_method",
    "violations",
    "elapsed_ms",
];

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => return String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.is_empty() => return String::new(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "# tool,{},{}", report.tool, report.version).unwrap();
    writeln!(out, "# check,{}", report.check.name()).unwrap();
    let config = serde_json::to_string(&report.config).expect("config serialises");
    writeln!(out, "# config,{}", csv_cell(&Value::String(config))).unwrap();
    writeln!(out, "{}", CSV_COLUMNS.join(",")).unwrap();
    for trial in &report.trials {
        let row = serde_json::to_value(trial).expect("trial serialises");
        let cells: Vec<String> = CSV_COLUMNS.iter().map(|c| csv_cell(&row[*c])).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "aggregate,value").unwrap();
    let summary = serde_json::to_value(&report.summary).expect("summary serialises");
    for (key, value) in summary.as_object().expect("summary is an object") {
        writeln!(out, "{key},{}", csv_cell(value)).unwrap();
    }
    writeln!(out, "in_regime,{}", report.in_regime).unwrap();
    writeln!(out, "passed,{}", report.passed).unwrap();
    out
}

/// The report as pretty JSON (with a trailing newline) or CSV. CSV has
/// comment lines for tool and config, one row per trial, then an aggregate
/// block of key/value rows.
pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("report serialises");
            text.push('\n');
            text
        }
        ReportFormat::Csv => render_csv(report),
    }
}

pub fn emit_report(report: &Report, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render_report(report, format)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_bounds_experiment, run_coverage_soundness, ExperimentConfig};

    #[test]
    fn empty_report_files() {
        let r = run_bounds_experiment(&ExperimentConfig::new(5, 0.5, 0, 0)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let json = dir.path().join("r.json");
        emit_report(&r, ReportFormat::Json, &json).unwrap();
        let back: Report = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(back, r);
        let csv = render_report(&r, ReportFormat::Csv);
        let header = csv.lines().position(|l| l.starts_with("index,")).unwrap();
        assert_eq!(csv.lines().nth(header + 1), Some(""));
    }

    #[test]
    fn three_trial_csv() {
        let r = run_coverage_soundness(&ExperimentConfig::new(5, 0.5, 3, 8)).unwrap();
        let csv = render_report(&r, ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        let header = lines.iter().position(|l| l.starts_with("index,")).unwrap();
        assert_eq!(lines[header].split(',').count(), CSV_COLUMNS.len());
        let rows: Vec<&str> = lines[header + 1..].iter().take_while(|l| !l.is_empty()).copied().collect();
        assert_eq!(rows.len(), 3);
        assert!(lines.contains(&"aggregate,value"));
        assert!(lines.contains(&"passed,true"));
    }

    #[test]
    fn csv_columns_match_record_fields() {
        let v = serde_json::to_value(crate::harness::TrialRecord::default()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut columns = CSV_COLUMNS.to_vec();
        keys.sort_unstable();
        columns.sort_unstable();
        assert_eq!(keys, columns);
    }

    #[test]
    fn write_failure_names_the_path() {
        let r = run_bounds_experiment(&ExperimentConfig::new(5, 0.5, 0, 0)).unwrap();
        let err = emit_report(&r, ReportFormat::Json, Path::new("/nonexistent/dir/r.json")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/r.json"));
    }
}
