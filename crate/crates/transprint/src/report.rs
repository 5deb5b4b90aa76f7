//! Machine- and human-readable renderings.
//!
//! Numbers are written with Rust's shortest round-trip `f64` formatting, so a
//! value read back from CSV or JSON is bit-identical to the one computed.

use std::fmt::Write as _;

use serde::Serialize;
use transprint_core::{CleaningReport, DissimilarityMatrix, MatchResult, MatrixMetric};

/// Full symmetric matrix with a label header row and label first column.
pub fn matrix_to_csv(matrix: &DissimilarityMatrix) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once("").chain(matrix.labels.iter().map(String::as_str));
    writer.write_record(header).expect("in-memory csv");
    for (label, row) in matrix.labels.iter().zip(matrix.rows()) {
        let cells = std::iter::once(label.clone()).chain(row.iter().map(|v| v.to_string()));
        writer.write_record(cells).expect("in-memory csv");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

#[derive(Debug, Serialize)]
pub struct MatrixDocument<'a> {
    pub metric: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feature: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    pub window: usize,
    pub labels: &'a [String],
    pub matrix: Vec<&'a [f64]>,
}

pub fn matrix_document(matrix: &DissimilarityMatrix) -> MatrixDocument<'_> {
    let (feature, delta_max, threshold, window) = match &matrix.metric {
        MatrixMetric::ScaledEuclidean {
            feature,
            delta_max,
            window,
        } => (Some(feature.to_string()), Some(*delta_max), None, *window),
        MatrixMetric::HammingIntraDevice { threshold, window }
        | MatrixMetric::HammingInterDevice { threshold, window } => {
            (None, None, Some(*threshold), *window)
        }
    };
    MatrixDocument {
        metric: matrix.metric.name(),
        feature,
        delta_max,
        threshold,
        window,
        labels: &matrix.labels,
        matrix: matrix.rows().collect(),
    }
}

pub fn matrix_to_json(matrix: &DissimilarityMatrix) -> String {
    let mut out = serde_json::to_string_pretty(&matrix_document(matrix)).expect("matrix json");
    out.push('\n');
    out
}

/// Gnuplot heat-map script reading the CSV written next to it.
pub fn gnuplot_script(csv_file: &str, title: &str) -> String {
    format!(
        "# heat map of {csv_file}\n\
         set datafile separator ','\n\
         set title '{title}'\n\
         set view map\n\
         set size square\n\
         set palette defined (0 'white', 1 'dark-red')\n\
         unset key\n\
         plot '{csv_file}' matrix rowheaders columnheaders using 1:2:3 with image\n"
    )
}

#[derive(Serialize)]
struct CleaningDocument<'a> {
    reports: &'a [CleaningReport],
}

pub fn cleaning_reports_to_json(reports: &[CleaningReport]) -> String {
    let mut out = serde_json::to_string_pretty(&CleaningDocument { reports }).expect("report json");
    out.push('\n');
    out
}

pub fn cleaning_table(reports: &[CleaningReport]) -> String {
    let mut out = format!(
        "{:<20} {:>7} {:>10} {:>8} {:>11} {:>7}\n",
        "device", "input", "duplicate", "invalid", "incomplete", "output"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<20} {:>7} {:>10} {:>8} {:>11} {:>7}",
            r.device_id,
            r.input_count,
            r.removed_duplicates,
            r.removed_invalid,
            r.removed_incomplete,
            r.output_count
        );
    }
    out
}

pub fn match_to_json(result: &MatchResult) -> String {
    let mut out = serde_json::to_string_pretty(result).expect("match json");
    out.push('\n');
    out
}

pub fn match_table(result: &MatchResult) -> String {
    let mut out = format!("probe {}\n", result.probe_id);
    let _ = writeln!(out, "{:>4}  {:<20} {:>10}", "rank", "device", "distance");
    for (rank, c) in result.candidates.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>4}  {:<20} {:>10.6}",
            rank + 1,
            c.device_id,
            c.distance
        );
    }
    let decision = match result.matched() {
        Some(id) => format!("matched {id}"),
        None if result.collision => "no match (tie between devices)".to_string(),
        None => "no match".to_string(),
    };
    let _ = writeln!(
        out,
        "decision: {decision} (threshold {})",
        result.decision_threshold
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use transprint_core::{inter_device_matrix, DeviceHistory};

    fn tiny() -> DissimilarityMatrix {
        let (fleet, _) = transprint_core::generate_fleet(&transprint_core::FleetConfig {
            num_devices: 3,
            qubits_per_device: 4,
            num_cycles: 5,
            ..transprint_core::paper_like_defaults()
        })
        .unwrap();
        let fleet: Vec<DeviceHistory> = fleet;
        inter_device_matrix(&fleet, 5, 0.0005).unwrap()
    }

    #[test]
    fn csv_has_label_header_and_column() {
        let m = tiny();
        let csv = matrix_to_csv(&m);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], ",sim00,sim01,sim02");
        assert!(lines[1].starts_with("sim00,0,"));
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        for (i, row) in reader.records().enumerate() {
            let row = row.unwrap();
            for j in 0..3 {
                assert_eq!(row[j + 1].parse::<f64>().unwrap(), m.get(i, j));
            }
        }
    }

    #[test]
    fn json_carries_metric_parameters() {
        let m = tiny();
        let v: serde_json::Value = serde_json::from_str(&matrix_to_json(&m)).unwrap();
        assert_eq!(v["metric"], "hamming_inter_device");
        assert_eq!(v["threshold"], 0.0005);
        assert_eq!(v["matrix"].as_array().unwrap().len(), 3);
        assert!(v.get("delta_max").is_none());
    }
}
