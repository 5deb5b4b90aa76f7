//! Calibration record documents.
//!
//! One JSON document per calibration cycle:
//!
//! ```json
//! {
//!   "device_id": "washington",
//!   "cycle_timestamp": "2022-03-01T00:00:00Z",
//!   "num_qubits": 2,
//!   "qubits": [
//!     { "index": 0, "frequency_ghz": 4.97, "t1_us": 101.2, "t2_us": 88.0, "readout_error": 0.021 },
//!     { "index": 1, "frequency_ghz": 5.11, "t1_us": 97.5 }
//!   ],
//!   "gates": [ { "name": "cx", "qubits": [0, 1], "error": 0.0093, "duration_ns": 320.0 } ],
//!   "coupling": [[0, 1]]
//! }
//! ```
//!
//! Optional measurements may be omitted or `null`; they parse as absent.
//! A qubit with no entry at all is treated as having every value absent.

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use transprint_core::{
    CalibrationRecord, CouplingMap, GateCalibration, QubitCalibration, Timestamp,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecordFormat {
    #[default]
    JsonV1,
}

impl FromStr for RecordFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json-v1" | "json" => Ok(RecordFormat::JsonV1),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for RecordFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordFormat::JsonV1 => f.write_str("json-v1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordDocument {
    pub device_id: String,
    pub cycle_timestamp: String,
    pub num_qubits: usize,
    pub qubits: Vec<QubitEntry>,
    #[serde(default)]
    pub gates: Vec<GateEntry>,
    #[serde(default)]
    pub coupling: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QubitEntry {
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1_us: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2_us: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub readout_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibrated_at: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateEntry {
    pub name: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ns: Option<f64>,
}

/// RFC 3339 in UTC with a `Z` suffix and only as many fractional digits as
/// needed.
pub fn format_timestamp(ts: &Timestamp) -> String {
    ts.to_rfc3339_opts(SecondsFormat::AutoSi, true)
}

pub fn parse_timestamp(s: &str, field: &str) -> Result<Timestamp> {
    DateTime::parse_from_rfc3339(s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| Error::Malformed {
            offset: None,
            field: Some(field.to_string()),
            message: format!("`{s}` is not an ISO-8601 timestamp: {e}"),
        })
}

/// Byte offset of a 1-based (line, column) position reported by serde_json.
fn byte_offset(raw: &[u8], line: usize, column: usize) -> usize {
    let line_start = raw
        .split_inclusive(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(<[u8]>::len)
        .sum::<usize>();
    (line_start + column.saturating_sub(1)).min(raw.len())
}

/// Backtick-quoted name in a serde message, e.g. "missing field `device_id`".
fn field_in_message(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}

/// Parses one record document in the format named by `schema`.
pub fn parse_record(raw: &[u8], schema: &str) -> Result<CalibrationRecord> {
    match schema.parse::<RecordFormat>()? {
        RecordFormat::JsonV1 => parse_json_v1(raw),
    }
}

pub fn parse_json_v1(raw: &[u8]) -> Result<CalibrationRecord> {
    let doc: RecordDocument = serde_json::from_slice(raw).map_err(|e| {
        let message = e.to_string();
        Error::Malformed {
            offset: Some(byte_offset(raw, e.line(), e.column())),
            field: field_in_message(&message),
            message,
        }
    })?;
    document_to_record(doc)
}

pub fn document_to_record(doc: RecordDocument) -> Result<CalibrationRecord> {
    let malformed = |field: String, message: String| Error::Malformed {
        offset: None,
        field: Some(field),
        message,
    };
    let n = doc.num_qubits;
    let mut qubits = vec![QubitCalibration::default(); n];
    let mut seen = vec![false; n];
    for (i, entry) in doc.qubits.into_iter().enumerate() {
        let field = format!("qubits[{i}].index");
        if entry.index >= n {
            return Err(malformed(
                field,
                format!("qubit index {} outside 0..{n}", entry.index),
            ));
        }
        if std::mem::replace(&mut seen[entry.index], true) {
            return Err(malformed(
                field,
                format!("qubit {} listed twice", entry.index),
            ));
        }
        let calibrated_at = entry
            .calibrated_at
            .as_deref()
            .map(|s| parse_timestamp(s, &format!("qubits[{i}].calibrated_at")))
            .transpose()?;
        qubits[entry.index] = QubitCalibration {
            frequency: entry.frequency_ghz,
            t1: entry.t1_us,
            t2: entry.t2_us,
            readout_error: entry.readout_error,
            calibrated_at,
        };
    }
    let gates = doc
        .gates
        .into_iter()
        .map(|g| GateCalibration {
            name: g.name,
            qubits: g.qubits,
            error: g.error,
            duration_ns: g.duration_ns,
        })
        .collect();
    Ok(CalibrationRecord {
        cycle_timestamp: parse_timestamp(&doc.cycle_timestamp, "cycle_timestamp")?,
        device_id: doc.device_id,
        qubits,
        gates,
        coupling: CouplingMap::new(n, doc.coupling.into_iter().map(|[a, b]| (a, b))),
    })
}

pub fn record_to_document(record: &CalibrationRecord) -> RecordDocument {
    RecordDocument {
        device_id: record.device_id.clone(),
        cycle_timestamp: format_timestamp(&record.cycle_timestamp),
        num_qubits: record.coupling.num_qubits,
        qubits: record
            .qubits
            .iter()
            .enumerate()
            .map(|(index, q)| QubitEntry {
                index,
                frequency_ghz: q.frequency,
                t1_us: q.t1,
                t2_us: q.t2,
                readout_error: q.readout_error,
                calibrated_at: q.calibrated_at.as_ref().map(format_timestamp),
            })
            .collect(),
        gates: record
            .gates
            .iter()
            .map(|g| GateEntry {
                name: g.name.clone(),
                qubits: g.qubits.clone(),
                error: g.error,
                duration_ns: g.duration_ns,
            })
            .collect(),
        coupling: record.coupling.edges.iter().map(|&(a, b)| [a, b]).collect(),
    }
}

/// Pretty-printed document bytes, newline terminated.
pub fn serialize_record(record: &CalibrationRecord, format: RecordFormat) -> Vec<u8> {
    match format {
        RecordFormat::JsonV1 => {
            let mut out = serde_json::to_vec_pretty(&record_to_document(record))
                .expect("record documents always serialize");
            out.push(b'\n');
            out
        }
    }
}
