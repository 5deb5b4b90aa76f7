//! Record cleaning.
//!
//! Three passes, applied to every record in input order and in this
//! precedence:
//!
//! 1. **Duplicate cycles.** A record whose cycle timestamp was already seen
//!    for the device is dropped; the first occurrence wins.
//! 2. **Invalid data.** Any value outside its physical range, malformed
//!    structure (qubit count, gate operands, coupling edges), or a cycle in
//!    which every reported two-qubit gate error is exactly 1.
//! 3. **Incomplete or inconsistent records.** A qubit missing any of
//!    frequency / T1 / T2 / readout error, a gate without a reported error,
//!    or a two-qubit gate on a pair absent from the coupling map.
//!
//! Records are removed whole; values are never repaired or reordered.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::record::{CalibrationRecord, DeviceHistory, QubitAttribute, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RemovalReason {
    Duplicate,
    Invalid,
    Incomplete,
    /// Gate reported on an uncoupled pair. Counted with `Incomplete`.
    Inconsistent,
}

impl RemovalReason {
    pub fn name(self) -> &'static str {
        match self {
            RemovalReason::Duplicate => "duplicate",
            RemovalReason::Invalid => "invalid",
            RemovalReason::Incomplete => "incomplete",
            RemovalReason::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Removal {
    /// Position of the record in the input history.
    pub index: usize,
    pub cycle_timestamp: Timestamp,
    pub reason: RemovalReason,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CleaningReport {
    pub device_id: String,
    pub input_count: usize,
    pub removed_duplicates: usize,
    pub removed_invalid: usize,
    /// Incomplete and inconsistent records together.
    pub removed_incomplete: usize,
    pub output_count: usize,
    pub removals: Vec<Removal>,
}

impl CleaningReport {
    /// `input = output + duplicates + invalid + incomplete`.
    pub fn is_balanced(&self) -> bool {
        self.input_count
            == self.output_count
                + self.removed_duplicates
                + self.removed_invalid
                + self.removed_incomplete
    }
}

/// Cleans every history independently.
pub fn clean(histories: &[DeviceHistory]) -> Vec<(DeviceHistory, CleaningReport)> {
    histories.iter().map(clean_history).collect()
}

pub fn clean_history(history: &DeviceHistory) -> (DeviceHistory, CleaningReport) {
    let mut seen = BTreeSet::new();
    let mut kept = Vec::with_capacity(history.records.len());
    let mut report = CleaningReport {
        device_id: history.device_id.clone(),
        input_count: history.records.len(),
        ..CleaningReport::default()
    };

    for (index, record) in history.records.iter().enumerate() {
        let verdict = if !seen.insert(record.cycle_timestamp) {
            Some((
                RemovalReason::Duplicate,
                String::from("cycle timestamp already seen"),
            ))
        } else if let Some(detail) = invalid_reason(record, history) {
            Some((RemovalReason::Invalid, detail))
        } else {
            defect_reason(record)
        };

        match verdict {
            None => kept.push(record.clone()),
            Some((reason, detail)) => {
                match reason {
                    RemovalReason::Duplicate => report.removed_duplicates += 1,
                    RemovalReason::Invalid => report.removed_invalid += 1,
                    RemovalReason::Incomplete | RemovalReason::Inconsistent => {
                        report.removed_incomplete += 1
                    }
                }
                report.removals.push(Removal {
                    index,
                    cycle_timestamp: record.cycle_timestamp,
                    reason,
                    detail,
                });
            }
        }
    }

    report.output_count = kept.len();
    let cleaned = DeviceHistory {
        device_id: history.device_id.clone(),
        num_qubits: history.num_qubits,
        records: kept,
    };
    (cleaned, report)
}

/// Why `record` is invalid, if it is.
pub fn invalid_reason(record: &CalibrationRecord, history: &DeviceHistory) -> Option<String> {
    let n = record.coupling.num_qubits;
    if record.device_id != history.device_id {
        return Some(format!(
            "record belongs to {} not {}",
            record.device_id, history.device_id
        ));
    }
    if n != history.num_qubits {
        return Some(format!(
            "record has {n} qubits, device has {}",
            history.num_qubits
        ));
    }
    if record.qubits.len() != n {
        return Some(format!(
            "{} qubit entries for a {n}-qubit coupling map",
            record.qubits.len()
        ));
    }
    if let Some((a, b)) = record.coupling.first_invalid_edge() {
        return Some(format!("coupling edge ({a}, {b}) is not valid"));
    }
    for (k, qubit) in record.qubits.iter().enumerate() {
        for attribute in QubitAttribute::ALL {
            if let Some(value) = attribute.get(qubit) {
                if !attribute.in_range(value) {
                    return Some(format!(
                        "qubit {k} {} = {value} out of range",
                        attribute.name()
                    ));
                }
            }
        }
    }
    for gate in &record.gates {
        if gate.qubits.is_empty() {
            return Some(format!("gate {} has no operands", gate.name));
        }
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= n) {
            return Some(format!("gate {} references qubit {q}", gate.name));
        }
        let distinct: BTreeSet<_> = gate.qubits.iter().collect();
        if distinct.len() != gate.qubits.len() {
            return Some(format!("gate {} repeats an operand", gate.name));
        }
        if let Some(error) = gate.error {
            if !(0.0..=1.0).contains(&error) {
                return Some(format!(
                    "gate {} {:?} error {error} out of range",
                    gate.name, gate.qubits
                ));
            }
        }
        if let Some(duration) = gate.duration_ns {
            if !(duration.is_finite() && duration >= 0.0) {
                return Some(format!(
                    "gate {} duration {duration} out of range",
                    gate.name
                ));
            }
        }
    }
    let mut two_qubit_errors = record
        .gates
        .iter()
        .filter(|g| g.is_two_qubit())
        .filter_map(|g| g.error)
        .peekable();
    if two_qubit_errors.peek().is_some() && two_qubit_errors.all(|e| e == 1.0) {
        return Some(String::from("every two-qubit gate reports error 1"));
    }
    None
}

/// Missing attributes or gates on uncoupled pairs.
pub fn defect_reason(record: &CalibrationRecord) -> Option<(RemovalReason, String)> {
    for (k, qubit) in record.qubits.iter().enumerate() {
        for attribute in QubitAttribute::ALL {
            if attribute.get(qubit).is_none() {
                return Some((
                    RemovalReason::Incomplete,
                    format!("qubit {k} missing {}", attribute.name()),
                ));
            }
        }
    }
    for gate in &record.gates {
        if gate.error.is_none() {
            return Some((
                RemovalReason::Incomplete,
                format!("gate {} {:?} missing error", gate.name, gate.qubits),
            ));
        }
    }
    for gate in record.gates.iter().filter(|g| g.is_two_qubit()) {
        let (a, b) = (gate.qubits[0], gate.qubits[1]);
        if !record.coupling.contains(a, b) {
            return Some((
                RemovalReason::Inconsistent,
                format!("gate {} on uncoupled pair ({a}, {b})", gate.name),
            ));
        }
    }
    None
}
