//! Calibration snapshots and per-device histories.
//!
//! Every measured value is optional. A missing value stays `None` all the
//! way through parsing; it is the cleaning pass that decides what to do with
//! an incomplete record, never the data model.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use chrono::{DateTime, Utc};
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// UTC instant of a calibration cycle.
///
/// Compared at full stored precision, so two cycles that differ by a
/// fraction of a second are distinct.
pub type Timestamp = DateTime<Utc>;

/// Per-qubit properties reported by one calibration cycle.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct QubitCalibration {
    /// Qubit frequency in GHz.
    pub frequency: Option<f64>,
    /// Energy-relaxation time in microseconds.
    pub t1: Option<f64>,
    /// Dephasing time in microseconds.
    pub t2: Option<f64>,
    /// Readout assignment error probability.
    pub readout_error: Option<f64>,
    pub calibrated_at: Option<Timestamp>,
}

/// The four qubit attributes a complete record must carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum QubitAttribute {
    Frequency,
    T1,
    T2,
    ReadoutError,
}

impl QubitAttribute {
    pub const ALL: [QubitAttribute; 4] = [
        QubitAttribute::Frequency,
        QubitAttribute::T1,
        QubitAttribute::T2,
        QubitAttribute::ReadoutError,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QubitAttribute::Frequency => "frequency",
            QubitAttribute::T1 => "t1",
            QubitAttribute::T2 => "t2",
            QubitAttribute::ReadoutError => "readout_error",
        }
    }

    pub fn get(self, qubit: &QubitCalibration) -> Option<f64> {
        match self {
            QubitAttribute::Frequency => qubit.frequency,
            QubitAttribute::T1 => qubit.t1,
            QubitAttribute::T2 => qubit.t2,
            QubitAttribute::ReadoutError => qubit.readout_error,
        }
    }

    pub fn slot(self, qubit: &mut QubitCalibration) -> &mut Option<f64> {
        match self {
            QubitAttribute::Frequency => &mut qubit.frequency,
            QubitAttribute::T1 => &mut qubit.t1,
            QubitAttribute::T2 => &mut qubit.t2,
            QubitAttribute::ReadoutError => &mut qubit.readout_error,
        }
    }

    /// Whether `value` lies in the attribute's physical range.
    pub fn in_range(self, value: f64) -> bool {
        match self {
            QubitAttribute::Frequency | QubitAttribute::T1 | QubitAttribute::T2 => {
                value.is_finite() && value > 0.0
            }
            QubitAttribute::ReadoutError => (0.0..=1.0).contains(&value),
        }
    }
}

/// One gate's calibration entry.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GateCalibration {
    /// Gate identifier such as `cx`, `sx` or `x`.
    pub name: String,
    /// Device qubit indices, in operand order.
    pub qubits: Vec<usize>,
    /// Reported error probability.
    pub error: Option<f64>,
    pub duration_ns: Option<f64>,
}

impl GateCalibration {
    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }
}

/// Undirected coupling graph. Edges are stored as `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CouplingMap {
    pub num_qubits: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl CouplingMap {
    pub fn new(num_qubits: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        CouplingMap { num_qubits, edges }
    }

    /// Nearest-neighbour chain `0 - 1 - ... - (n-1)`.
    pub fn line(num_qubits: usize) -> Self {
        Self::new(num_qubits, (1..num_qubits).map(|k| (k - 1, k)))
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.contains(&key)
    }

    /// First edge that is a self-loop or references a qubit outside the device.
    pub fn first_invalid_edge(&self) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&(a, b)| a == b || a >= self.num_qubits || b >= self.num_qubits)
    }

    pub fn neighbours(&self, qubit: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == qubit {
                Some(b)
            } else if b == qubit {
                Some(a)
            } else {
                None
            }
        })
    }
}

/// One device's property snapshot for one calibration cycle.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CalibrationRecord {
    pub device_id: String,
    pub cycle_timestamp: Timestamp,
    /// Indexed by device qubit index.
    pub qubits: Vec<QubitCalibration>,
    pub gates: Vec<GateCalibration>,
    pub coupling: CouplingMap,
}

impl CalibrationRecord {
    pub fn num_qubits(&self) -> usize {
        self.coupling.num_qubits
    }

    /// Reported error of the gate `name` acting on exactly `qubits`, if any.
    pub fn gate_error(&self, name: &str, qubits: &[usize]) -> Option<f64> {
        self.gates
            .iter()
            .find(|g| g.name == name && g.qubits == qubits)
            .and_then(|g| g.error)
    }
}

/// Time-ordered calibration records of one device.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DeviceHistory {
    pub device_id: String,
    pub num_qubits: usize,
    pub records: Vec<CalibrationRecord>,
}

impl DeviceHistory {
    /// Builds a history, stably sorting records by cycle timestamp.
    ///
    /// The qubit count is taken from the first record (after sorting); an
    /// empty history has zero qubits.
    pub fn new(device_id: impl Into<String>, mut records: Vec<CalibrationRecord>) -> Self {
        records.sort_by_key(|r| r.cycle_timestamp);
        let num_qubits = records.first().map_or(0, CalibrationRecord::num_qubits);
        DeviceHistory {
            device_id: device_id.into(),
            num_qubits,
            records,
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The `window` most recent records, oldest first.
    pub fn window(&self, window: usize) -> crate::Result<&[CalibrationRecord]> {
        if window == 0 {
            return Err(crate::Error::EmptyWindow);
        }
        let available = self.records.len();
        if available < window {
            return Err(crate::Error::InsufficientHistory {
                device_id: self.device_id.clone(),
                required: window,
                available,
            });
        }
        Ok(&self.records[available - window..])
    }
}
