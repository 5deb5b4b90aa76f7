//! Per-qubit (or per-gate) feature time series over a calibration window.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::{DeviceHistory, QubitAttribute};

/// Which calibration quantity a series tracks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FeatureKind {
    Frequency,
    T1,
    T2,
    ReadoutError,
    GateError { gate: String, qubits: Vec<usize> },
}

impl FeatureKind {
    pub fn gate_error(gate: impl Into<String>, qubits: impl Into<Vec<usize>>) -> Self {
        FeatureKind::GateError {
            gate: gate.into(),
            qubits: qubits.into(),
        }
    }

    pub fn qubit_attribute(&self) -> Option<QubitAttribute> {
        match self {
            FeatureKind::Frequency => Some(QubitAttribute::Frequency),
            FeatureKind::T1 => Some(QubitAttribute::T1),
            FeatureKind::T2 => Some(QubitAttribute::T2),
            FeatureKind::ReadoutError => Some(QubitAttribute::ReadoutError),
            FeatureKind::GateError { .. } => None,
        }
    }
}

impl From<QubitAttribute> for FeatureKind {
    fn from(attribute: QubitAttribute) -> Self {
        match attribute {
            QubitAttribute::Frequency => FeatureKind::Frequency,
            QubitAttribute::T1 => FeatureKind::T1,
            QubitAttribute::T2 => FeatureKind::T2,
            QubitAttribute::ReadoutError => FeatureKind::ReadoutError,
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureKind::GateError { gate, qubits } => {
                write!(f, "gate_error({gate}")?;
                for q in qubits {
                    write!(f, ",{q}")?;
                }
                f.write_str(")")
            }
            other => f.write_str(other.qubit_attribute().map_or("", QubitAttribute::name)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SeriesTarget {
    Qubit(usize),
    Gate { gate: String, qubits: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SeriesOwner {
    pub device_id: String,
    pub target: SeriesTarget,
}

/// `K` consecutive values of one feature, oldest first.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FeatureSeries {
    pub owner: SeriesOwner,
    pub feature: FeatureKind,
    values: Vec<f64>,
}

impl FeatureSeries {
    /// Rejects empty or non-finite series.
    pub fn new(owner: SeriesOwner, feature: FeatureKind, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSeries("series is empty".into()));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "value {} at position {pos} is not finite",
                values[pos]
            )));
        }
        Ok(FeatureSeries {
            owner,
            feature,
            values,
        })
    }

    /// Anonymous qubit-0 series, convenient for tests and ad-hoc use.
    pub fn from_values(feature: FeatureKind, values: Vec<f64>) -> Result<Self> {
        let owner = SeriesOwner {
            device_id: String::new(),
            target: SeriesTarget::Qubit(0),
        };
        Self::new(owner, feature, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn window_length(&self) -> usize {
        self.values.len()
    }

    /// Arithmetic mean, summed in ascending index order.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `max - min` over the window.
    pub fn range(&self) -> f64 {
        let (lo, hi) = self
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        hi - lo
    }
}

/// One series per qubit (or one series for a gate feature) over the `window`
/// most recent records. Series `k` belongs to qubit `k`.
pub fn extract_series(
    history: &DeviceHistory,
    feature: &FeatureKind,
    window: usize,
) -> Result<Vec<FeatureSeries>> {
    let records = history.window(window)?;
    match feature {
        FeatureKind::GateError { gate, qubits } => {
            let values = records
                .iter()
                .map(|r| {
                    r.gate_error(gate, qubits)
                        .ok_or_else(|| Error::MissingGate {
                            device_id: history.device_id.clone(),
                            cycle: r.cycle_timestamp,
                            gate: gate.clone(),
                            qubits: qubits.clone(),
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            let owner = SeriesOwner {
                device_id: history.device_id.clone(),
                target: SeriesTarget::Gate {
                    gate: gate.clone(),
                    qubits: qubits.clone(),
                },
            };
            Ok(alloc::vec![FeatureSeries::new(
                owner,
                feature.clone(),
                values
            )?])
        }
        _ => {
            let attribute = feature.qubit_attribute().expect("qubit feature");
            (0..history.num_qubits)
                .map(|k| {
                    let values = records
                        .iter()
                        .map(|r| {
                            r.qubits
                                .get(k)
                                .and_then(|q| attribute.get(q))
                                .ok_or_else(|| Error::MissingValue {
                                    device_id: history.device_id.clone(),
                                    cycle: r.cycle_timestamp,
                                    qubit: k,
                                    attribute: attribute.name(),
                                })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let owner = SeriesOwner {
                        device_id: history.device_id.clone(),
                        target: SeriesTarget::Qubit(k),
                    };
                    FeatureSeries::new(owner, feature.clone(), values)
                })
                .collect()
        }
    }
}

/// Divides every value by the series mean.
pub fn normalize_by_mean(series: &FeatureSeries) -> Result<FeatureSeries> {
    let mean = series.mean();
    if mean == 0.0 {
        return Err(Error::DegenerateSeries);
    }
    let values = series.values.iter().map(|v| v / mean).collect();
    FeatureSeries::new(series.owner.clone(), series.feature.clone(), values)
}

impl fmt::Display for SeriesOwner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.target {
            SeriesTarget::Qubit(k) => write!(f, "{}:q{k}", self.device_id),
            SeriesTarget::Gate { gate, qubits } => {
                let operands: Vec<String> = qubits.iter().map(ToString::to_string).collect();
                write!(f, "{}:{gate}{}", self.device_id, operands.join("_"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{CalibrationRecord, CouplingMap, GateCalibration, QubitCalibration};
    use chrono::{TimeZone, Utc};

    fn series(values: &[f64]) -> FeatureSeries {
        FeatureSeries::from_values(FeatureKind::Frequency, values.to_vec()).unwrap()
    }

    /// Qubit `k` at cycle `t` has frequency `5 + k + t / 1000`.
    fn history(num_qubits: usize, cycles: usize) -> DeviceHistory {
        let records = (0..cycles)
            .map(|t| CalibrationRecord {
                device_id: "d".into(),
                cycle_timestamp: Utc.timestamp_opt(86_400 * t as i64, 0).unwrap(),
                qubits: (0..num_qubits)
                    .map(|k| QubitCalibration {
                        frequency: Some(5.0 + k as f64 + t as f64 / 1000.0),
                        t1: Some(100.0 + t as f64),
                        t2: Some(50.0),
                        readout_error: Some(0.01),
                        calibrated_at: None,
                    })
                    .collect(),
                gates: vec![GateCalibration {
                    name: "cx".into(),
                    qubits: vec![0, 1],
                    error: Some(0.01 + t as f64 * 1e-4),
                    duration_ns: None,
                }],
                coupling: CouplingMap::line(num_qubits),
            })
            .collect();
        DeviceHistory::new("d", records)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            normalize_by_mean(&series(&[2.0, 2.0, 2.0]))
                .unwrap()
                .values(),
            &[1.0, 1.0, 1.0]
        );
        assert_eq!(
            normalize_by_mean(&series(&[1.0, 3.0])).unwrap().values(),
            &[0.5, 1.5]
        );
        assert_eq!(
            normalize_by_mean(&series(&[-1.0, 1.0])),
            Err(Error::DegenerateSeries)
        );
    }

    #[test]
    fn series_rejects_bad_values() {
        assert!(FeatureSeries::from_values(FeatureKind::T1, vec![]).is_err());
        assert!(FeatureSeries::from_values(FeatureKind::T1, vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn extract_shape_and_positions() {
        let h = history(5, 120);
        let all = extract_series(&h, &FeatureKind::Frequency, 100).unwrap();
        assert_eq!(all.len(), 5);
        for (k, s) in all.iter().enumerate() {
            assert_eq!(s.window_length(), 100);
            assert_eq!(s.owner.target, SeriesTarget::Qubit(k));
            for (t, &v) in s.values().iter().enumerate() {
                assert_eq!(v, 5.0 + k as f64 + (t + 20) as f64 / 1000.0);
            }
        }
    }

    #[test]
    fn extract_gate_error() {
        let h = history(5, 100);
        let s = extract_series(&h, &FeatureKind::gate_error("cx", [0, 1]), 100).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].window_length(), 100);
        assert!(matches!(
            extract_series(&h, &FeatureKind::gate_error("cx", [3, 4]), 10),
            Err(Error::MissingGate { .. })
        ));
    }

    #[test]
    fn extract_needs_enough_history() {
        let h = history(2, 10);
        assert_eq!(
            extract_series(&h, &FeatureKind::T1, 11),
            Err(Error::InsufficientHistory {
                device_id: "d".into(),
                required: 11,
                available: 10
            })
        );
    }

    #[test]
    fn extract_reports_missing_values() {
        let mut h = history(3, 4);
        h.records[2].qubits[1].t2 = None;
        assert!(matches!(
            extract_series(&h, &FeatureKind::T2, 4),
            Err(Error::MissingValue {
                qubit: 1,
                attribute: "t2",
                ..
            })
        ));
        assert!(extract_series(&h, &FeatureKind::T2, 1).is_ok());
    }

    #[test]
    fn feature_display() {
        assert_eq!(FeatureKind::ReadoutError.to_string(), "readout_error");
        assert_eq!(
            FeatureKind::gate_error("cx", [0, 1]).to_string(),
            "gate_error(cx,0,1)"
        );
    }
}
