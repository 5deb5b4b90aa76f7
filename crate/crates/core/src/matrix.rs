//! Dissimilarity matrices over qubits, cycles and devices.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingerprint::probe_from_cycle;
use crate::metrics::{delta_max, hamming_fingerprint_distance, scaled_euclidean};
use crate::record::DeviceHistory;
use crate::series::{extract_series, FeatureKind, FeatureSeries, SeriesTarget};

/// Which distance produced a matrix, with the parameters it was run with.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "metric", rename_all = "snake_case"))]
pub enum MatrixMetric {
    ScaledEuclidean {
        feature: FeatureKind,
        delta_max: f64,
        window: usize,
    },
    /// Cycle-by-cycle distances, averaged over devices.
    HammingIntraDevice { threshold: f64, window: usize },
    /// Device-by-device distances, averaged over cycles.
    HammingInterDevice { threshold: f64, window: usize },
}

impl MatrixMetric {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixMetric::ScaledEuclidean { .. } => "scaled_euclidean",
            MatrixMetric::HammingIntraDevice { .. } => "hamming_intra_device",
            MatrixMetric::HammingInterDevice { .. } => "hamming_inter_device",
        }
    }
}

/// Symmetric, zero-diagonal, non-negative square matrix with row labels.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DissimilarityMatrix {
    pub labels: Vec<String>,
    pub metric: MatrixMetric,
    /// Row-major, `labels.len()` squared entries.
    values: Vec<f64>,
}

impl DissimilarityMatrix {
    /// Fills the upper triangle with `entry(i, j)` and mirrors it.
    pub fn from_upper(
        labels: Vec<String>,
        metric: MatrixMetric,
        mut entry: impl FnMut(usize, usize) -> Result<f64>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = entry(i, j)?;
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Ok(DissimilarityMatrix {
            labels,
            metric,
            values,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.size();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.size()).map(move |i| self.row(i))
    }

    /// Entries strictly above the diagonal, row by row.
    pub fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.size();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| self.get(i, j)))
    }

    /// Mean of the strictly-upper entries; `None` for matrices smaller than 2x2.
    pub fn off_diagonal_mean(&self) -> Option<f64> {
        let n = self.size();
        if n < 2 {
            return None;
        }
        let count = n * (n - 1) / 2;
        Some(self.off_diagonal().sum::<f64>() / count as f64)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| self.get(i, i) == 0.0 && (0..n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Row labels for a qubit-feature triangle: the device's initial plus the
/// qubit index (`B0`, `M3`), or `device_id:index` when initials collide.
fn triangle_prefixes(devices: &[DeviceHistory]) -> Vec<String> {
    let initials: Vec<Option<char>> = devices
        .iter()
        .map(|d| d.device_id.chars().next().map(|c| c.to_ascii_uppercase()))
        .collect();
    let distinct: BTreeSet<_> = initials.iter().collect();
    let unique = distinct.len() == devices.len() && initials.iter().all(Option::is_some);
    devices
        .iter()
        .zip(&initials)
        .map(|(d, c)| match (unique, c) {
            (true, Some(c)) => String::from(*c),
            _ => format!("{}:", d.device_id),
        })
        .collect()
}

/// Scaled Euclidean distances between every pair of (device, qubit) series,
/// with `delta_max` pooled over all listed devices.
pub fn feature_triangle(
    devices: &[DeviceHistory],
    feature: &FeatureKind,
    window: usize,
) -> Result<DissimilarityMatrix> {
    let prefixes = triangle_prefixes(devices);
    let mut pool: Vec<FeatureSeries> = Vec::new();
    let mut labels = Vec::new();
    for (device, prefix) in devices.iter().zip(&prefixes) {
        for series in extract_series(device, feature, window)? {
            labels.push(match &series.owner.target {
                SeriesTarget::Qubit(k) => format!("{prefix}{k}"),
                SeriesTarget::Gate { gate, qubits } => {
                    let ops: Vec<String> = qubits.iter().map(|q| format!("{q}")).collect();
                    format!("{prefix}{gate}{}", ops.join("_"))
                }
            });
            pool.push(series);
        }
    }
    let scale = delta_max(&pool)?;
    // A 1x1 matrix has no off-diagonal entry, so a degenerate scale is harmless there.
    if pool.len() > 1 && scale == 0.0 {
        return Err(Error::DegenerateScale);
    }
    let metric = MatrixMetric::ScaledEuclidean {
        feature: feature.clone(),
        delta_max: scale,
        window,
    };
    DissimilarityMatrix::from_upper(labels, metric, |i, j| {
        scaled_euclidean(&pool[i], &pool[j], scale)
    })
}

/// Per-device frequency vectors for the `window` most recent cycles.
/// Requires a non-empty fleet of equal qubit counts.
fn fleet_probes(fleet: &[DeviceHistory], window: usize) -> Result<Vec<Vec<Vec<f64>>>> {
    let first = fleet.first().ok_or(Error::EmptyPool)?;
    if let Some(other) = fleet.iter().find(|d| d.num_qubits != first.num_qubits) {
        return Err(Error::IncompatibleFleet(format!(
            "{} has {} qubits, {} has {}",
            first.device_id, first.num_qubits, other.device_id, other.num_qubits
        )));
    }
    fleet
        .iter()
        .map(|device| {
            device
                .window(window)?
                .iter()
                .map(probe_from_cycle)
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Entry `(s, t)` is the fingerprint distance between cycles `s` and `t` of
/// the window, averaged over devices.
pub fn intra_device_matrix(
    fleet: &[DeviceHistory],
    window: usize,
    threshold: f64,
) -> Result<DissimilarityMatrix> {
    let probes = fleet_probes(fleet, window)?;
    let labels = (0..window).map(|t| format!("t{t}")).collect();
    let metric = MatrixMetric::HammingIntraDevice { threshold, window };
    let devices = probes.len() as f64;
    DissimilarityMatrix::from_upper(labels, metric, |s, t| {
        let mut sum = 0.0;
        for device in &probes {
            sum += hamming_fingerprint_distance(&device[s], &device[t], threshold)?;
        }
        Ok(sum / devices)
    })
}

/// Entry `(i, j)` is the fingerprint distance between devices `i` and `j`
/// at the same window position, averaged over the window.
pub fn inter_device_matrix(
    fleet: &[DeviceHistory],
    window: usize,
    threshold: f64,
) -> Result<DissimilarityMatrix> {
    let probes = fleet_probes(fleet, window)?;
    let labels = fleet.iter().map(|d| d.device_id.clone()).collect();
    let metric = MatrixMetric::HammingInterDevice { threshold, window };
    DissimilarityMatrix::from_upper(labels, metric, |i, j| {
        let mut sum = 0.0;
        for (a, b) in probes[i].iter().zip(&probes[j]) {
            sum += hamming_fingerprint_distance(a, b, threshold)?;
        }
        Ok(sum / window as f64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{CalibrationRecord, CouplingMap, QubitCalibration};
    use chrono::{TimeZone, Utc};

    fn device(id: &str, freqs: &[Vec<f64>]) -> DeviceHistory {
        let records = freqs
            .iter()
            .enumerate()
            .map(|(t, cycle)| CalibrationRecord {
                device_id: id.into(),
                cycle_timestamp: Utc.timestamp_opt(t as i64 * 86_400, 0).unwrap(),
                qubits: cycle
                    .iter()
                    .enumerate()
                    .map(|(k, &f)| QubitCalibration {
                        frequency: Some(f),
                        t1: Some(100.0 + (t * 7 + k) as f64),
                        t2: Some(80.0),
                        readout_error: Some(0.02),
                        calibrated_at: None,
                    })
                    .collect(),
                gates: vec![],
                coupling: CouplingMap::line(cycle.len()),
            })
            .collect();
        DeviceHistory::new(id, records)
    }

    #[test]
    fn single_qubit_triangle_is_zero() {
        let d = device("bogota", &[vec![5.0], vec![5.001]]);
        let m = feature_triangle(&[d], &FeatureKind::Frequency, 2).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.labels, vec!["B0"]);
    }

    #[test]
    fn identical_series_have_zero_distance() {
        let d = device("m", &[vec![5.0, 5.0], vec![5.002, 5.002]]);
        let m = feature_triangle(&[d], &FeatureKind::Frequency, 2).unwrap();
        assert_eq!(m.get(0, 1), 0.0);
    }

    #[test]
    fn labels_fall_back_when_initials_collide() {
        let a = device("sim-a", &[vec![5.0], vec![5.001]]);
        let b = device("sim-b", &[vec![4.9], vec![4.902]]);
        let m = feature_triangle(&[a, b], &FeatureKind::Frequency, 2).unwrap();
        assert_eq!(m.labels, vec!["sim-a:0", "sim-b:0"]);
    }

    #[test]
    fn constant_pool_is_degenerate() {
        let d = device("x", &[vec![5.0, 4.0], vec![5.0, 4.0]]);
        assert_eq!(
            feature_triangle(&[d], &FeatureKind::Frequency, 2),
            Err(Error::DegenerateScale)
        );
    }

    #[test]
    fn intra_one_shifted_qubit_of_27() {
        let base: Vec<f64> = (0..27).map(|k| 4.6 + 0.02 * k as f64).collect();
        let mut shifted = base.clone();
        shifted[13] += 0.01;
        let m = intra_device_matrix(&[device("d", &[base, shifted])], 2, 0.001).unwrap();
        assert_eq!(m.get(0, 1), 1.0 / 27.0);
        assert!(m.is_symmetric());
    }

    #[test]
    fn constant_fleet_has_zero_intra_matrix() {
        let cycle = vec![5.0, 5.1, 5.2];
        let fleet = [
            device("a", &[cycle.clone(), cycle.clone(), cycle.clone()]),
            device("b", &[cycle.clone(), cycle.clone(), cycle]),
        ];
        let m = intra_device_matrix(&fleet, 3, 0.0).unwrap();
        assert!(m.off_diagonal().all(|v| v == 0.0));
    }

    #[test]
    fn inter_examples() {
        let a = device("a", &[vec![5.0], vec![5.0]]);
        let b = device("b", &[vec![6.0], vec![6.0]]);
        let m = inter_device_matrix(&[a.clone(), b], 2, 0.001).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        let m = inter_device_matrix(&[a.clone(), a.clone()], 2, 0.001).unwrap();
        assert_eq!(m.get(0, 1), 0.0);
        let m = inter_device_matrix(&[a], 2, 0.001).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.off_diagonal_mean(), None);
    }

    #[test]
    fn heterogeneous_fleet_is_rejected() {
        let a = device("a", &[vec![5.0]]);
        let b = device("b", &[vec![5.0, 5.1]]);
        assert!(matches!(
            inter_device_matrix(&[a.clone(), b.clone()], 1, 0.001),
            Err(Error::IncompatibleFleet(_))
        ));
        assert!(matches!(
            intra_device_matrix(&[a, b], 1, 0.001),
            Err(Error::IncompatibleFleet(_))
        ));
        assert_eq!(inter_device_matrix(&[], 1, 0.0), Err(Error::EmptyPool));
    }
}
