//! Distance metrics and the variation statistics that scale them.
//!
//! Variation is the range `max - min` of a series over its window.
//!
//! Summation order is fixed so results are reproducible bit-for-bit:
//! sums run in ascending index order (cycles, then qubits, then devices).

use alloc::format;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::DeviceHistory;
use crate::series::{extract_series, FeatureKind, FeatureSeries};

/// Largest per-series range in `pool`.
///
/// All series must share feature kind and window length.
pub fn delta_max(pool: &[FeatureSeries]) -> Result<f64> {
    let first = pool.first().ok_or(Error::EmptyPool)?;
    for s in pool {
        if s.feature != first.feature {
            return Err(Error::IncompatiblePool(format!(
                "mixed features {} and {}",
                first.feature, s.feature
            )));
        }
        if s.window_length() != first.window_length() {
            return Err(Error::IncompatiblePool(format!(
                "mixed window lengths {} and {}",
                first.window_length(),
                s.window_length()
            )));
        }
    }
    Ok(pool.iter().map(FeatureSeries::range).fold(0.0, f64::max))
}

/// `||x_i - x_j||_2 / (sqrt(K) * delta_max)`.
///
/// The squared differences are summed in ascending cycle order; the result
/// is `sqrt(sum) / (sqrt(K) * delta_max)`. Values below 1 mean the two
/// series differ by less than the pool's largest fluctuation.
pub fn scaled_euclidean(x_i: &FeatureSeries, x_j: &FeatureSeries, delta_max: f64) -> Result<f64> {
    if x_i.feature != x_j.feature {
        return Err(Error::IncompatibleSeries(format!(
            "features {} and {}",
            x_i.feature, x_j.feature
        )));
    }
    let k = x_i.window_length();
    if k != x_j.window_length() {
        return Err(Error::IncompatibleSeries(format!(
            "window lengths {k} and {}",
            x_j.window_length()
        )));
    }
    if !(delta_max > 0.0 && delta_max.is_finite()) {
        return Err(Error::DegenerateScale);
    }
    let mut sum = 0.0;
    for (a, b) in x_i.values().iter().zip(x_j.values()) {
        let d = a - b;
        sum += d * d;
    }
    Ok(libm::sqrt(sum) / (libm::sqrt(k as f64) * delta_max))
}

/// Fraction of indices whose absolute difference strictly exceeds `threshold`.
pub fn hamming_fingerprint_distance(f_i: &[f64], f_j: &[f64], threshold: f64) -> Result<f64> {
    if f_i.len() != f_j.len() {
        return Err(Error::IncompatibleFingerprint {
            left: f_i.len(),
            right: f_j.len(),
        });
    }
    if f_i.is_empty() {
        return Err(Error::InvalidFingerprint(
            "frequency vector is empty".into(),
        ));
    }
    if !(threshold >= 0.0 && threshold.is_finite()) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let differing = f_i
        .iter()
        .zip(f_j)
        .filter(|(a, b)| (*a - *b).abs() > threshold)
        .count();
    Ok(differing as f64 / f_i.len() as f64)
}

/// Per-qubit frequency ranges over the `window` most recent cycles, in
/// (device, qubit) order.
pub fn frequency_ranges(fleet: &[DeviceHistory], window: usize) -> Result<Vec<f64>> {
    let mut ranges = Vec::new();
    for device in fleet {
        for s in extract_series(device, &FeatureKind::Frequency, window)? {
            ranges.push(s.range());
        }
    }
    Ok(ranges)
}

/// Mean over all qubits of all devices of the qubit's frequency range.
///
/// This is the per-index threshold used by the fingerprint distance.
pub fn delta_avg(fleet: &[DeviceHistory], window: usize) -> Result<f64> {
    let ranges = frequency_ranges(fleet, window)?;
    if ranges.is_empty() {
        return Err(Error::EmptyPool);
    }
    Ok(ranges.iter().sum::<f64>() / ranges.len() as f64)
}

/// Frequency variation over a reference fleet.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct VariationStats {
    /// Largest per-qubit frequency range in the pool (GHz).
    pub delta_max: f64,
    /// Mean per-qubit frequency range in the pool (GHz).
    pub delta_avg: f64,
    pub devices: usize,
    pub qubits: usize,
    pub window: usize,
}

pub fn variation_stats(fleet: &[DeviceHistory], window: usize) -> Result<VariationStats> {
    let ranges = frequency_ranges(fleet, window)?;
    if ranges.is_empty() {
        return Err(Error::EmptyPool);
    }
    Ok(VariationStats {
        delta_max: ranges.iter().copied().fold(0.0, f64::max),
        delta_avg: ranges.iter().sum::<f64>() / ranges.len() as f64,
        devices: fleet.len(),
        qubits: ranges.len(),
        window,
    })
}
