//! Frequency-vector fingerprints: enrollment, probes and identification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::hamming_fingerprint_distance;
use crate::record::{CalibrationRecord, DeviceHistory, Timestamp};

/// Accept a match when the best distance is at most this.
pub const DEFAULT_DECISION_THRESHOLD: f64 = 0.5;

/// Source tag for fingerprints enrolled from a record corpus.
pub const CORPUS_SOURCE: &str = "corpus";

/// A device's enrolled frequency vector and the per-qubit tolerance frozen
/// with it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Fingerprint {
    pub device_id: String,
    pub num_qubits: usize,
    /// Per-qubit frequencies in GHz, qubit index order.
    pub frequencies: Vec<f64>,
    /// Per-qubit difference (GHz) above which two frequencies count as different.
    pub threshold: f64,
    pub enrollment_window: usize,
    /// Timestamp of the newest cycle in the enrollment window.
    pub enrolled_at: Timestamp,
    /// Provenance note, e.g. `corpus` or a synthetic fleet id.
    pub source: String,
}

impl Fingerprint {
    pub fn validate(&self) -> Result<()> {
        if self.frequencies.len() != self.num_qubits {
            return Err(Error::InvalidFingerprint(format!(
                "{}: {} frequencies for {} qubits",
                self.device_id,
                self.frequencies.len(),
                self.num_qubits
            )));
        }
        if let Some(k) = self
            .frequencies
            .iter()
            .position(|f| !(f.is_finite() && *f > 0.0))
        {
            return Err(Error::InvalidFingerprint(format!(
                "{}: qubit {k} frequency {} is not a positive finite value",
                self.device_id, self.frequencies[k]
            )));
        }
        if !(self.threshold >= 0.0 && self.threshold.is_finite()) {
            return Err(Error::InvalidThreshold(self.threshold));
        }
        Ok(())
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }
}

/// The N-vector of a cycle's qubit frequencies, in index order.
pub fn probe_from_cycle(record: &CalibrationRecord) -> Result<Vec<f64>> {
    record
        .qubits
        .iter()
        .enumerate()
        .map(|(k, q)| q.frequency.ok_or(Error::IncompleteProbe { qubit: k }))
        .collect()
}

/// Enrolls the per-qubit mean frequency over the `window` most recent cycles.
pub fn enroll(history: &DeviceHistory, window: usize, threshold: f64) -> Result<Fingerprint> {
    let records = history.window(window)?;
    let probes = records
        .iter()
        .map(probe_from_cycle)
        .collect::<Result<Vec<_>>>()?;
    let n = history.num_qubits;
    if let Some(p) = probes.iter().find(|p| p.len() != n) {
        return Err(Error::InvalidFingerprint(format!(
            "{}: cycle with {} qubits in a {n}-qubit history",
            history.device_id,
            p.len()
        )));
    }
    let frequencies = (0..n)
        .map(|k| {
            let mut sum = 0.0;
            for p in &probes {
                sum += p[k];
            }
            sum / window as f64
        })
        .collect();
    let fingerprint = Fingerprint {
        device_id: history.device_id.clone(),
        num_qubits: n,
        frequencies,
        threshold,
        enrollment_window: window,
        enrolled_at: records[records.len() - 1].cycle_timestamp,
        source: String::from(CORPUS_SOURCE),
    };
    fingerprint.validate()?;
    Ok(fingerprint)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Candidate {
    pub device_id: String,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "decision", rename_all = "snake_case"))]
pub enum Decision {
    Matched { device_id: String },
    NoMatch,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct MatchResult {
    pub probe_id: String,
    /// Ascending by distance, ties broken by device id.
    pub candidates: Vec<Candidate>,
    pub decision: Decision,
    pub decision_threshold: f64,
    /// Two distinct devices tied for the best distance within the threshold.
    pub collision: bool,
}

impl MatchResult {
    pub fn matched(&self) -> Option<&str> {
        match &self.decision {
            Decision::Matched { device_id } => Some(device_id),
            Decision::NoMatch => None,
        }
    }

    pub fn best(&self) -> Option<&Candidate> {
        self.candidates.first()
    }
}

/// Ranks every fingerprint in `store` against `probe`.
///
/// Each candidate is compared with its own frozen threshold. Candidates with
/// a different qubit count get distance 1.
pub fn identify(
    probe: &[f64],
    probe_id: &str,
    store: &[Fingerprint],
    decision_threshold: f64,
) -> Result<MatchResult> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    if !(0.0..=1.0).contains(&decision_threshold) {
        return Err(Error::InvalidDecisionThreshold(decision_threshold));
    }
    let mut candidates = store
        .iter()
        .map(|fp| {
            let distance = if fp.frequencies.len() == probe.len() {
                hamming_fingerprint_distance(probe, &fp.frequencies, fp.threshold)?
            } else {
                1.0
            };
            Ok(Candidate {
                device_id: fp.device_id.clone(),
                distance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    candidates.sort_by(|a, b| {
        a.distance
            .partial_cmp(&b.distance)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.device_id.cmp(&b.device_id))
    });

    let best = &candidates[0];
    let collision = best.distance <= decision_threshold
        && candidates
            .get(1)
            .is_some_and(|c| c.distance == best.distance && c.device_id != best.device_id);
    let decision = if best.distance <= decision_threshold && !collision {
        Decision::Matched {
            device_id: best.device_id.clone(),
        }
    } else {
        Decision::NoMatch
    };
    Ok(MatchResult {
        probe_id: String::from(probe_id),
        candidates,
        decision,
        decision_threshold,
        collision,
    })
}

/// A fingerprint replaced by re-enrollment.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ArchivedFingerprint {
    pub fingerprint: Fingerprint,
    /// Enrollment time of the replacing fingerprint.
    pub superseded_at: Timestamp,
}

/// Active fingerprints, one per device, plus every superseded version.
///
/// Reads take `&self` and may run concurrently; enrollment takes `&mut self`.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FingerprintStore {
    pub fingerprints: Vec<Fingerprint>,
    pub archived: Vec<ArchivedFingerprint>,
}

impl FingerprintStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.fingerprints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fingerprints.is_empty()
    }

    pub fn get(&self, device_id: &str) -> Option<&Fingerprint> {
        self.fingerprints.iter().find(|f| f.device_id == device_id)
    }

    pub fn archived_versions<'a>(
        &'a self,
        device_id: &'a str,
    ) -> impl Iterator<Item = &'a ArchivedFingerprint> + 'a {
        self.archived
            .iter()
            .filter(move |a| a.fingerprint.device_id == device_id)
    }

    pub fn insert(&mut self, fingerprint: Fingerprint) -> Result<()> {
        fingerprint.validate()?;
        if self.get(&fingerprint.device_id).is_some() {
            return Err(Error::AlreadyEnrolled(fingerprint.device_id));
        }
        self.fingerprints.push(fingerprint);
        Ok(())
    }

    pub fn enroll(
        &mut self,
        history: &DeviceHistory,
        window: usize,
        threshold: f64,
    ) -> Result<&Fingerprint> {
        self.insert(enroll(history, window, threshold)?)?;
        Ok(&self.fingerprints[self.fingerprints.len() - 1])
    }

    /// Replaces `device_id`'s fingerprint with one enrolled from
    /// `new_history`; the previous version is archived.
    pub fn reenroll(
        &mut self,
        device_id: &str,
        new_history: &DeviceHistory,
        window: usize,
        threshold: f64,
    ) -> Result<&Fingerprint> {
        let slot = self
            .fingerprints
            .iter()
            .position(|f| f.device_id == device_id)
            .ok_or_else(|| Error::NotEnrolled(String::from(device_id)))?;
        let mut fresh = enroll(new_history, window, threshold)?;
        fresh.device_id = String::from(device_id);
        fresh.source = self.fingerprints[slot].source.clone();
        let superseded_at = fresh.enrolled_at;
        let previous = core::mem::replace(&mut self.fingerprints[slot], fresh);
        self.archived.push(ArchivedFingerprint {
            fingerprint: previous,
            superseded_at,
        });
        Ok(&self.fingerprints[slot])
    }

    pub fn identify(
        &self,
        probe: &[f64],
        probe_id: &str,
        decision_threshold: f64,
    ) -> Result<MatchResult> {
        identify(probe, probe_id, &self.fingerprints, decision_threshold)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{CouplingMap, QubitCalibration};
    use chrono::{TimeZone, Utc};

    fn device(id: &str, cycles: &[&[f64]]) -> DeviceHistory {
        let records = cycles
            .iter()
            .enumerate()
            .map(|(t, freqs)| CalibrationRecord {
                device_id: id.into(),
                cycle_timestamp: Utc.timestamp_opt(t as i64 * 86_400, 0).unwrap(),
                qubits: freqs
                    .iter()
                    .map(|&f| QubitCalibration {
                        frequency: Some(f),
                        t1: Some(90.0),
                        t2: Some(70.0),
                        readout_error: Some(0.02),
                        calibrated_at: None,
                    })
                    .collect(),
                gates: vec![],
                coupling: CouplingMap::line(freqs.len()),
            })
            .collect();
        DeviceHistory::new(id, records)
    }

    fn fingerprint(id: &str, freqs: &[f64]) -> Fingerprint {
        Fingerprint {
            device_id: id.into(),
            num_qubits: freqs.len(),
            frequencies: freqs.to_vec(),
            threshold: 0.001,
            enrollment_window: 1,
            enrolled_at: Utc.timestamp_opt(0, 0).unwrap(),
            source: "test".into(),
        }
    }

    #[test]
    fn enroll_constant_device() {
        let h = device("a", &[&[5.0, 5.1], &[5.0, 5.1], &[5.0, 5.1]]);
        let fp = enroll(&h, 3, 0.001).unwrap();
        assert_eq!(fp.frequencies, vec![5.0, 5.1]);
        assert_eq!(fp.enrolled_at, h.records[2].cycle_timestamp);
        assert_eq!(fp, enroll(&h, 3, 0.001).unwrap());
    }

    #[test]
    fn enroll_averages_window() {
        let h = device("a", &[&[4.0], &[4.999], &[5.001]]);
        let fp = enroll(&h, 2, 0.001).unwrap();
        assert!((fp.frequencies[0] - 5.0).abs() < 1e-12);
        assert!(matches!(
            enroll(&h, 4, 0.001),
            Err(Error::InsufficientHistory { .. })
        ));
    }

    #[test]
    fn probe_projection() {
        let h = device("a", &[&[4.9, 5.0, 5.1]]);
        assert_eq!(
            probe_from_cycle(&h.records[0]).unwrap(),
            vec![4.9, 5.0, 5.1]
        );
        let mut r = h.records[0].clone();
        r.qubits[1].frequency = None;
        assert_eq!(
            probe_from_cycle(&r),
            Err(Error::IncompleteProbe { qubit: 1 })
        );
    }

    #[test]
    fn identify_exact_probe() {
        let store = [fingerprint("a", &[5.0, 5.1]), fingerprint("b", &[4.7, 4.8])];
        let result = identify(&[5.0, 5.1], "p", &store, 0.5).unwrap();
        assert_eq!(result.matched(), Some("a"));
        assert_eq!(result.best().unwrap().distance, 0.0);
        assert_eq!(result.candidates[1].distance, 1.0);
    }

    #[test]
    fn identify_size_mismatch_is_distance_one() {
        let store = [
            fingerprint("big", &[5.0; 27]),
            fingerprint("big2", &[4.9; 27]),
        ];
        let result = identify(&[5.0; 5], "p", &store, 0.5).unwrap();
        assert_eq!(result.decision, Decision::NoMatch);
        assert!(result.candidates.iter().all(|c| c.distance == 1.0));
        // A threshold of 1 still accepts distance 1, but the tie is a collision.
        let result = identify(&[5.0; 5], "p", &store, 1.0).unwrap();
        assert!(result.collision);
        assert_eq!(result.decision, Decision::NoMatch);
    }

    #[test]
    fn identify_tie_breaks_lexicographically_and_flags_collision() {
        let store = [fingerprint("z", &[5.0, 5.1]), fingerprint("m", &[5.0, 5.1])];
        let result = identify(&[5.0, 5.1], "p", &store, 0.5).unwrap();
        assert_eq!(result.candidates[0].device_id, "m");
        assert!(result.collision);
        assert_eq!(result.decision, Decision::NoMatch);
    }

    #[test]
    fn identify_input_errors() {
        assert_eq!(identify(&[5.0], "p", &[], 0.5), Err(Error::EmptyStore));
        let store = [fingerprint("a", &[5.0])];
        assert_eq!(
            identify(&[5.0], "p", &store, 1.5),
            Err(Error::InvalidDecisionThreshold(1.5))
        );
    }

    #[test]
    fn reenroll_archives_previous_version() {
        let old = device("a", &[&[5.0, 5.1, 5.2]]);
        let new = device("a", &[&[5.0, 5.15, 5.2]]);
        let mut store = FingerprintStore::new();
        store.enroll(&old, 1, 0.001).unwrap();
        assert_eq!(
            store.enroll(&old, 1, 0.001),
            Err(Error::AlreadyEnrolled("a".into()))
        );
        assert_eq!(
            store.reenroll("b", &new, 1, 0.001),
            Err(Error::NotEnrolled("b".into()))
        );

        store.reenroll("a", &new, 1, 0.001).unwrap();
        assert_eq!(store.len(), 1);
        assert_eq!(store.get("a").unwrap().frequencies[1], 5.15);
        let archived: Vec<_> = store.archived_versions("a").collect();
        assert_eq!(archived.len(), 1);
        assert_eq!(archived[0].fingerprint.frequencies[1], 5.1);
    }
}
