mod common;

use chrono::{TimeZone, Utc};
use proptest::prelude::*;
use transprint_core::{
    clean_history, extract_series, identify, normalize_by_mean, CalibrationRecord, CouplingMap,
    DeviceHistory, FeatureKind, FeatureSeries, Fingerprint, GateCalibration, QubitCalibration,
};

#[derive(Debug, Clone)]
struct RawRecord {
    day: i64,
    freqs: Vec<Option<f64>>,
    t1: Vec<f64>,
    cx_error: f64,
    uncoupled: bool,
}

fn raw_record(n: usize) -> impl Strategy<Value = RawRecord> {
    (
        0i64..12,
        prop::collection::vec(prop::option::weighted(0.95, 4.5f64..5.5), n),
        prop::collection::vec(prop_oneof![9 => 10.0f64..200.0, 1 => -5.0f64..0.0], n),
        prop_oneof![4 => 0.001f64..0.05, 1 => Just(1.0)],
        prop::bool::weighted(0.1),
    )
        .prop_map(|(day, freqs, t1, cx_error, uncoupled)| RawRecord {
            day,
            freqs,
            t1,
            cx_error,
            uncoupled,
        })
}

fn build(raw: &RawRecord) -> CalibrationRecord {
    let n = raw.freqs.len();
    let mut gates: Vec<GateCalibration> = (1..n)
        .map(|k| GateCalibration {
            name: "cx".into(),
            qubits: vec![k - 1, k],
            error: Some(raw.cx_error),
            duration_ns: None,
        })
        .collect();
    if raw.uncoupled {
        gates.push(GateCalibration {
            name: "cx".into(),
            qubits: vec![0, n - 1],
            error: Some(0.02),
            duration_ns: None,
        });
    }
    CalibrationRecord {
        device_id: "p".into(),
        cycle_timestamp: Utc.timestamp_opt(raw.day * 86_400, 0).unwrap(),
        qubits: raw
            .freqs
            .iter()
            .zip(&raw.t1)
            .map(|(&frequency, &t1)| QubitCalibration {
                frequency,
                t1: Some(t1),
                t2: Some(50.0),
                readout_error: Some(0.02),
                calibrated_at: None,
            })
            .collect(),
        gates,
        coupling: CouplingMap::line(n),
    }
}

fn raw_history() -> impl Strategy<Value = DeviceHistory> {
    prop::collection::vec(raw_record(4), 0..30)
        .prop_map(|raws| DeviceHistory::new("p", raws.iter().map(build).collect()))
}

proptest! {
    #[test]
    fn cleaning_counts_balance(history in raw_history()) {
        let (out, report) = clean_history(&history);
        prop_assert!(report.is_balanced());
        prop_assert_eq!(report.output_count, out.records.len());
        prop_assert_eq!(report.removals.len(), report.input_count - report.output_count);
    }

    #[test]
    fn cleaning_is_idempotent(history in raw_history()) {
        let (once, _) = clean_history(&history);
        let (twice, report) = clean_history(&once);
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(report.removals.len(), 0);
    }

    #[test]
    fn cleaning_keeps_an_ordered_unmodified_subsequence(history in raw_history()) {
        let (out, _) = clean_history(&history);
        let mut cursor = history.records.iter();
        for kept in &out.records {
            prop_assert!(cursor.any(|r| r == kept));
        }
        for pair in out.records.windows(2) {
            prop_assert!(pair[0].cycle_timestamp < pair[1].cycle_timestamp);
        }
    }

    #[test]
    fn normalized_mean_is_one(values in prop::collection::vec(0.001f64..1.0e3, 1..200)) {
        let s = FeatureSeries::from_values(FeatureKind::T1, values).unwrap();
        let n = normalize_by_mean(&s).unwrap();
        prop_assert!((n.mean() - 1.0).abs() <= 1e-12);
        let mean = s.mean();
        for (a, b) in s.values().iter().zip(n.values()) {
            prop_assert_eq!(*b, a / mean);
        }
    }

    #[test]
    fn extracted_series_are_positionally_faithful(
        freqs in prop::collection::vec(prop::collection::vec(4.5f64..5.5, 3), 1..40),
        window_seed in any::<prop::sample::Index>(),
    ) {
        let history = common::device("e", &freqs);
        let window = window_seed.index(freqs.len()) + 1;
        let series = extract_series(&history, &FeatureKind::Frequency, window).unwrap();
        prop_assert_eq!(series.len(), 3);
        for (k, s) in series.iter().enumerate() {
            prop_assert_eq!(s.window_length(), window);
            for t in 0..window {
                prop_assert_eq!(s.values()[t], common::freq(&history, window, t, k));
            }
        }
    }

    #[test]
    fn drift_within_threshold_always_matches(
        base in prop::collection::vec(4.6f64..5.2, 1..30),
        drift in prop::collection::vec(-1.0f64..1.0, 30),
        threshold in 1e-4f64..1e-3,
    ) {
        let fp = Fingerprint {
            device_id: "me".into(),
            num_qubits: base.len(),
            frequencies: base.clone(),
            threshold,
            enrollment_window: 1,
            enrolled_at: Utc.timestamp_opt(0, 0).unwrap(),
            source: "prop".into(),
        };
        let other = Fingerprint {
            device_id: "other".into(),
            frequencies: base.iter().map(|f| f + 0.01).collect(),
            ..fp.clone()
        };
        let probe: Vec<f64> = base.iter().zip(&drift).map(|(f, d)| f + d * threshold * 0.99).collect();
        let result = identify(&probe, "probe", &[other, fp], 0.5).unwrap();
        prop_assert_eq!(result.matched(), Some("me"));
        prop_assert_eq!(result.best().unwrap().distance, 0.0);
    }

    #[test]
    fn identify_ignores_store_order(
        freqs in prop::collection::vec(prop::collection::vec(4.6f64..5.2, 6), 2..8),
        probe_from in any::<prop::sample::Index>(),
        rotate in any::<prop::sample::Index>(),
    ) {
        let store: Vec<Fingerprint> = freqs
            .iter()
            .enumerate()
            .map(|(i, f)| Fingerprint {
                device_id: format!("d{i}"),
                num_qubits: 6,
                frequencies: f.clone(),
                threshold: 0.01,
                enrollment_window: 1,
                enrolled_at: Utc.timestamp_opt(0, 0).unwrap(),
                source: "prop".into(),
            })
            .collect();
        let probe = freqs[probe_from.index(freqs.len())].clone();
        let mut rotated = store.clone();
        rotated.rotate_left(rotate.index(store.len()));
        let a = identify(&probe, "p", &store, 0.5).unwrap();
        let b = identify(&probe, "p", &rotated, 0.5).unwrap();
        prop_assert_eq!(a, b);
    }
}
