#![allow(dead_code)]

use chrono::{TimeZone, Utc};
use transprint_core::{
    CalibrationRecord, CouplingMap, DeviceHistory, GateCalibration, QubitCalibration,
};

/// A complete history whose cycle `t` has qubit frequencies `freqs[t]`.
/// T1 varies with cycle and qubit so other features are non-constant.
pub fn device(id: &str, freqs: &[Vec<f64>]) -> DeviceHistory {
    let records = freqs
        .iter()
        .enumerate()
        .map(|(t, cycle)| {
            let n = cycle.len();
            CalibrationRecord {
                device_id: id.into(),
                cycle_timestamp: Utc
                    .timestamp_opt(1_600_000_000 + t as i64 * 86_400, 0)
                    .unwrap(),
                qubits: cycle
                    .iter()
                    .enumerate()
                    .map(|(k, &f)| QubitCalibration {
                        frequency: Some(f),
                        t1: Some(80.0 + ((t * 31 + k * 17) % 40) as f64),
                        t2: Some(60.0 + ((t * 13 + k * 7) % 30) as f64),
                        readout_error: Some(0.01 + ((t + k) % 5) as f64 * 0.005),
                        calibrated_at: None,
                    })
                    .collect(),
                gates: (1..n)
                    .map(|k| GateCalibration {
                        name: "cx".into(),
                        qubits: vec![k - 1, k],
                        error: Some(0.01),
                        duration_ns: Some(300.0),
                    })
                    .collect(),
                coupling: CouplingMap::line(n),
            }
        })
        .collect();
    DeviceHistory::new(id, records)
}

/// Frequencies of qubit `k` in the `t`-th of the last `window` records.
pub fn freq(history: &DeviceHistory, window: usize, t: usize, k: usize) -> f64 {
    let start = history.records.len() - window;
    history.records[start + t].qubits[k].frequency.unwrap()
}
