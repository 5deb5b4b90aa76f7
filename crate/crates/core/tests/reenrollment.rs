//! Re-enrollment after a simulated frequency retuning.

use transprint_core::{
    enroll, generate_fleet, paper_like_defaults, probe_from_cycle, DeviceHistory, FingerprintStore,
    FleetConfig,
};

const RETUNED: [usize; 3] = [2, 11, 20];

fn retune(history: &DeviceHistory) -> DeviceHistory {
    let mut out = history.clone();
    for record in &mut out.records {
        for &k in &RETUNED {
            let f = record.qubits[k].frequency.as_mut().unwrap();
            *f += 0.015;
        }
    }
    out
}

#[test]
fn retuning_changes_exactly_the_retuned_qubits() {
    let (fleet, _) = generate_fleet(&FleetConfig {
        num_devices: 2,
        ..paper_like_defaults()
    })
    .unwrap();
    let threshold = transprint_core::delta_avg(&fleet, 100).unwrap();
    let mut store = FingerprintStore::new();
    for d in &fleet {
        store.enroll(d, 100, threshold).unwrap();
    }
    let before = store.get("sim00").unwrap().clone();

    let maintained = retune(&fleet[0]);
    let after = store
        .reenroll("sim00", &maintained, 100, threshold)
        .unwrap()
        .clone();
    let changed: Vec<usize> = (0..27)
        .filter(|&k| (after.frequencies[k] - before.frequencies[k]).abs() > threshold)
        .collect();
    assert_eq!(changed, RETUNED);
    assert_eq!(
        store.archived_versions("sim00").next().unwrap().fingerprint,
        before
    );
    assert_eq!(store.len(), 2);

    // A post-retuning probe matches the new version only.
    let probe = probe_from_cycle(maintained.records.last().unwrap()).unwrap();
    let current = store.identify(&probe, "post", 0.5).unwrap();
    assert_eq!(current.matched(), Some("sim00"));
    assert!(current.best().unwrap().distance < 3.0 / 27.0);
    let old_only = transprint_core::identify(&probe, "post", &[before], 0.5).unwrap();
    assert!(old_only.best().unwrap().distance >= 3.0 / 27.0);
}

#[test]
fn reenroll_with_same_history_is_identical() {
    let (fleet, _) = generate_fleet(&FleetConfig {
        num_devices: 1,
        qubits_per_device: 5,
        ..paper_like_defaults()
    })
    .unwrap();
    let mut store = FingerprintStore::new();
    store.enroll(&fleet[0], 50, 0.001).unwrap();
    store.reenroll("sim00", &fleet[0], 50, 0.001).unwrap();
    assert_eq!(store.get("sim00").unwrap(), &store.archived[0].fingerprint);
    assert_eq!(
        store.get("sim00").unwrap(),
        &enroll(&fleet[0], 50, 0.001).unwrap()
    );
}
