//! Seeded synthetic fleets of fixed-frequency transmon devices.
//!
//! Each device gets a static base frequency per qubit, drawn uniformly from
//! the band with coupled neighbours kept at least `min_intra_device_spacing`
//! apart. Every cycle then observes
//!
//! ```text
//! frequency = base + drift_sigma * N(0, 1) + spike
//! ```
//!
//! where `spike` is `±spike_magnitude` with probability `spike_probability`.
//! Coherence times, readout and gate errors are drawn per cycle from wide
//! Gaussians shared by every qubit and device, so they overlap across the
//! fleet. Data flaws (duplicate cycles, invalid values, incomplete or
//! inconsistent records) are injected at configured rates and labelled in
//! [`GroundTruth`].
//!
//! Every device draws from its own ChaCha stream seeded with
//! [`device_seed`]`(seed, index)`, so output does not depend on the order
//! devices are generated in.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use chrono::{DateTime, TimeDelta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::clean::RemovalReason;
use crate::error::{Error, Result};
use crate::record::{
    CalibrationRecord, CouplingMap, DeviceHistory, GateCalibration, QubitAttribute,
    QubitCalibration, Timestamp,
};

/// Attempts per qubit before base-frequency sampling gives up.
pub const MAX_PLACEMENT_ATTEMPTS: usize = 10_000;

/// Lower bound applied to sampled T1/T2 values (microseconds).
const COHERENCE_FLOOR_US: f64 = 1.0;
const SX_DURATION_NS: f64 = 35.555_555_555_555_55;
const CX_DURATION_RANGE_NS: (f64, f64) = (250.0, 550.0);
const MAX_GATE_ERROR: f64 = 0.5;

/// Parameters of a synthetic fleet. Missing fields in a config file take the
/// values of [`paper_like_defaults`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct FleetConfig {
    pub num_devices: usize,
    pub qubits_per_device: usize,
    pub num_cycles: usize,
    pub seed: u64,
    /// `(low, high)` in GHz.
    pub freq_band: (f64, f64),
    /// Minimum base-frequency gap between coupled qubits (GHz).
    pub min_intra_device_spacing: f64,
    /// Per-cycle Gaussian frequency jitter (GHz).
    pub drift_sigma: f64,
    pub spike_probability: f64,
    pub spike_magnitude: f64,
    pub t1_mean: f64,
    pub t1_sigma: f64,
    pub t2_mean: f64,
    pub t2_sigma: f64,
    pub readout_error_mean: f64,
    pub readout_error_sigma: f64,
    pub sx_error_mean: f64,
    pub sx_error_sigma: f64,
    pub cx_error_mean: f64,
    pub cx_error_sigma: f64,
    pub duplicate_rate: f64,
    pub invalid_rate: f64,
    pub incomplete_rate: f64,
    /// Device `d` is named `{device_prefix}{d:02}`.
    pub device_prefix: String,
    pub start_timestamp: Timestamp,
    pub cycle_interval_secs: u32,
}

impl Default for FleetConfig {
    fn default() -> Self {
        paper_like_defaults()
    }
}

/// Eight 27-qubit devices over 100 cycles, with small drift, rare spikes and
/// no injected flaws.
pub fn paper_like_defaults() -> FleetConfig {
    FleetConfig {
        num_devices: 8,
        qubits_per_device: 27,
        num_cycles: 100,
        seed: 1,
        freq_band: (4.6, 5.2),
        min_intra_device_spacing: 0.040,
        drift_sigma: 0.000_02,
        spike_probability: 0.01,
        spike_magnitude: 0.001,
        t1_mean: 100.0,
        t1_sigma: 35.0,
        t2_mean: 90.0,
        t2_sigma: 40.0,
        readout_error_mean: 0.03,
        readout_error_sigma: 0.015,
        sx_error_mean: 3.0e-4,
        sx_error_sigma: 1.5e-4,
        cx_error_mean: 1.0e-2,
        cx_error_sigma: 4.0e-3,
        duplicate_rate: 0.0,
        invalid_rate: 0.0,
        incomplete_rate: 0.0,
        device_prefix: String::from("sim"),
        start_timestamp: DateTime::from_timestamp(1_609_459_200, 0).expect("valid epoch"),
        cycle_interval_secs: 86_400,
    }
}

impl FleetConfig {
    pub fn device_id(&self, index: usize) -> String {
        format!("{}{index:02}", self.device_prefix)
    }

    pub fn coupling(&self) -> CouplingMap {
        CouplingMap::line(self.qubits_per_device)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidConfig(msg));
        if self.qubits_per_device == 0 {
            return invalid("qubits_per_device must be at least 1".into());
        }
        if self.cycle_interval_secs == 0 {
            return invalid("cycle_interval_secs must be at least 1".into());
        }
        let (low, high) = self.freq_band;
        if !(low.is_finite() && high.is_finite() && low > 0.0 && low < high) {
            return invalid(format!(
                "freq_band ({low}, {high}) must satisfy 0 < low < high"
            ));
        }
        let non_negative = [
            ("min_intra_device_spacing", self.min_intra_device_spacing),
            ("drift_sigma", self.drift_sigma),
            ("spike_magnitude", self.spike_magnitude),
            ("t1_sigma", self.t1_sigma),
            ("t2_sigma", self.t2_sigma),
            ("readout_error_sigma", self.readout_error_sigma),
            ("sx_error_sigma", self.sx_error_sigma),
            ("cx_error_sigma", self.cx_error_sigma),
        ];
        for (name, value) in non_negative {
            if !(value.is_finite() && value >= 0.0) {
                return invalid(format!("{name} = {value} must be finite and >= 0"));
            }
        }
        let probabilities = [
            ("spike_probability", self.spike_probability),
            ("duplicate_rate", self.duplicate_rate),
            ("invalid_rate", self.invalid_rate),
            ("incomplete_rate", self.incomplete_rate),
            ("readout_error_mean", self.readout_error_mean),
            ("sx_error_mean", self.sx_error_mean),
            ("cx_error_mean", self.cx_error_mean),
        ];
        for (name, value) in probabilities {
            if !(0.0..=1.0).contains(&value) {
                return invalid(format!("{name} = {value} must lie in [0, 1]"));
            }
        }
        for (name, value) in [("t1_mean", self.t1_mean), ("t2_mean", self.t2_mean)] {
            if !(value.is_finite() && value > 0.0) {
                return invalid(format!("{name} = {value} must be positive"));
            }
        }
        // Drawing qubits in index order, each new qubit must avoid a window
        // of 2 * spacing around each already-placed coupled neighbour.
        let coupling = self.coupling();
        let max_degree = (0..self.qubits_per_device)
            .map(|k| coupling.neighbours(k).count())
            .max()
            .unwrap_or(0);
        let excluded = 2.0 * self.min_intra_device_spacing * max_degree as f64;
        if excluded >= high - low {
            return Err(Error::InfeasibleConfig(format!(
                "spacing {} GHz with {max_degree} coupled neighbours per qubit does not fit \
                 in a {} GHz band",
                self.min_intra_device_spacing,
                high - low
            )));
        }
        Ok(())
    }
}

/// Mixes the fleet seed and a device index into a per-device stream seed.
pub fn device_seed(seed: u64, device_index: usize) -> u64 {
    fn splitmix64(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix64(seed ^ splitmix64(device_index as u64))
}

/// One injected data flaw.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Flaw {
    /// Re-emitted cycle sharing the timestamp of record `of_index`.
    Duplicate {
        of_index: usize,
    },
    AllTwoQubitErrorsOne,
    OutOfRange {
        qubit: usize,
        attribute: QubitAttribute,
    },
    MissingAttribute {
        qubit: usize,
        attribute: QubitAttribute,
    },
    MissingGateError {
        gate: String,
        qubits: Vec<usize>,
    },
    UncoupledGate {
        qubits: Vec<usize>,
    },
}

impl Flaw {
    /// The cleaning verdict this flaw alone produces.
    pub fn removal_reason(&self) -> RemovalReason {
        match self {
            Flaw::Duplicate { .. } => RemovalReason::Duplicate,
            Flaw::AllTwoQubitErrorsOne | Flaw::OutOfRange { .. } => RemovalReason::Invalid,
            Flaw::MissingAttribute { .. } | Flaw::MissingGateError { .. } => {
                RemovalReason::Incomplete
            }
            Flaw::UncoupledGate { .. } => RemovalReason::Inconsistent,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RecordLabel {
    /// Position in the emitted (raw) history.
    pub index: usize,
    pub cycle: usize,
    pub cycle_timestamp: Timestamp,
    pub flaws: Vec<Flaw>,
    /// What cleaning must do with this record; `None` means keep.
    pub expected_removal: Option<RemovalReason>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SpikeEvent {
    pub cycle: usize,
    pub qubit: usize,
    /// Signed GHz offset added to the base frequency.
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DeviceTruth {
    pub device_id: String,
    pub base_frequencies: Vec<f64>,
    pub records: Vec<RecordLabel>,
    pub spikes: Vec<SpikeEvent>,
}

impl DeviceTruth {
    /// `(raw index, reason)` for every record cleaning must drop.
    pub fn expected_removals(&self) -> Vec<(usize, RemovalReason)> {
        self.records
            .iter()
            .filter_map(|l| l.expected_removal.map(|r| (l.index, r)))
            .collect()
    }

    pub fn is_spike(&self, cycle: usize, qubit: usize) -> bool {
        self.spikes
            .iter()
            .any(|s| s.cycle == cycle && s.qubit == qubit)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GroundTruth {
    pub seed: u64,
    pub devices: Vec<DeviceTruth>,
}

impl GroundTruth {
    pub fn device(&self, device_id: &str) -> Option<&DeviceTruth> {
        self.devices.iter().find(|d| d.device_id == device_id)
    }
}

/// Generates raw (uncleaned) histories and their ground truth.
pub fn generate_fleet(config: &FleetConfig) -> Result<(Vec<DeviceHistory>, GroundTruth)> {
    config.validate()?;
    let mut histories = Vec::with_capacity(config.num_devices);
    let mut truths = Vec::with_capacity(config.num_devices);
    for d in 0..config.num_devices {
        let (history, truth) = generate_device(config, d)?;
        histories.push(history);
        truths.push(truth);
    }
    Ok((
        histories,
        GroundTruth {
            seed: config.seed,
            devices: truths,
        },
    ))
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

struct DeviceModel<'a> {
    config: &'a FleetConfig,
    device_id: String,
    coupling: CouplingMap,
    base: Vec<f64>,
    cx_durations: Vec<f64>,
}

fn generate_device(config: &FleetConfig, index: usize) -> Result<(DeviceHistory, DeviceTruth)> {
    let mut rng = ChaCha8Rng::seed_from_u64(device_seed(config.seed, index));
    let device_id = config.device_id(index);
    let coupling = config.coupling();
    let base = place_frequencies(config, &coupling, &mut rng, &device_id)?;
    let cx_durations = coupling
        .edges
        .iter()
        .map(|_| rng.random_range(CX_DURATION_RANGE_NS.0..CX_DURATION_RANGE_NS.1))
        .collect();
    let model = DeviceModel {
        config,
        device_id: device_id.clone(),
        coupling,
        base,
        cx_durations,
    };

    let mut records = Vec::with_capacity(config.num_cycles);
    let mut labels = Vec::with_capacity(config.num_cycles);
    let mut spikes = Vec::new();
    for cycle in 0..config.num_cycles {
        let offset = TimeDelta::seconds(cycle as i64 * i64::from(config.cycle_interval_secs));
        let timestamp = config.start_timestamp + offset;
        let (mut record, cycle_spikes) = model.sample_cycle(&mut rng, timestamp);
        spikes.extend(cycle_spikes.into_iter().map(|(qubit, offset)| SpikeEvent {
            cycle,
            qubit,
            offset,
        }));

        let inject_invalid = rng.random::<f64>() < config.invalid_rate;
        let inject_incomplete = rng.random::<f64>() < config.incomplete_rate;
        let inject_duplicate = rng.random::<f64>() < config.duplicate_rate;

        // Incomplete first: a later out-of-range value may refill a removed
        // attribute, but the record is invalid either way.
        let mut flaws = Vec::new();
        if inject_incomplete {
            flaws.push(model.make_incomplete(&mut rng, &mut record));
        }
        if inject_invalid {
            flaws.push(model.make_invalid(&mut rng, &mut record));
        }
        let expected_removal = if inject_invalid {
            Some(RemovalReason::Invalid)
        } else {
            flaws.first().map(Flaw::removal_reason)
        };
        let primary_index = records.len();
        labels.push(RecordLabel {
            index: primary_index,
            cycle,
            cycle_timestamp: timestamp,
            flaws,
            expected_removal,
        });
        records.push(record);

        if inject_duplicate {
            let (duplicate, _) = model.sample_cycle(&mut rng, timestamp);
            labels.push(RecordLabel {
                index: records.len(),
                cycle,
                cycle_timestamp: timestamp,
                flaws: vec![Flaw::Duplicate {
                    of_index: primary_index,
                }],
                expected_removal: Some(RemovalReason::Duplicate),
            });
            records.push(duplicate);
        }
    }

    let history = DeviceHistory {
        device_id: device_id.clone(),
        num_qubits: config.qubits_per_device,
        records,
    };
    let truth = DeviceTruth {
        device_id,
        base_frequencies: model.base,
        records: labels,
        spikes,
    };
    Ok((history, truth))
}

/// Uniform draws in index order, redrawing a qubit while it sits closer than
/// the minimum spacing to an already-placed coupled neighbour.
fn place_frequencies(
    config: &FleetConfig,
    coupling: &CouplingMap,
    rng: &mut ChaCha8Rng,
    device_id: &str,
) -> Result<Vec<f64>> {
    let (low, high) = config.freq_band;
    let mut base: Vec<f64> = Vec::with_capacity(config.qubits_per_device);
    for k in 0..config.qubits_per_device {
        let mut placed = None;
        for _ in 0..MAX_PLACEMENT_ATTEMPTS {
            let f = rng.random_range(low..high);
            let clear = coupling
                .neighbours(k)
                .filter(|&j| j < k)
                .all(|j| (f - base[j]).abs() >= config.min_intra_device_spacing);
            if clear {
                placed = Some(f);
                break;
            }
        }
        match placed {
            Some(f) => base.push(f),
            None => {
                return Err(Error::InfeasibleConfig(format!(
                    "{device_id}: could not place qubit {k} after {MAX_PLACEMENT_ATTEMPTS} draws"
                )))
            }
        }
    }
    Ok(base)
}

impl DeviceModel<'_> {
    /// One cycle's observation and the spikes drawn for it.
    fn sample_cycle(
        &self,
        rng: &mut ChaCha8Rng,
        timestamp: Timestamp,
    ) -> (CalibrationRecord, Vec<(usize, f64)>) {
        let c = self.config;
        let mut spikes = Vec::new();
        let mut qubits = Vec::with_capacity(self.base.len());
        for (k, &base) in self.base.iter().enumerate() {
            let jitter = c.drift_sigma * standard_normal(rng);
            let spike_roll = rng.random::<f64>();
            let upward = rng.random::<bool>();
            let mut frequency = base + jitter;
            if spike_roll < c.spike_probability {
                let offset = if upward {
                    c.spike_magnitude
                } else {
                    -c.spike_magnitude
                };
                frequency += offset;
                spikes.push((k, offset));
            }
            let t1 = (c.t1_mean + c.t1_sigma * standard_normal(rng)).max(COHERENCE_FLOOR_US);
            let t2 = (c.t2_mean + c.t2_sigma * standard_normal(rng))
                .max(COHERENCE_FLOOR_US)
                .min(2.0 * t1);
            let readout = (c.readout_error_mean + c.readout_error_sigma * standard_normal(rng))
                .clamp(0.0, 1.0);
            qubits.push(QubitCalibration {
                frequency: Some(frequency),
                t1: Some(t1),
                t2: Some(t2),
                readout_error: Some(readout),
                calibrated_at: Some(timestamp),
            });
        }

        let mut gates = Vec::with_capacity(2 * self.base.len() + self.coupling.edges.len());
        for k in 0..self.base.len() {
            let error = (c.sx_error_mean + c.sx_error_sigma * standard_normal(rng))
                .clamp(0.0, MAX_GATE_ERROR);
            for name in ["sx", "x"] {
                gates.push(GateCalibration {
                    name: String::from(name),
                    qubits: vec![k],
                    error: Some(error),
                    duration_ns: Some(SX_DURATION_NS),
                });
            }
        }
        for (&(a, b), &duration) in self.coupling.edges.iter().zip(&self.cx_durations) {
            let error = (c.cx_error_mean + c.cx_error_sigma * standard_normal(rng))
                .clamp(0.0, MAX_GATE_ERROR);
            gates.push(GateCalibration {
                name: String::from("cx"),
                qubits: vec![a, b],
                error: Some(error),
                duration_ns: Some(duration),
            });
        }

        let record = CalibrationRecord {
            device_id: self.device_id.clone(),
            cycle_timestamp: timestamp,
            qubits,
            gates,
            coupling: self.coupling.clone(),
        };
        (record, spikes)
    }

    fn uncoupled_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.base.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.coupling.contains(a, b))
            .collect()
    }

    fn make_incomplete(&self, rng: &mut ChaCha8Rng, record: &mut CalibrationRecord) -> Flaw {
        let uncoupled = self.uncoupled_pairs();
        let n = self.base.len();
        match rng.random_range(0..3u8) {
            1 if !uncoupled.is_empty() => {
                let (a, b) = uncoupled[rng.random_range(0..uncoupled.len())];
                let error = self.config.cx_error_mean.clamp(1e-4, MAX_GATE_ERROR);
                record.gates.push(GateCalibration {
                    name: String::from("cx"),
                    qubits: vec![a, b],
                    error: Some(error),
                    duration_ns: Some(CX_DURATION_RANGE_NS.0),
                });
                Flaw::UncoupledGate { qubits: vec![a, b] }
            }
            2 => {
                let g = rng.random_range(0..record.gates.len());
                let gate = &mut record.gates[g];
                gate.error = None;
                Flaw::MissingGateError {
                    gate: gate.name.clone(),
                    qubits: gate.qubits.clone(),
                }
            }
            _ => {
                let qubit = rng.random_range(0..n);
                let attribute = QubitAttribute::ALL[rng.random_range(0..4)];
                *attribute.slot(&mut record.qubits[qubit]) = None;
                Flaw::MissingAttribute { qubit, attribute }
            }
        }
    }

    fn make_invalid(&self, rng: &mut ChaCha8Rng, record: &mut CalibrationRecord) -> Flaw {
        let has_two_qubit = record.gates.iter().any(GateCalibration::is_two_qubit);
        if has_two_qubit && rng.random::<bool>() {
            for gate in record.gates.iter_mut().filter(|g| g.is_two_qubit()) {
                gate.error = Some(1.0);
            }
            return Flaw::AllTwoQubitErrorsOne;
        }
        let qubit = rng.random_range(0..self.base.len());
        let (attribute, value) = match rng.random_range(0..3u8) {
            0 => (QubitAttribute::T1, -self.config.t1_mean),
            1 => (QubitAttribute::T2, -self.config.t2_mean),
            _ => (QubitAttribute::ReadoutError, 1.5),
        };
        *attribute.slot(&mut record.qubits[qubit]) = Some(value);
        Flaw::OutOfRange { qubit, attribute }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(num_devices: usize, qubits: usize, cycles: usize) -> FleetConfig {
        FleetConfig {
            num_devices,
            qubits_per_device: qubits,
            num_cycles: cycles,
            drift_sigma: 0.0,
            spike_probability: 0.0,
            t1_sigma: 0.0,
            t2_sigma: 0.0,
            readout_error_sigma: 0.0,
            sx_error_sigma: 0.0,
            cx_error_sigma: 0.0,
            ..paper_like_defaults()
        }
    }

    #[test]
    fn defaults_match_fleet_shape() {
        let c = paper_like_defaults();
        assert_eq!(
            (c.num_devices, c.qubits_per_device, c.num_cycles),
            (8, 27, 100)
        );
        c.validate().unwrap();
    }

    #[test]
    fn zero_noise_cycles_are_identical() {
        let (fleet, truth) = generate_fleet(&quiet(1, 1, 3)).unwrap();
        let records = &fleet[0].records;
        assert_eq!(records.len(), 3);
        for r in &records[1..] {
            assert_eq!(r.qubits[0].frequency, records[0].qubits[0].frequency);
            assert_eq!(r.qubits[0].t1, records[0].qubits[0].t1);
            assert_eq!(r.gates, records[0].gates);
        }
        assert_eq!(
            records[0].qubits[0].frequency,
            Some(truth.devices[0].base_frequencies[0])
        );
    }

    #[test]
    fn every_cycle_duplicated_at_rate_one() {
        let config = FleetConfig {
            duplicate_rate: 1.0,
            ..quiet(1, 3, 2)
        };
        let (fleet, truth) = generate_fleet(&config).unwrap();
        let records = &fleet[0].records;
        assert_eq!(records.len(), 4);
        assert_eq!(records[0].cycle_timestamp, records[1].cycle_timestamp);
        assert_eq!(records[2].cycle_timestamp, records[3].cycle_timestamp);
        assert_ne!(records[0].cycle_timestamp, records[2].cycle_timestamp);
        let removals = truth.devices[0].expected_removals();
        assert_eq!(
            removals,
            vec![(1, RemovalReason::Duplicate), (3, RemovalReason::Duplicate)]
        );
    }

    #[test]
    fn coupled_neighbours_respect_spacing() {
        let (_, truth) = generate_fleet(&paper_like_defaults()).unwrap();
        for device in &truth.devices {
            for pair in device.base_frequencies.windows(2) {
                assert!((pair[0] - pair[1]).abs() >= 0.040);
            }
            assert!(device
                .base_frequencies
                .iter()
                .all(|f| (4.6..5.2).contains(f)));
        }
    }

    #[test]
    fn infeasible_spacing_is_rejected() {
        let config = FleetConfig {
            freq_band: (5.0, 5.1),
            min_intra_device_spacing: 0.05,
            ..quiet(1, 3, 1)
        };
        assert!(matches!(
            generate_fleet(&config),
            Err(Error::InfeasibleConfig(_))
        ));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad = [
            FleetConfig {
                freq_band: (5.2, 4.6),
                ..paper_like_defaults()
            },
            FleetConfig {
                spike_probability: 1.5,
                ..paper_like_defaults()
            },
            FleetConfig {
                drift_sigma: -1.0,
                ..paper_like_defaults()
            },
            FleetConfig {
                qubits_per_device: 0,
                ..paper_like_defaults()
            },
        ];
        for config in bad {
            assert!(
                matches!(config.validate(), Err(Error::InvalidConfig(_))),
                "{config:?}"
            );
        }
    }

    #[test]
    fn device_streams_are_independent_of_fleet_size() {
        let (small, _) = generate_fleet(&FleetConfig {
            num_devices: 2,
            ..paper_like_defaults()
        })
        .unwrap();
        let (large, _) = generate_fleet(&paper_like_defaults()).unwrap();
        assert_eq!(small[1], large[1]);
    }

    #[test]
    fn device_seeds_differ() {
        let seeds: alloc::collections::BTreeSet<u64> = (0..64).map(|d| device_seed(7, d)).collect();
        assert_eq!(seeds.len(), 64);
        assert_ne!(device_seed(1, 0), device_seed(2, 0));
    }
}
