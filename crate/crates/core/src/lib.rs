//! Frequency fingerprinting of fixed-frequency transmon devices.
//!
//! The crate is `no_std` and only needs `alloc`. It covers the in-memory half
//! of the pipeline:
//!
//! - [`record`]: calibration snapshots and device histories,
//! - [`clean`]: the duplicate / invalid / incomplete cleaning passes,
//! - [`series`]: per-qubit feature time series and mean normalization,
//! - [`metrics`]: scaled Euclidean feature distance, normalized Hamming
//!   fingerprint distance and the variation statistics they are scaled by,
//! - [`matrix`]: dissimilarity matrices built from those distances,
//! - [`fingerprint`]: enrollment, probes, identification and the store,
//! - [`simulator`]: a seeded synthetic fleet generator with ground truth.
//!
//! File formats, persistence and the command-line tool live in the
//! `transprint` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod clean;
pub mod error;
pub mod fingerprint;
pub mod matrix;
pub mod metrics;
pub mod record;
pub mod series;
pub mod simulator;

pub use clean::{clean, clean_history, CleaningReport, Removal, RemovalReason};
pub use error::{Error, Result};
pub use fingerprint::{
    enroll, identify, probe_from_cycle, ArchivedFingerprint, Candidate, Decision, Fingerprint,
    FingerprintStore, MatchResult, DEFAULT_DECISION_THRESHOLD,
};
pub use matrix::{
    feature_triangle, inter_device_matrix, intra_device_matrix, DissimilarityMatrix, MatrixMetric,
};
pub use metrics::{
    delta_avg, delta_max, hamming_fingerprint_distance, scaled_euclidean, variation_stats,
    VariationStats,
};
pub use record::{
    CalibrationRecord, CouplingMap, DeviceHistory, GateCalibration, QubitAttribute,
    QubitCalibration, Timestamp,
};
pub use series::{
    extract_series, normalize_by_mean, FeatureKind, FeatureSeries, SeriesOwner, SeriesTarget,
};
pub use simulator::{generate_fleet, paper_like_defaults, FleetConfig, GroundTruth};

/// Default analysis window, in calibration cycles.
pub const DEFAULT_WINDOW: usize = 100;
