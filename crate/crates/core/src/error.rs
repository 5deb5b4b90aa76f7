use alloc::string::String;

use crate::record::Timestamp;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(
        "insufficient history for {device_id}: need {required} records, {available} available"
    )]
    InsufficientHistory {
        device_id: String,
        required: usize,
        available: usize,
    },

    #[error("window length must be at least 1")]
    EmptyWindow,

    #[error("{device_id} cycle {cycle}: qubit {qubit} has no {attribute} value")]
    MissingValue {
        device_id: String,
        cycle: Timestamp,
        qubit: usize,
        attribute: &'static str,
    },

    #[error(
        "{device_id} cycle {cycle}: no {gate} gate on qubits {qubits:?} with a reported error"
    )]
    MissingGate {
        device_id: String,
        cycle: Timestamp,
        gate: String,
        qubits: alloc::vec::Vec<usize>,
    },

    #[error("qubit index {qubit} out of range for a {num_qubits}-qubit device")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("invalid feature series: {0}")]
    InvalidSeries(String),

    #[error("series mean is zero; cannot normalize")]
    DegenerateSeries,

    #[error("incompatible series: {0}")]
    IncompatibleSeries(String),

    #[error("incompatible pool: {0}")]
    IncompatiblePool(String),

    #[error("empty pool")]
    EmptyPool,

    #[error("maximum variation is zero (all series constant); scaled distance undefined")]
    DegenerateScale,

    #[error("fingerprint lengths differ: {left} vs {right}")]
    IncompatibleFingerprint { left: usize, right: usize },

    #[error("incompatible fleet: {0}")]
    IncompatibleFleet(String),

    #[error("threshold must be finite and non-negative, got {0}")]
    InvalidThreshold(f64),

    #[error("probe is incomplete: qubit {qubit} has no frequency")]
    IncompleteProbe { qubit: usize },

    #[error("invalid fingerprint: {0}")]
    InvalidFingerprint(String),

    #[error("device {0} is not enrolled")]
    NotEnrolled(String),

    #[error("device {0} is already enrolled")]
    AlreadyEnrolled(String),

    #[error("fingerprint store is empty")]
    EmptyStore,

    #[error("decision threshold must lie in [0, 1], got {0}")]
    InvalidDecisionThreshold(f64),

    #[error("invalid fleet configuration: {0}")]
    InvalidConfig(String),

    #[error("infeasible fleet configuration: {0}")]
    InfeasibleConfig(String),
}
