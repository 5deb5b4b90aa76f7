//! File formats, persistence and command-line front end for
//! [`transprint_core`].
//!
//! - [`format`]: one-document-per-cycle calibration record files,
//! - [`corpus`]: record directories and the single-file corpus database,
//! - [`store`]: checksummed fingerprint store files,
//! - [`report`]: CSV / JSON / table renderings of matrices and results,
//! - [`manifest`]: run manifests written by every CLI command,
//! - [`cli`]: the `transprint` command.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod format;
pub mod manifest;
pub mod report;
pub mod store;

pub use error::{Error, Result};

use sha2::{Digest, Sha256};

/// Lower-case hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
