//! Fingerprint store files.
//!
//! ```json
//! { "version": 1, "checksum": "<sha256 hex>", "fingerprints": [...], "archived": [...] }
//! ```
//!
//! The checksum is the SHA-256 of the compact JSON serialization of
//! `{"version", "fingerprints", "archived"}` in that field order.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use transprint_core::{ArchivedFingerprint, Fingerprint, FingerprintStore};

use crate::error::{Error, Result};
use crate::sha256_hex;

pub const STORE_VERSION: u32 = 1;

#[derive(Serialize)]
struct ChecksummedContent<'a> {
    version: u32,
    fingerprints: &'a [Fingerprint],
    archived: &'a [ArchivedFingerprint],
}

#[derive(Serialize, Deserialize)]
struct StoreDocument {
    version: u32,
    checksum: String,
    fingerprints: Vec<Fingerprint>,
    archived: Vec<ArchivedFingerprint>,
}

pub fn store_checksum(store: &FingerprintStore) -> String {
    let content = ChecksummedContent {
        version: STORE_VERSION,
        fingerprints: &store.fingerprints,
        archived: &store.archived,
    };
    sha256_hex(&serde_json::to_vec(&content).expect("store content always serializes"))
}

/// Canonical store file bytes.
pub fn store_to_bytes(store: &FingerprintStore) -> Vec<u8> {
    let doc = StoreDocument {
        version: STORE_VERSION,
        checksum: store_checksum(store),
        fingerprints: store.fingerprints.clone(),
        archived: store.archived.clone(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("store documents always serialize");
    out.push(b'\n');
    out
}

pub fn store_from_bytes(raw: &[u8], path: &Path) -> Result<FingerprintStore> {
    let integrity = |message: String| Error::Integrity {
        path: path.to_path_buf(),
        message,
    };
    let doc: StoreDocument = serde_json::from_slice(raw)
        .map_err(|e| integrity(format!("not a readable store document: {e}")))?;
    if doc.version != STORE_VERSION {
        return Err(integrity(format!(
            "unsupported store version {}",
            doc.version
        )));
    }
    let store = FingerprintStore {
        fingerprints: doc.fingerprints,
        archived: doc.archived,
    };
    let expected = store_checksum(&store);
    if expected != doc.checksum {
        return Err(integrity(format!(
            "checksum mismatch: file says {}, content hashes to {expected}",
            doc.checksum
        )));
    }
    for fp in store
        .fingerprints
        .iter()
        .chain(store.archived.iter().map(|a| &a.fingerprint))
    {
        fp.validate()?;
    }
    Ok(store)
}

pub fn save_store(store: &FingerprintStore, path: &Path) -> Result<()> {
    fs::write(path, store_to_bytes(store)).map_err(|e| Error::io(path, e))
}

pub fn load_store(path: &Path) -> Result<FingerprintStore> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    store_from_bytes(&raw, path)
}
