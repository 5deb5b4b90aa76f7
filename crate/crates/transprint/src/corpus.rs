//! Record directories and corpus database files.
//!
//! A record directory holds one subdirectory per device and one document per
//! cycle: `<root>/<device_id>/<ISO-timestamp>.json`. When a device reports the
//! same cycle timestamp more than once, later copies are written as
//! `<ISO-timestamp>_<n>.json`, which sorts after the original.
//!
//! A corpus database (`corpus.db`, `cleaned.db`) is a single JSON document
//! bundling the record documents of every device.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use transprint_core::DeviceHistory;
use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::format::{
    document_to_record, format_timestamp, parse_json_v1, record_to_document, serialize_record,
    RecordDocument, RecordFormat,
};

pub const CORPUS_FORMAT: &str = "transprint-corpus";
pub const CORPUS_VERSION: u32 = 1;

/// A record file that could not be read or parsed.
#[derive(Debug)]
pub struct FileFailure {
    pub path: PathBuf,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct DirectoryScan {
    pub histories: Vec<DeviceHistory>,
    pub failures: Vec<FileFailure>,
}

/// Reads every `<device>/<*.json>` below `root`.
///
/// Files are visited in name order and histories are stably sorted by cycle
/// timestamp, so duplicated cycles keep their on-disk order. Top-level files
/// (ground truth, manifests) are ignored. Unreadable or malformed files are
/// collected in [`DirectoryScan::failures`] rather than aborting the scan.
pub fn read_record_dir(root: &Path) -> Result<DirectoryScan> {
    if !root.is_dir() {
        return Err(Error::Corpus {
            path: root.to_path_buf(),
            message: "not a directory".into(),
        });
    }
    let mut devices: BTreeMap<String, Vec<_>> = BTreeMap::new();
    let mut failures = Vec::new();
    let walker = WalkDir::new(root)
        .min_depth(2)
        .max_depth(2)
        .sort_by_file_name();
    for entry in walker {
        let entry = entry.map_err(|e| {
            let path = e
                .path()
                .map_or_else(|| root.to_path_buf(), Path::to_path_buf);
            Error::io(path, e.into())
        })?;
        let path = entry.path();
        if !entry.file_type().is_file() || path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let device = path
            .parent()
            .and_then(Path::file_name)
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = fs::read(path)
            .map_err(|e| Error::io(path, e))
            .and_then(|raw| parse_json_v1(&raw));
        match parsed {
            Ok(record) => devices.entry(device).or_default().push(record),
            Err(error) => failures.push(FileFailure {
                path: path.to_path_buf(),
                error,
            }),
        }
    }
    let histories = devices
        .into_iter()
        .map(|(id, records)| DeviceHistory::new(id, records))
        .collect();
    Ok(DirectoryScan {
        histories,
        failures,
    })
}

/// Writes histories in the directory-of-files layout and returns the paths
/// written, in order.
pub fn write_record_dir(root: &Path, histories: &[DeviceHistory]) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for history in histories {
        let dir = root.join(&history.device_id);
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let mut repeats: BTreeMap<String, usize> = BTreeMap::new();
        for record in &history.records {
            let stem = format_timestamp(&record.cycle_timestamp);
            let seen = repeats.entry(stem.clone()).or_insert(0);
            let name = match *seen {
                0 => format!("{stem}.json"),
                n => format!("{stem}_{n}.json"),
            };
            *seen += 1;
            let path = dir.join(name);
            fs::write(&path, serialize_record(record, RecordFormat::JsonV1))
                .map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusDocument {
    format: String,
    version: u32,
    cleaned: bool,
    devices: Vec<DeviceDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DeviceDocument {
    device_id: String,
    num_qubits: usize,
    records: Vec<RecordDocument>,
}

/// Serialized corpus database bytes.
pub fn corpus_to_bytes(histories: &[DeviceHistory], cleaned: bool) -> Vec<u8> {
    let doc = CorpusDocument {
        format: CORPUS_FORMAT.into(),
        version: CORPUS_VERSION,
        cleaned,
        devices: histories
            .iter()
            .map(|h| DeviceDocument {
                device_id: h.device_id.clone(),
                num_qubits: h.num_qubits,
                records: h.records.iter().map(record_to_document).collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_vec(&doc).expect("corpus documents always serialize");
    out.push(b'\n');
    out
}

pub fn save_corpus(path: &Path, histories: &[DeviceHistory], cleaned: bool) -> Result<()> {
    fs::write(path, corpus_to_bytes(histories, cleaned)).map_err(|e| Error::io(path, e))
}

/// Loaded corpus and whether it was written by the cleaning step.
pub fn load_corpus(path: &Path) -> Result<(Vec<DeviceHistory>, bool)> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    let bad = |message: String| Error::Corpus {
        path: path.to_path_buf(),
        message,
    };
    let doc: CorpusDocument =
        serde_json::from_slice(&raw).map_err(|e| bad(format!("not a corpus database: {e}")))?;
    if doc.format != CORPUS_FORMAT || doc.version != CORPUS_VERSION {
        return Err(bad(format!(
            "unsupported corpus {} v{}",
            doc.format, doc.version
        )));
    }
    let histories = doc
        .devices
        .into_iter()
        .map(|d| {
            let records = d
                .records
                .into_iter()
                .map(document_to_record)
                .collect::<Result<Vec<_>>>()?;
            Ok(DeviceHistory {
                device_id: d.device_id,
                num_qubits: d.num_qubits,
                records,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((histories, doc.cleaned))
}
