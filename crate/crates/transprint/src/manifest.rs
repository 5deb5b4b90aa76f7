//! Run manifests.
//!
//! Every command records what it ran and a SHA-256 of every artifact it
//! wrote. Wall-clock duration lives here and nowhere else, so data files
//! stay byte-identical across reruns.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sha256_hex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Vec<String>,
    /// Output path to SHA-256 hex.
    pub checksums: BTreeMap<String, String>,
    pub duration_ms: u128,
}

/// Collects inputs and outputs while a command runs.
#[derive(Debug)]
pub struct ManifestBuilder {
    command: String,
    args: Vec<String>,
    seed: Option<u64>,
    inputs: Vec<String>,
    outputs: Vec<PathBuf>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn start(command: &str, args: Vec<String>) -> Self {
        ManifestBuilder {
            command: command.to_string(),
            args,
            seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn input(&mut self, path: &Path) {
        self.inputs.push(path.display().to_string());
    }

    pub fn output(&mut self, path: impl Into<PathBuf>) {
        self.outputs.push(path.into());
    }

    pub fn outputs(&mut self, paths: impl IntoIterator<Item = PathBuf>) {
        self.outputs.extend(paths);
    }

    pub fn finish(self) -> Result<RunManifest> {
        let mut checksums = BTreeMap::new();
        for path in &self.outputs {
            let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
            checksums.insert(path.display().to_string(), sha256_hex(&bytes));
        }
        Ok(RunManifest {
            command: self.command,
            args: self.args,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: self.seed,
            inputs: self.inputs,
            checksums,
            duration_ms: self.started.elapsed().as_millis(),
        })
    }
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = serde_json::to_vec_pretty(self).expect("manifest json");
        out.push(b'\n');
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_slice(&raw).map_err(|e| Error::Corpus {
            path: path.to_path_buf(),
            message: format!("not a run manifest: {e}"),
        })
    }
}

/// `<path>.manifest.json`
pub fn default_manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
