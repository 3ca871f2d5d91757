//! The provenance block embedded in every report.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: u64,
    pub workers: usize,
    pub budgets: BTreeMap<String, Value>,
    pub versions: BTreeMap<String, String>,
    /// Only recorded with `--timing`, so that reruns stay byte-identical by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u128>,
    /// SHA-256 of every input file, keyed by the path given on the command line.
    pub inputs: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(command: Vec<String>, seed: u64, workers: usize) -> Self {
        let version = env!("CARGO_PKG_VERSION").to_string();
        let versions = ["gibbslab", "lattice-core", "cocycle-engine", "marker-lab", "representation-builders", "model-zoo"]
            .into_iter()
            .map(|c| (c.to_string(), version.clone()))
            .collect();
        RunManifest {
            command,
            seed,
            workers,
            budgets: BTreeMap::new(),
            versions,
            wall_clock_ms: None,
            inputs: BTreeMap::new(),
        }
    }

    pub fn budget(&mut self, key: &str, value: impl Serialize) {
        self.budgets.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    /// Reads an input file and records its digest.
    pub fn read_input(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_known_input() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
