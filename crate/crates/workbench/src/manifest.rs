//! Run manifests: what was run, with which settings, and a checksum of the
//! data it produced.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub versions: BTreeMap<&'static str, &'static str>,
    pub started_unix_ms: u64,
    pub wall_clock_ms: f64,
    pub output: Option<String>,
    pub output_bytes: usize,
    pub output_sha256: String,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, seed: Option<u64>) -> Self {
        let versions = BTreeMap::from([
            ("lambda-core", lambda_core::VERSION),
            ("lambda-workbench", env!("CARGO_PKG_VERSION")),
        ]);
        RunManifest {
            command: command.to_string(),
            config,
            seed,
            versions,
            started_unix_ms: 0,
            wall_clock_ms: 0.0,
            output: None,
            output_bytes: 0,
            output_sha256: String::new(),
        }
    }

    /// Records the checksum and length of the data written.
    pub fn seal(&mut self, data: &[u8]) {
        self.output_bytes = data.len();
        self.output_sha256 = sha256_hex(data);
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
