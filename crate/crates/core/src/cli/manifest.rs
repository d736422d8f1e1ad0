use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileChecksum {
    pub path: String,
    pub sha256: String,
}

/// Provenance record written next to every augmented corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub method: String,
    pub parameters: Value,
    pub master_seed: u64,
    pub append_original: bool,
    pub source_tag: String,
    pub target_tag: String,
    pub input_pairs: usize,
    pub synthetic_pairs: usize,
    pub output_pairs: usize,
    pub inputs: Vec<FileChecksum>,
    pub outputs: Vec<FileChecksum>,
    pub duration_ms: u128,
}
