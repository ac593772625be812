use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use exactexpo::mask::{self, SubsetMask};
use exactexpo::Counters;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// One solver run, printed as a single JSON document.
#[derive(Serialize, Debug)]
pub struct RunResult {
    pub schema_version: u32,
    pub verb: &'static str,
    pub algorithm: &'static str,
    pub instance_digest: String,
    pub decision: Option<bool>,
    /// Decimal, since counts can exceed 64 bits.
    pub count: Option<String>,
    pub witness: Option<Value>,
    pub counters: BTreeMap<&'static str, u64>,
    pub seed: u64,
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Value>,
}

impl RunResult {
    pub fn new(verb: &'static str, algorithm: &'static str, canonical: &str, seed: u64) -> Self {
        RunResult {
            schema_version: SCHEMA_VERSION,
            verb,
            algorithm,
            instance_digest: digest(canonical),
            decision: None,
            count: None,
            witness: None,
            counters: BTreeMap::new(),
            seed,
            elapsed_ms: None,
            diagnostics: None,
        }
    }

    pub fn counters(&mut self, c: &Counters) {
        self.counters = c.iter().collect();
    }

    /// Prints the result and returns the exit status: success unless the
    /// decision is false.
    pub fn emit(self) -> Result<bool> {
        debug_assert!(self.witness.is_none() || self.decision == Some(true));
        println!("{}", serde_json::to_string_pretty(&self)?);
        Ok(self.decision != Some(false))
    }
}

/// SHA-256 of the canonical rendering, so formatting differences in the
/// input file do not change the digest.
pub fn digest(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn one_based(m: SubsetMask) -> Value {
    Value::from(mask::elements(m).map(|e| e + 1).collect::<Vec<_>>())
}
