//! JSON run reports (`"schema": "hublab/1"`).

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "hublab/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
}

impl InputDigest {
    pub fn of(name: &str, data: &[u8]) -> Self {
        InputDigest { name: name.to_string(), sha256: hex::encode(Sha256::digest(data)), bytes: data.len() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub mismatches: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    /// Phase name to wall-clock seconds.
    pub timings: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
            results: Value::Null,
            timings: BTreeMap::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), json!(value));
    }

    /// Runs `f` and records its duration under `phase` (accumulating).
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timings.entry(phase.to_string()).or_insert(0.0) += start.elapsed().as_secs_f64();
        out
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Exact rational as `{"num", "den", "decimal"}` with 12 decimal places.
pub fn rational(r: &BigRational) -> Value {
    json!({
        "num": bigint(r.numer()),
        "den": bigint(r.denom()),
        "decimal": hublab_core::indices::decimal(r, 12),
    })
}

/// Numbers that may exceed `u64` are written as strings.
pub fn big(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn bigint(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}
