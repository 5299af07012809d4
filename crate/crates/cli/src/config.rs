//! Flag/config merging and the canonical configuration hash.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

/// Fields read from a `--config` file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub command: Option<String>,
    pub fields: Map<String, Value>,
}

pub fn load(path: &Path) -> Result<Overrides> {
    let text = fs::read_to_string(path)?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Overrides> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Config(format!("config is not JSON: {e}")))?;
    let Value::Object(mut fields) = value else {
        return Err(CliError::Config("config must be a JSON object".into()));
    };
    let seed = match fields.remove("seed") {
        None => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| CliError::Config(format!("seed must be a nonnegative integer, got {v}")))?,
        ),
    };
    let command = match fields.remove("command") {
        None => None,
        Some(Value::String(s)) => Some(s),
        Some(v) => return Err(CliError::Config(format!("command must be a string, got {v}"))),
    };
    Ok(Overrides { seed, command, fields })
}

/// Overlay config fields on the flag values. Keys unknown to the
/// subcommand are rejected.
pub fn merge<T>(args: &T, overrides: &Overrides) -> Result<T>
where
    T: Serialize + DeserializeOwned,
{
    let mut value = serde_json::to_value(args).map_err(|e| CliError::Config(e.to_string()))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| CliError::Config("arguments do not form an object".into()))?;
    for (k, v) in &overrides.fields {
        if !obj.contains_key(k) {
            return Err(CliError::Config(format!("unknown config key `{k}`")));
        }
        obj.insert(k.clone(), v.clone());
    }
    serde_json::from_value(value).map_err(|e| CliError::Config(format!("bad config value: {e}")))
}

/// The effective configuration as canonical JSON (keys sorted).
pub fn canonical<T: Serialize>(command: &str, seed: u64, args: &T) -> Result<String> {
    let mut root = Map::new();
    root.insert("command".into(), Value::String(command.into()));
    root.insert("seed".into(), Value::from(seed));
    root.insert(
        "args".into(),
        serde_json::to_value(args).map_err(|e| CliError::Config(e.to_string()))?,
    );
    serde_json::to_string(&Value::Object(root)).map_err(|e| CliError::Config(e.to_string()))
}

pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn require_power_of_two(name: &str, n: usize) -> Result<()> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be a power of two, got {n}")))
    }
}

pub fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Config(msg.into()))
    }
}
