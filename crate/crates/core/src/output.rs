//! Run records and file emission for the command-line front end.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

/// What a run did, on what input, and whether its checks held. Everything
/// except `timestamp` is a function of the command line and input bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub engine: Option<String>,
    pub input_hash: Option<String>,
    pub outputs: Vec<String>,
    pub timestamp: u64,
    pub passed: bool,
    pub summary: String,
}

impl RunRecord {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            engine: None,
            input_hash: None,
            outputs: Vec::new(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            passed: true,
            summary: String::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Folds `bytes` into the input hash.
    pub fn hash_input(&mut self, bytes: &[u8]) -> &mut Self {
        let mut h = Sha256::new();
        if let Some(prev) = &self.input_hash {
            h.update(prev.as_bytes());
        }
        h.update(bytes);
        self.input_hash = Some(hex(&h.finalize()));
        self
    }

    /// Writes `<dir>/<command>.run.json`.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(format!("{}.run.json", self.command.replace(['/', ' '], "_")));
        let body = serde_json::to_string_pretty(self).expect("records serialize");
        fs::write(&path, body + "\n")?;
        Ok(path)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes `contents` to `<dir>/<name>`, creating `dir`.
pub fn write_output(dir: &Path, name: &str, contents: &[u8]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("report types serialize");
    s.push(b'\n');
    s
}
