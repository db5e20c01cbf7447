//! The sporadic group table.
//!
//! Plain text, one record per line: `name, order, out_order`. Lines starting
//! with `#` are comments; a `# version: N` comment records the table revision.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

pub const EMBEDDED_TABLE: &str = include_str!("../../data/sporadic.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SporadicRecord {
    pub name: String,
    #[serde(serialize_with = "crate::report::decimal")]
    pub order: BigUint,
    pub out_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SporadicTable {
    version: Option<String>,
    records: Vec<SporadicRecord>,
}

impl SporadicTable {
    pub fn embedded() -> Self {
        EMBEDDED_TABLE
            .parse()
            .expect("embedded sporadic table is well formed")
    }

    pub fn load(path: &Path) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn version(&self) -> Option<&str> {
        self.version.as_deref()
    }

    pub fn records(&self) -> &[SporadicRecord] {
        &self.records
    }

    pub fn get(&self, name: &str) -> Option<&SporadicRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

impl FromStr for SporadicTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut version = None;
        let mut records: Vec<SporadicRecord> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("version:") {
                    version = Some(v.trim().to_string());
                }
                continue;
            }
            let err = |message: String| Error::SporadicTable {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [name, order, out] = fields[..] else {
                return Err(err(format!(
                    "expected 3 comma-separated fields, got {}",
                    fields.len()
                )));
            };
            if name.is_empty() {
                return Err(err("empty name".into()));
            }
            let order: BigUint = order
                .parse()
                .map_err(|_| err(format!("order {order:?} is not a decimal integer")))?;
            let out_order: u64 = out
                .parse()
                .map_err(|_| err(format!("out_order {out:?} is not a decimal integer")))?;
            if out_order == 0 || order < BigUint::from(60u32) {
                return Err(err("order must be ≥ 60 and out_order ≥ 1".into()));
            }
            if records.iter().any(|r| r.name == name) {
                return Err(err(format!("duplicate entry {name}")));
            }
            records.push(SporadicRecord {
                name: name.to_string(),
                order,
                out_order,
            });
        }
        Ok(SporadicTable { version, records })
    }
}
