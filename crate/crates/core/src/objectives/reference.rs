//! Reference minima for Lennard-Jones clusters.
//!
//! Plain text, one record per line: `lj <particle_count> <energy>`. Everything
//! after `#` is a comment; blank lines are ignored. The bundled table in
//! `data/lj_reference.txt` is produced by the `basin_hopping` example.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../../data/lj_reference.txt");

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReferenceTable {
    lennard_jones: BTreeMap<usize, f64>,
}

impl ReferenceTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = ReferenceTable::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::ReferenceFormat {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [kind, count, energy] = fields[..] else {
                return Err(err(format!("expected 3 fields, found {}", fields.len())));
            };
            if kind != "lj" {
                return Err(err(format!("unknown record kind `{kind}`")));
            }
            let count: usize = count
                .parse()
                .map_err(|_| err(format!("bad particle count `{count}`")))?;
            let energy: f64 = energy
                .parse()
                .map_err(|_| err(format!("bad energy `{energy}`")))?;
            if !energy.is_finite() {
                return Err(err(format!("non-finite energy `{energy}`")));
            }
            table.lennard_jones.insert(count, energy);
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// The table compiled into the crate.
    pub fn bundled() -> &'static ReferenceTable {
        static TABLE: OnceLock<ReferenceTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            ReferenceTable::parse(BUNDLED).expect("bundled reference table is well formed")
        })
    }

    pub fn lennard_jones(&self, particle_count: usize) -> Option<f64> {
        self.lennard_jones.get(&particle_count).copied()
    }

    pub fn insert_lennard_jones(&mut self, particle_count: usize, energy: f64) {
        self.lennard_jones.insert(particle_count, energy);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (count, energy) in &self.lennard_jones {
            writeln!(out, "lj {count} {energy:.10}").unwrap();
        }
        out
    }
}
