//! Serializable views shared by certificates and CLI reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::sft::{Pattern, SymbolTable};

/// A pattern with symbol labels, for reports and counterexample dumps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternDump {
    pub origin: Vec<i64>,
    pub extents: Vec<usize>,
    /// Labels in block index order (axis 0 fastest).
    pub cells: Vec<String>,
}

impl PatternDump {
    pub fn new(p: &Pattern, symbols: &SymbolTable) -> Self {
        PatternDump {
            origin: p.block().lo().components().to_vec(),
            extents: p.block().extents(),
            cells: p.cells().iter().map(|&s| symbols.name(s).to_string()).collect(),
        }
    }
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
