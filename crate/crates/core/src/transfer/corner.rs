use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sft::{SftDefinition, Symbol};

/// One locally valid corner: `diag` at `(-1,-1)`, `left` at `(-1,0)`,
/// `below` at `(0,-1)`, and the number of symbols that fit at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CornerRecord {
    pub diag: Symbol,
    pub left: Symbol,
    pub below: Symbol,
    pub completions: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CornerProfile {
    pub records: Vec<CornerRecord>,
    /// completion count -> number of corners with that count
    pub histogram: BTreeMap<usize, usize>,
    pub max_completions: usize,
}

impl CornerProfile {
    /// True when every corner has exactly `c` completions.
    pub fn is_uniform(&self, c: usize) -> bool {
        self.histogram.len() == 1 && self.histogram.contains_key(&c)
    }
}

pub fn corner_choice_profile(x: &SftDefinition) -> Result<CornerProfile> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: x.dim(),
        });
    }
    let n = x.alphabet_size() as Symbol;
    let (h, v) = (x.rule(0), x.rule(1));
    let mut records = Vec::new();
    for diag in 0..n {
        for left in crate::sft::members(v.successors(diag)) {
            for below in crate::sft::members(h.successors(diag)) {
                let completions = (h.successors(left) & v.successors(below)).count_ones() as usize;
                records.push(CornerRecord {
                    diag,
                    left,
                    below,
                    completions,
                });
            }
        }
    }
    let mut histogram = BTreeMap::new();
    for r in &records {
        *histogram.entry(r.completions).or_insert(0) += 1;
    }
    let max_completions = records.iter().map(|r| r.completions).max().unwrap_or(0);
    Ok(CornerProfile {
        records,
        histogram,
        max_completions,
    })
}

/// `log(|A|^(4n+1) c^(4n^2)) / (2n+1)^2` with `c` the largest corner
/// completion count: fill the cube of radius `n` row by row, paying `|A|`
/// on the left column and bottom row and at most `c` elsewhere.
pub fn corner_entropy_upper_bound(x: &SftDefinition, n: u64) -> Result<f64> {
    let c = corner_choice_profile(x)?.max_completions as f64;
    let a = x.alphabet_size() as f64;
    let n = n as f64;
    Ok(((4.0 * n + 1.0) * a.ln() + 4.0 * n * n * c.ln()) / (2.0 * n + 1.0).powi(2))
}
