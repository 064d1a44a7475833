//! JSON definition documents.
//!
//! ```json
//! {
//!   "schema": "sftkit/definition/v1",
//!   "name": "golden_mean",
//!   "dimension": 1,
//!   "symbols": ["0", "1"],
//!   "rules": [ { "pairs": [["0","0"], ["0","1"], ["1","0"]] } ]
//! }
//! ```
//!
//! A rule may instead be `{"edge_profile": {"a": [low, high], ...}}`, which
//! allows `(a, b)` iff the high face of `a` equals the low face of `b`.
//! Saving always writes explicit sorted pairs, so `save(load(save(x)))` is
//! byte-identical to `save(x)`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::definition::SftDefinition;
use super::rule::AxisRule;
use super::symbols::SymbolTable;

pub const DEFINITION_SCHEMA: &str = "sftkit/definition/v1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DefinitionDoc {
    schema: String,
    name: String,
    dimension: usize,
    symbols: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    strongly_essential: bool,
    rules: Vec<RuleDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RuleDoc {
    Pairs {
        pairs: Vec<(String, String)>,
    },
    EdgeProfile {
        edge_profile: BTreeMap<String, (bool, bool)>,
    },
}

fn label(symbols: &SymbolTable, l: &str) -> Result<u8> {
    symbols
        .lookup(l)
        .ok_or_else(|| Error::Schema(format!("rule references unknown symbol {l:?}")))
}

pub fn load_sft(text: &str) -> Result<SftDefinition> {
    let doc: DefinitionDoc =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("malformed definition: {e}")))?;
    if doc.schema != DEFINITION_SCHEMA {
        return Err(Error::Schema(format!(
            "unsupported schema {:?}, expected {DEFINITION_SCHEMA:?}",
            doc.schema
        )));
    }
    if doc.rules.len() != doc.dimension {
        return Err(Error::DimensionMismatch {
            expected: doc.dimension,
            found: doc.rules.len(),
        });
    }
    let symbols = SymbolTable::new(doc.symbols)?;
    let n = symbols.len();
    let mut rules = Vec::with_capacity(doc.dimension);
    for r in doc.rules {
        let rule = match r {
            RuleDoc::Pairs { pairs } => {
                let pairs = pairs
                    .iter()
                    .map(|(a, b)| Ok((label(&symbols, a)?, label(&symbols, b)?)))
                    .collect::<Result<Vec<_>>>()?;
                AxisRule::from_pairs(n, pairs)
            }
            RuleDoc::EdgeProfile { edge_profile } => {
                let mut faces = vec![None; n];
                for (l, f) in &edge_profile {
                    faces[label(&symbols, l)? as usize] = Some(*f);
                }
                let faces = faces
                    .into_iter()
                    .enumerate()
                    .map(|(i, f)| {
                        f.ok_or_else(|| {
                            Error::Schema(format!("edge profile misses symbol {:?}", symbols.name(i as u8)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                AxisRule::from_fn(n, |a, b| faces[a as usize].1 == faces[b as usize].0)
            }
        };
        rules.push(rule);
    }
    SftDefinition::new(doc.name, symbols, rules)?.with_strongly_essential(doc.strongly_essential)
}

pub fn save_sft(x: &SftDefinition) -> String {
    let names = x.symbols();
    let doc = DefinitionDoc {
        schema: DEFINITION_SCHEMA.to_string(),
        name: x.name().to_string(),
        dimension: x.dim(),
        symbols: names.names().to_vec(),
        strongly_essential: x.is_strongly_essential(),
        rules: x
            .rules()
            .iter()
            .map(|r| RuleDoc::Pairs {
                pairs: r
                    .pairs()
                    .map(|(a, b)| (names.name(a).to_string(), names.name(b).to_string()))
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn load_sft_file(path: &Path) -> Result<SftDefinition> {
    load_sft(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wire::build_wire_shift;

    #[test]
    fn full_shift_document() {
        let doc = r#"{"schema":"sftkit/definition/v1","name":"f","dimension":1,
            "symbols":["a","b"],"rules":[{"pairs":[["a","a"],["a","b"],["b","a"],["b","b"]]}]}"#;
        let x = load_sft(doc).unwrap();
        assert_eq!(x.rules(), SftDefinition::full_shift(1, 2).unwrap().rules());
    }

    #[test]
    fn unknown_label_is_schema_error() {
        let doc = r#"{"schema":"sftkit/definition/v1","name":"f","dimension":1,
            "symbols":["1","2"],"rules":[{"pairs":[["1","9"]]}]}"#;
        assert!(matches!(load_sft(doc), Err(Error::Schema(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let doc = r#"{"schema":"sftkit/definition/v1","name":"f","dimension":2,
            "symbols":["1"],"rules":[{"pairs":[]}]}"#;
        assert!(matches!(load_sft(doc), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn edge_profile_rules_match_wire_shift() {
        let doc = r#"{"schema":"sftkit/definition/v1","name":"wire_W","dimension":2,
            "symbols":["1","2","3","4","5","6","7"],"rules":[
            {"edge_profile":{"1":[false,false],"2":[true,true],"3":[true,true],"4":[true,true],
                             "5":[false,false],"6":[false,true],"7":[true,false]}},
            {"edge_profile":{"1":[false,false],"2":[false,false],"3":[false,true],"4":[true,false],
                             "5":[true,true],"6":[true,true],"7":[true,true]}}]}"#;
        let x = load_sft(doc).unwrap();
        let w = build_wire_shift(1).unwrap();
        assert_eq!(x.rules(), w.sft().rules());
    }

    #[test]
    fn save_is_canonical() {
        let w = build_wire_shift(2).unwrap();
        let s = save_sft(w.sft());
        let back = load_sft(&s).unwrap();
        assert_eq!(&back, w.sft());
        assert_eq!(save_sft(&back), s);
    }
}
