use crate::error::{Error, Result};

use super::pattern::Pattern;
use super::rule::AxisRule;
use super::symbols::{Symbol, SymbolSet, SymbolTable};

/// A nearest-neighbor `Z^d` shift of finite type: an alphabet and one allowed
/// pair relation per axis.
///
/// Throughout the crate "language" means the locally valid patterns. That
/// agrees with the true language of the shift exactly when the shift is
/// extendible, which holds for every built-in wire shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftDefinition {
    name: String,
    symbols: SymbolTable,
    rules: Vec<AxisRule>,
    strongly_essential: bool,
}

impl SftDefinition {
    pub fn new(name: impl Into<String>, symbols: SymbolTable, rules: Vec<AxisRule>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::Schema("dimension must be at least 1".into()));
        }
        if let Some(r) = rules.iter().find(|r| r.alphabet_size() != symbols.len()) {
            return Err(Error::DimensionMismatch {
                expected: symbols.len(),
                found: r.alphabet_size(),
            });
        }
        Ok(SftDefinition {
            name: name.into(),
            symbols,
            rules,
            strongly_essential: false,
        })
    }

    /// Full shift on `m` symbols labelled `0..m`.
    pub fn full_shift(d: usize, m: usize) -> Result<Self> {
        let symbols = SymbolTable::numbered(m)?;
        SftDefinition::new(format!("full_{m}_d{d}"), symbols, vec![AxisRule::full(m); d])
    }

    /// Mark the definition as strongly essential; fails unless every symbol has
    /// a successor and a predecessor along every axis.
    pub fn with_strongly_essential(mut self, flag: bool) -> Result<Self> {
        if flag {
            for (k, rule) in self.rules.iter().enumerate() {
                for s in 0..self.alphabet_size() as Symbol {
                    if rule.successors(s) == 0 || rule.predecessors(s) == 0 {
                        return Err(Error::Schema(format!(
                            "symbol {} has no allowed pair on axis {k}",
                            self.symbols.name(s)
                        )));
                    }
                }
            }
        }
        self.strongly_essential = flag;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.rules.len()
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.symbols.len()
    }

    pub fn rules(&self) -> &[AxisRule] {
        &self.rules
    }

    pub fn rule(&self, axis: usize) -> &AxisRule {
        &self.rules[axis]
    }

    pub fn is_strongly_essential(&self) -> bool {
        self.strongly_essential
    }

    #[inline]
    pub fn allows(&self, axis: usize, a: Symbol, b: Symbol) -> bool {
        self.rules[axis].allows(a, b)
    }

    /// Lower-dimensional shift keeping only the listed axes, in order.
    pub fn restrict_axes(&self, axes: &[usize]) -> Result<SftDefinition> {
        if axes.is_empty() {
            return Err(Error::InvalidArgument("need at least one axis".into()));
        }
        let rules = axes
            .iter()
            .map(|&k| {
                self.rules.get(k).cloned().ok_or(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: k + 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SftDefinition::new(format!("{}|axes{axes:?}", self.name), self.symbols.clone(), rules)
    }

    /// Symbols `c` with `(c, c)` allowed on every axis.
    pub fn fixed_symbols(&self) -> Vec<Symbol> {
        (0..self.alphabet_size() as Symbol)
            .filter(|&c| self.rules.iter().all(|r| r.allows(c, c)))
            .collect()
    }

    /// Symbols `c` with `(c, c)` allowed along `axis`.
    pub fn fixed_symbols_on(&self, axis: usize) -> SymbolSet {
        let r = &self.rules[axis];
        (0..self.alphabet_size() as Symbol)
            .filter(|&c| r.allows(c, c))
            .fold(0, |m, c| m | 1 << c)
    }

    pub fn is_locally_valid(&self, p: &Pattern) -> Result<bool> {
        is_locally_valid(self, p)
    }
}

/// Every adjacent pair of cells inside the pattern's block satisfies the rule
/// of its axis.
pub fn is_locally_valid(x: &SftDefinition, p: &Pattern) -> Result<bool> {
    let d = x.dim();
    if p.block().dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.block().dim(),
        });
    }
    let n = x.alphabet_size();
    if let Some(&s) = p.cells().iter().find(|&&s| s as usize >= n) {
        return Err(Error::SymbolOutOfRange {
            index: s as usize,
            size: n,
        });
    }
    let extents = p.block().extents();
    let strides = p.block().strides();
    let cells = p.cells();
    for k in 0..d {
        let rule = x.rule(k);
        let stride = strides[k];
        let ext = extents[k];
        for i in 0..cells.len() {
            let pos = (i / stride) % ext;
            if pos + 1 < ext && !rule.allows(cells[i], cells[i + stride]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
