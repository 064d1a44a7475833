use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of a symbol in its alphabet.
pub type Symbol = u8;

/// Bitset over an alphabet; bit `a` stands for symbol `a`.
pub type SymbolSet = u64;

/// Alphabets are capped so that symbol sets fit in one machine word.
pub const MAX_SYMBOLS: usize = 64;

pub(crate) fn full_set(n: usize) -> SymbolSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn members(set: SymbolSet) -> impl Iterator<Item = Symbol> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            Some(b as Symbol)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl SymbolTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Schema("alphabet must contain at least one symbol".into()));
        }
        if names.len() > MAX_SYMBOLS {
            return Err(Error::CapExceeded {
                what: "alphabet size",
                size: names.len() as u128,
                cap: MAX_SYMBOLS as u128,
            });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) {
                return Err(Error::Schema(format!("invalid symbol label {n:?}")));
            }
            if index.insert(n.clone(), i as Symbol).is_some() {
                return Err(Error::Schema(format!("duplicate symbol label {n:?}")));
            }
        }
        Ok(SymbolTable { names, index })
    }

    /// Labels `0, 1, …, n-1`.
    pub fn numbered(n: usize) -> Result<Self> {
        SymbolTable::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, label: &str) -> Option<Symbol> {
        self.index.get(label).copied()
    }

    pub fn all(&self) -> SymbolSet {
        full_set(self.len())
    }
}
