use super::symbols::{full_set, members, Symbol, SymbolSet};

/// Allowed ordered pairs along one axis: `allows(a, b)` means `b` may sit at
/// `i + e_k` when `a` sits at `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxisRule {
    succ: Vec<SymbolSet>,
    pred: Vec<SymbolSet>,
}

impl AxisRule {
    pub fn from_fn(n: usize, f: impl Fn(Symbol, Symbol) -> bool) -> Self {
        let mut succ = vec![0u64; n];
        let mut pred = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                if f(a as Symbol, b as Symbol) {
                    succ[a] |= 1 << b;
                    pred[b] |= 1 << a;
                }
            }
        }
        AxisRule { succ, pred }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Symbol, Symbol)>) -> Self {
        let mut succ = vec![0u64; n];
        let mut pred = vec![0u64; n];
        for (a, b) in pairs {
            succ[a as usize] |= 1 << b;
            pred[b as usize] |= 1 << a;
        }
        AxisRule { succ, pred }
    }

    pub fn full(n: usize) -> Self {
        AxisRule {
            succ: vec![full_set(n); n],
            pred: vec![full_set(n); n],
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.succ.len()
    }

    #[inline]
    pub fn allows(&self, a: Symbol, b: Symbol) -> bool {
        self.succ[a as usize] >> b & 1 == 1
    }

    #[inline]
    pub fn successors(&self, a: Symbol) -> SymbolSet {
        self.succ[a as usize]
    }

    #[inline]
    pub fn predecessors(&self, b: Symbol) -> SymbolSet {
        self.pred[b as usize]
    }

    /// Union of successors over a set of symbols.
    pub fn successors_of_set(&self, set: SymbolSet) -> SymbolSet {
        members(set).fold(0, |acc, a| acc | self.succ[a as usize])
    }

    pub fn predecessors_of_set(&self, set: SymbolSet) -> SymbolSet {
        members(set).fold(0, |acc, b| acc | self.pred[b as usize])
    }

    pub fn pair_count(&self) -> usize {
        self.succ.iter().map(|s| s.count_ones() as usize).sum()
    }

    /// Allowed pairs sorted by `(a, b)`.
    pub fn pairs(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, &s)| members(s).map(move |b| (a as Symbol, b)))
    }

    /// Relabel symbols: the pair `(a, b)` becomes `(perm[a], perm[b])`.
    pub fn permuted(&self, perm: &[Symbol]) -> AxisRule {
        AxisRule::from_pairs(
            self.alphabet_size(),
            self.pairs().map(|(a, b)| (perm[a as usize], perm[b as usize])),
        )
    }

    /// The same relation read in the opposite direction.
    pub fn reversed(&self) -> AxisRule {
        AxisRule {
            succ: self.pred.clone(),
            pred: self.succ.clone(),
        }
    }
}
