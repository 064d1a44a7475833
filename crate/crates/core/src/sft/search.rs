//! Completion search: find a locally valid pattern on a window that agrees
//! with prescribed cells.
//!
//! Domains are symbol bitsets. Arc consistency is enforced along grid edges,
//! then depth-first search branches on the smallest open domain.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};

use super::definition::SftDefinition;
use super::enumerate::Layout;
use super::pattern::Pattern;
use super::symbols::{members, Symbol, SymbolSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Pattern),
    Infeasible,
    Exhausted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Pattern> {
        match self {
            SearchOutcome::Found(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

#[derive(Clone, Debug)]
pub struct CompletionProblem<'a> {
    sft: &'a SftDefinition,
    block: Block,
    layout: Layout,
    domains: Vec<SymbolSet>,
}

struct Search<'s> {
    sft: &'s SftDefinition,
    layout: &'s Layout,
    nodes: u64,
    max_nodes: u64,
    rng: Option<ChaCha8Rng>,
}

impl<'a> CompletionProblem<'a> {
    pub fn new(sft: &'a SftDefinition, block: &Block) -> Result<Self> {
        if sft.dim() != block.dim() {
            return Err(Error::DimensionMismatch {
                expected: sft.dim(),
                found: block.dim(),
            });
        }
        let layout = Layout::new(block)?;
        let domains = vec![sft.symbols().all(); layout.len];
        Ok(CompletionProblem {
            sft,
            block: block.clone(),
            layout,
            domains,
        })
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    fn index(&self, c: &Coord) -> Result<usize> {
        self.block.index_of(c).ok_or_else(|| Error::NotContained {
            inner: c.to_string(),
            outer: self.block.to_string(),
        })
    }

    /// Intersect the domain at `c` with `set`.
    pub fn restrict(&mut self, c: &Coord, set: SymbolSet) -> Result<()> {
        let i = self.index(c)?;
        self.domains[i] &= set;
        Ok(())
    }

    pub fn fix(&mut self, c: &Coord, s: Symbol) -> Result<()> {
        if s as usize >= self.sft.alphabet_size() {
            return Err(Error::SymbolOutOfRange {
                index: s as usize,
                size: self.sft.alphabet_size(),
            });
        }
        self.restrict(c, 1u64 << s)
    }

    /// Fix every cell of `p`; its block must lie inside the window.
    pub fn fix_pattern(&mut self, p: &Pattern) -> Result<()> {
        if !self.block.contains_block(p.block()) {
            return Err(Error::NotContained {
                inner: p.block().to_string(),
                outer: self.block.to_string(),
            });
        }
        for (c, &s) in p.block().iter().zip(p.cells()) {
            self.fix(&c, s)?;
        }
        Ok(())
    }

    /// Fix the cells of `p` that fall inside the window, ignoring the rest.
    pub fn fix_overlap(&mut self, p: &Pattern) -> Result<()> {
        for (c, &s) in p.block().iter().zip(p.cells()) {
            if self.block.contains(&c) {
                self.fix(&c, s)?;
            }
        }
        Ok(())
    }

    pub fn solve(&self, budget: SearchBudget) -> SearchOutcome {
        self.run(budget, None)
    }

    /// Like [`solve`](Self::solve) but tries values in a seeded random order.
    pub fn solve_random(&self, budget: SearchBudget, seed: u64) -> SearchOutcome {
        self.run(budget, Some(ChaCha8Rng::seed_from_u64(seed)))
    }

    fn run(&self, budget: SearchBudget, rng: Option<ChaCha8Rng>) -> SearchOutcome {
        let mut domains = self.domains.clone();
        let mut search = Search {
            sft: self.sft,
            layout: &self.layout,
            nodes: 0,
            max_nodes: budget.max_nodes,
            rng,
        };
        let all: Vec<usize> = (0..domains.len()).collect();
        if !search.propagate(&mut domains, all) {
            return SearchOutcome::Infeasible;
        }
        match search.dfs(&mut domains) {
            Some(true) => {
                let cells = domains.iter().map(|d| d.trailing_zeros() as Symbol).collect();
                SearchOutcome::Found(Pattern::new(self.block.clone(), cells).expect("sized"))
            }
            Some(false) => SearchOutcome::Infeasible,
            None => SearchOutcome::Exhausted,
        }
    }
}

impl Search<'_> {
    fn propagate(&self, domains: &mut [SymbolSet], mut queue: Vec<usize>) -> bool {
        let rules = self.sft.rules();
        let mut queued = vec![false; domains.len()];
        for &i in &queue {
            queued[i] = true;
        }
        while let Some(i) = queue.pop() {
            queued[i] = false;
            let di = domains[i];
            if di == 0 {
                return false;
            }
            let mut touch = |j: usize, allowed: SymbolSet, domains: &mut [SymbolSet]| -> bool {
                let nd = domains[j] & allowed;
                if nd != domains[j] {
                    if nd == 0 {
                        return false;
                    }
                    domains[j] = nd;
                    if !queued[j] {
                        queued[j] = true;
                        queue.push(j);
                    }
                }
                true
            };
            for (k, j) in self.layout.forward(i) {
                if !touch(j, rules[k].successors_of_set(di), domains) {
                    return false;
                }
            }
            for (k, j) in self.layout.back(i) {
                if !touch(j, rules[k].predecessors_of_set(di), domains) {
                    return false;
                }
            }
        }
        true
    }

    /// `Some(true)` on success with singleton domains, `Some(false)` when the
    /// subtree is infeasible, `None` once the node budget is spent.
    fn dfs(&mut self, domains: &mut Vec<SymbolSet>) -> Option<bool> {
        let pick = domains
            .iter()
            .enumerate()
            .filter(|(_, d)| d.count_ones() > 1)
            .min_by_key(|(i, d)| (d.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(i) = pick else {
            return Some(true);
        };
        let mut values: Vec<Symbol> = members(domains[i]).collect();
        if let Some(rng) = self.rng.as_mut() {
            values.shuffle(rng);
        }
        for s in values {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return None;
            }
            let mut trial = domains.clone();
            trial[i] = 1u64 << s;
            if !self.propagate(&mut trial, vec![i]) {
                continue;
            }
            match self.dfs(&mut trial)? {
                true => {
                    *domains = trial;
                    return Some(true);
                }
                false => continue,
            }
        }
        Some(false)
    }
}

/// Search for a locally valid extension of `p` to `window`.
pub fn extend_to_window(
    sft: &SftDefinition,
    p: &Pattern,
    window: &Block,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    let mut prob = CompletionProblem::new(sft, window)?;
    prob.fix_pattern(p)?;
    Ok(prob.solve(budget))
}
