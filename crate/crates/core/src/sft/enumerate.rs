//! Exhaustive enumeration and exact counting of locally valid patterns.
//!
//! Streaming uses depth-first backtracking in block index order, consulting
//! the axis relations of the already placed neighbours `i - e_k`. Exact counts
//! use a frontier dynamic program over the same order, which only has to
//! remember the last slab of cells; the backtracking count is kept as an
//! independent route for cross-checks.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Block, DEFAULT_VOLUME_CAP};

use super::definition::SftDefinition;
use super::pattern::Pattern;
use super::rule::AxisRule;
use super::symbols::{members, Symbol, SymbolSet};

/// Maximum number of distinct frontier states the counting DP will hold.
pub const DEFAULT_FRONTIER_CAP: usize = 1 << 22;

/// Precomputed neighbour offsets for index-order traversal of a block.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub strides: Vec<usize>,
    pub extents: Vec<usize>,
    pub len: usize,
}

impl Layout {
    pub fn new(block: &Block) -> Result<Self> {
        let len = block.volume_within(DEFAULT_VOLUME_CAP)?;
        Ok(Layout {
            strides: block.strides(),
            extents: block.extents(),
            len,
        })
    }

    /// `(axis, index)` of each neighbour `i - e_k` inside the block.
    #[inline]
    pub fn back(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.strides.len()).filter_map(move |k| {
            let pos = (i / self.strides[k]) % self.extents[k];
            (pos > 0).then(|| (k, i - self.strides[k]))
        })
    }

    /// `(axis, index)` of each neighbour `i + e_k` inside the block.
    #[inline]
    pub fn forward(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.strides.len()).filter_map(move |k| {
            let pos = (i / self.strides[k]) % self.extents[k];
            (pos + 1 < self.extents[k]).then(|| (k, i + self.strides[k]))
        })
    }
}

#[inline]
fn candidates(rules: &[AxisRule], layout: &Layout, cells: &[Symbol], i: usize, all: SymbolSet) -> SymbolSet {
    layout
        .back(i)
        .fold(all, |m, (k, j)| m & rules[k].successors(cells[j]))
}

/// Lazy depth-first stream of the locally valid patterns on a block, in
/// lexicographic order of the cell vector.
pub struct PatternIter<'a> {
    sft: &'a SftDefinition,
    block: Block,
    layout: Layout,
    cells: Vec<Symbol>,
    options: Vec<SymbolSet>,
    depth: usize,
    started: bool,
    done: bool,
    first: SymbolSet,
}

impl<'a> PatternIter<'a> {
    fn new(sft: &'a SftDefinition, block: &Block, first: SymbolSet) -> Result<Self> {
        let layout = Layout::new(block)?;
        let n = layout.len;
        Ok(PatternIter {
            sft,
            block: block.clone(),
            layout,
            cells: vec![0; n],
            options: vec![0; n],
            depth: 0,
            started: false,
            done: false,
            first,
        })
    }

    /// Advance to the next complete assignment; the result lives in `self.cells`.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let n = self.layout.len;
        let all = self.sft.symbols().all();
        if !self.started {
            self.started = true;
            self.depth = 0;
            self.options[0] = self.first & all;
        }
        loop {
            let opts = self.options[self.depth];
            if opts == 0 {
                if self.depth == 0 {
                    self.done = true;
                    return false;
                }
                self.depth -= 1;
                continue;
            }
            let s = opts.trailing_zeros() as Symbol;
            self.options[self.depth] = opts & (opts - 1);
            self.cells[self.depth] = s;
            if self.depth + 1 == n {
                return true;
            }
            self.depth += 1;
            self.options[self.depth] =
                candidates(self.sft.rules(), &self.layout, &self.cells, self.depth, all);
        }
    }
}

impl Iterator for PatternIter<'_> {
    type Item = Pattern;

    fn next(&mut self) -> Option<Pattern> {
        if self.advance() {
            Some(Pattern::new(self.block.clone(), self.cells.clone()).expect("sized"))
        } else {
            None
        }
    }
}

/// Handle returned by [`enumerate_patterns`]: an exact count plus a stream.
pub struct PatternEnumeration<'a> {
    sft: &'a SftDefinition,
    block: Block,
}

impl<'a> PatternEnumeration<'a> {
    pub fn count(&self) -> Result<BigUint> {
        count_patterns(self.sft, &self.block)
    }

    pub fn iter(&self) -> Result<PatternIter<'a>> {
        PatternIter::new(self.sft, &self.block, u64::MAX)
    }

    pub fn block(&self) -> &Block {
        &self.block
    }
}

pub fn enumerate_patterns<'a>(sft: &'a SftDefinition, block: &Block) -> Result<PatternEnumeration<'a>> {
    check_dim(sft, block)?;
    block.volume_within(DEFAULT_VOLUME_CAP)?;
    Ok(PatternEnumeration {
        sft,
        block: block.clone(),
    })
}

fn check_dim(sft: &SftDefinition, block: &Block) -> Result<()> {
    if sft.dim() != block.dim() {
        return Err(Error::DimensionMismatch {
            expected: sft.dim(),
            found: block.dim(),
        });
    }
    Ok(())
}

/// Call `f` on the cell vector of every locally valid pattern, in stream order.
pub fn for_each_pattern(
    sft: &SftDefinition,
    block: &Block,
    mut f: impl FnMut(&[Symbol]),
) -> Result<()> {
    check_dim(sft, block)?;
    let mut it = PatternIter::new(sft, block, u64::MAX)?;
    while it.advance() {
        f(&it.cells);
    }
    Ok(())
}

/// Collect all locally valid patterns on a block.
pub fn all_patterns(sft: &SftDefinition, block: &Block) -> Result<Vec<Pattern>> {
    Ok(enumerate_patterns(sft, block)?.iter()?.collect())
}

/// Leaf-counting backtracking, split over the first cell's symbol and run in
/// parallel.
pub fn count_patterns_backtracking(sft: &SftDefinition, block: &Block) -> Result<BigUint> {
    check_dim(sft, block)?;
    Layout::new(block)?;
    let firsts: Vec<Symbol> = members(sft.symbols().all()).collect();
    let partial: Vec<u64> = firsts
        .par_iter()
        .map(|&s| {
            let mut it = PatternIter::new(sft, block, 1u64 << s).expect("layout checked");
            let mut n = 0u64;
            while it.advance() {
                n += 1;
            }
            n
        })
        .collect();
    Ok(partial.into_iter().map(BigUint::from).sum())
}

/// Exact number of locally valid patterns on `block`.
pub fn count_patterns(sft: &SftDefinition, block: &Block) -> Result<BigUint> {
    count_patterns_with_cap(sft, block, DEFAULT_FRONTIER_CAP)
}

pub fn count_patterns_with_cap(
    sft: &SftDefinition,
    block: &Block,
    frontier_cap: usize,
) -> Result<BigUint> {
    check_dim(sft, block)?;
    block.volume_within(DEFAULT_VOLUME_CAP)?;
    // Traverse with the longest axis slowest so the frontier is a thin slab.
    let d = sft.dim();
    let extents = block.extents();
    let slow = (0..d).max_by_key(|&k| (extents[k], k)).unwrap_or(0);
    let mut order: Vec<usize> = (0..d).filter(|&k| k != slow).collect();
    order.push(slow);
    let perm_extents: Vec<usize> = order.iter().map(|&k| extents[k]).collect();
    let rules: Vec<AxisRule> = order.iter().map(|&k| sft.rule(k).clone()).collect();
    let layout = Layout::new(&Block::from_extents(&perm_extents)?)?;
    let frontier = layout.len / perm_extents[d - 1];
    let all = sft.symbols().all();

    let mut states: HashMap<Vec<Symbol>, BigUint> = HashMap::new();
    states.insert(Vec::new(), BigUint::one());
    for i in 0..layout.len {
        let mut next: HashMap<Vec<Symbol>, BigUint> = HashMap::with_capacity(states.len());
        for (hist, count) in states {
            let base = i - hist.len();
            let mask = layout
                .back(i)
                .fold(all, |m, (k, j)| m & rules[k].successors(hist[j - base]));
            for s in members(mask) {
                let mut h = if hist.len() == frontier {
                    hist[1..].to_vec()
                } else {
                    hist.clone()
                };
                h.push(s);
                *next.entry(h).or_insert_with(BigUint::zero) += &count;
            }
        }
        if next.len() > frontier_cap {
            return Err(Error::CapExceeded {
                what: "counting frontier states",
                size: next.len() as u128,
                cap: frontier_cap as u128,
            });
        }
        states = next;
    }
    Ok(states.into_values().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::is_locally_valid;
    use crate::wire::build_wire_shift;

    #[test]
    fn full_shift_counts_are_powers() {
        let x = SftDefinition::full_shift(2, 3).unwrap();
        let b = Block::from_extents(&[2, 3]).unwrap();
        assert_eq!(count_patterns(&x, &b).unwrap(), BigUint::from(3u32.pow(6)));
        assert_eq!(count_patterns_backtracking(&x, &b).unwrap(), BigUint::from(729u32));
    }

    #[test]
    fn wire_small_counts() {
        let w = build_wire_shift(1).unwrap();
        let x = w.sft();
        let one = Block::from_extents(&[1, 1]).unwrap();
        assert_eq!(count_patterns(x, &one).unwrap(), BigUint::from(7u32));
        let horiz = Block::from_extents(&[2, 1]).unwrap();
        assert_eq!(count_patterns(x, &horiz).unwrap(), BigUint::from(25u32));
        let w2 = build_wire_shift(2).unwrap();
        assert_eq!(count_patterns(w2.sft(), &horiz).unwrap(), BigUint::from(32u32));
    }

    #[test]
    fn stream_is_sorted_valid_and_complete() {
        let w = build_wire_shift(1).unwrap();
        let b = Block::from_extents(&[2, 2]).unwrap();
        let pats = all_patterns(w.sft(), &b).unwrap();
        assert!(pats.windows(2).all(|p| p[0].cells() < p[1].cells()));
        assert!(pats.iter().all(|p| is_locally_valid(w.sft(), p).unwrap()));
        // generate-and-filter oracle
        let mut brute = 0;
        for code in 0..7usize.pow(4) {
            let cells: Vec<Symbol> = (0..4).map(|i| (code / 7usize.pow(i) % 7) as Symbol).collect();
            let p = Pattern::new(b.clone(), cells).unwrap();
            if is_locally_valid(w.sft(), &p).unwrap() {
                brute += 1;
            }
        }
        assert_eq!(pats.len(), brute);
        assert_eq!(count_patterns(w.sft(), &b).unwrap(), BigUint::from(brute as u64));
    }

    #[test]
    fn frontier_cap_is_enforced() {
        let x = SftDefinition::full_shift(2, 4).unwrap();
        let b = Block::from_extents(&[12, 12]).unwrap();
        assert!(matches!(
            count_patterns_with_cap(&x, &b, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }
}
