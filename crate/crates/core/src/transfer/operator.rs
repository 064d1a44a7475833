use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::Block;
use crate::sft::{for_each_pattern, SftDefinition, Symbol, SymbolSet};

pub const DEFAULT_STATE_CAP: usize = 1 << 24;

/// Compressed adjacency lists.
#[derive(Clone, Debug, Default)]
struct Csr {
    offsets: Vec<usize>,
    items: Vec<u32>,
}

impl Csr {
    fn from_lists(lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut items = Vec::new();
        for l in lists {
            items.extend(l);
            offsets.push(items.len());
        }
        Csr { offsets, items }
    }

    #[inline]
    fn row(&self, i: usize) -> &[u32] {
        &self.items[self.offsets[i]..self.offsets[i + 1]]
    }

    fn rows(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// 0/1 transfer operator between locally valid cross-sections of a strip.
///
/// State `c` may be followed by `c'` (one step along `axis`) iff every cell
/// pair `(c_i, c'_i)` is allowed on that axis. Symbols with equal successor
/// sets are lumped into classes, so `T[c][c']` depends only on the class
/// vector ("key") of `c`. Applying `T` gathers, for every realized key, the
/// sum over the states that key admits, and then reads it back per state.
#[derive(Clone, Debug)]
pub struct TransferOperator {
    axis: usize,
    cross_extents: Vec<usize>,
    cells: usize,
    states: Vec<Symbol>,
    out_key: Vec<u32>,
    key_members: Csr,
    state_in_keys: Csr,
    key_sources: Csr,
}

/// Distinct successor sets along one axis, and each symbol's class.
fn successor_classes(x: &SftDefinition, axis: usize) -> (Vec<SymbolSet>, Vec<u32>) {
    let rule = x.rule(axis);
    let mut sets: Vec<SymbolSet> = Vec::new();
    let class = (0..x.alphabet_size() as Symbol)
        .map(|a| {
            let s = rule.successors(a);
            match sets.iter().position(|&t| t == s) {
                Some(i) => i as u32,
                None => {
                    sets.push(s);
                    (sets.len() - 1) as u32
                }
            }
        })
        .collect();
    (sets, class)
}

impl TransferOperator {
    /// Strip along `axis` whose cross-section has the given extents on the
    /// remaining axes, listed in increasing axis order.
    pub fn new(x: &SftDefinition, axis: usize, cross_extents: &[usize]) -> Result<Self> {
        Self::with_cap(x, axis, cross_extents, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(x: &SftDefinition, axis: usize, cross_extents: &[usize], cap: usize) -> Result<Self> {
        let d = x.dim();
        if axis >= d {
            return Err(Error::InvalidArgument(format!("axis {axis} out of range for dimension {d}")));
        }
        if cross_extents.len() != d - 1 {
            return Err(Error::DimensionMismatch {
                expected: d - 1,
                found: cross_extents.len(),
            });
        }
        let others: Vec<usize> = (0..d).filter(|&k| k != axis).collect();
        let mut states = Vec::new();
        let cells;
        if d == 1 {
            cells = 1;
            states.extend(0..x.alphabet_size() as Symbol);
        } else {
            let cross = x.restrict_axes(&others)?;
            let block = Block::from_extents(cross_extents)?;
            cells = block.volume_within(u32::MAX as u64)?;
            let mut count = 0usize;
            let mut over = false;
            for_each_pattern(&cross, &block, |p| {
                count += 1;
                if count <= cap {
                    states.extend_from_slice(p);
                } else {
                    over = true;
                }
            })?;
            if over {
                return Err(Error::CapExceeded {
                    what: "transfer operator states",
                    size: count as u128,
                    cap: cap as u128,
                });
            }
        }
        let n_states = states.len() / cells;
        if n_states > u32::MAX as usize {
            return Err(Error::CapExceeded {
                what: "transfer operator states",
                size: n_states as u128,
                cap: u32::MAX as u128,
            });
        }

        let (sets, class) = successor_classes(x, axis);
        let radix = sets.len() as u128;
        if radix.checked_pow(cells as u32).is_none_or(|v| v > u64::MAX as u128) {
            return Err(Error::CapExceeded {
                what: "lumped key space",
                size: u128::MAX,
                cap: u64::MAX as u128,
            });
        }
        let code = |classes: &mut dyn Iterator<Item = u32>| -> u64 {
            classes.fold(0u64, |acc, c| acc * radix as u64 + c as u64)
        };

        // Realized out-keys, numbered in order of first appearance.
        let mut key_index: HashMap<u64, u32> = HashMap::new();
        let mut out_key = Vec::with_capacity(n_states);
        for c in states.chunks(cells) {
            let k = code(&mut c.iter().map(|&s| class[s as usize]));
            let next = key_index.len() as u32;
            out_key.push(*key_index.entry(k).or_insert(next));
        }
        let n_keys = key_index.len();

        // Classes whose successor set contains each symbol.
        let containing: Vec<Vec<u32>> = (0..x.alphabet_size())
            .map(|s| {
                (0..sets.len() as u32)
                    .filter(|&k| sets[k as usize] >> s & 1 == 1)
                    .collect()
            })
            .collect();

        let state_in_keys: Vec<Vec<u32>> = states
            .par_chunks(cells)
            .map(|c| {
                let mut partial: Vec<u64> = vec![0];
                for &s in c {
                    let opts = &containing[s as usize];
                    let mut next = Vec::with_capacity(partial.len() * opts.len());
                    for &p in &partial {
                        for &o in opts {
                            next.push(p * radix as u64 + o as u64);
                        }
                    }
                    partial = next;
                }
                let mut keys: Vec<u32> = partial.iter().filter_map(|k| key_index.get(k).copied()).collect();
                keys.sort_unstable();
                keys
            })
            .collect();

        let mut key_members: Vec<Vec<u32>> = vec![Vec::new(); n_keys];
        for (c, keys) in state_in_keys.iter().enumerate() {
            for &k in keys {
                key_members[k as usize].push(c as u32);
            }
        }
        let mut key_sources: Vec<Vec<u32>> = vec![Vec::new(); n_keys];
        for (c, &k) in out_key.iter().enumerate() {
            key_sources[k as usize].push(c as u32);
        }

        Ok(TransferOperator {
            axis,
            cross_extents: cross_extents.to_vec(),
            cells,
            states,
            out_key,
            key_members: Csr::from_lists(key_members),
            state_in_keys: Csr::from_lists(state_in_keys),
            key_sources: Csr::from_lists(key_sources),
        })
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn cross_extents(&self) -> &[usize] {
        &self.cross_extents
    }

    /// Cells per cross-section.
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn state_count(&self) -> usize {
        self.out_key.len()
    }

    pub fn key_count(&self) -> usize {
        self.key_members.rows()
    }

    /// Cell vector of state `i`, in cross-section block order.
    pub fn state(&self, i: usize) -> &[Symbol] {
        &self.states[i * self.cells..(i + 1) * self.cells]
    }

    /// Number of nonzero entries.
    pub fn transition_count(&self) -> u64 {
        self.out_key
            .iter()
            .map(|&k| self.key_members.row(k as usize).len() as u64)
            .sum()
    }

    /// Successors of state `c`.
    pub fn successors(&self, c: usize) -> &[u32] {
        self.key_members.row(self.out_key[c] as usize)
    }

    /// `w = T v`.
    pub fn apply(&self, v: &[f64], w: &mut [f64]) {
        let gathered: Vec<f64> = (0..self.key_count())
            .into_par_iter()
            .map(|k| self.key_members.row(k).iter().map(|&c| v[c as usize]).sum())
            .collect();
        w.par_iter_mut()
            .zip(self.out_key.par_iter())
            .for_each(|(wi, &k)| *wi = gathered[k as usize]);
    }

    /// `w = T^t v`.
    pub fn apply_transpose(&self, v: &[f64], w: &mut [f64]) {
        let gathered: Vec<f64> = (0..self.key_count())
            .into_par_iter()
            .map(|k| self.key_sources.row(k).iter().map(|&c| v[c as usize]).sum())
            .collect();
        w.par_iter_mut().enumerate().for_each(|(c, wi)| {
            *wi = self.state_in_keys.row(c).iter().map(|&k| gathered[k as usize]).sum();
        });
    }

    /// Exact number of state sequences of length `m`, which is the number of
    /// locally valid patterns on the prism `cross_section x m`.
    pub fn path_count(&self, m: usize) -> BigUint {
        if m == 0 {
            return BigUint::one();
        }
        let mut v: Vec<BigUint> = vec![BigUint::one(); self.state_count()];
        for _ in 1..m {
            let gathered: Vec<BigUint> = (0..self.key_count())
                .into_par_iter()
                .map(|k| {
                    self.key_members
                        .row(k)
                        .iter()
                        .fold(BigUint::zero(), |acc, &c| acc + &v[c as usize])
                })
                .collect();
            v = self.out_key.iter().map(|&k| gathered[k as usize].clone()).collect();
        }
        v.into_iter().sum()
    }

    /// Dense 0/1 matrix, row `c` column `c'`; only for small operators.
    pub fn to_dense(&self) -> Result<Vec<Vec<u8>>> {
        let n = self.state_count();
        if n > 1 << 12 {
            return Err(Error::CapExceeded {
                what: "dense transfer matrix states",
                size: n as u128,
                cap: 1 << 12,
            });
        }
        let mut m = vec![vec![0u8; n]; n];
        for (c, row) in m.iter_mut().enumerate() {
            for &t in self.successors(c) {
                row[t as usize] = 1;
            }
        }
        Ok(m)
    }

    /// Strongly connected components that carry a cycle, each as a sorted
    /// list of states, ordered by smallest state.
    pub fn recurrent_components(&self) -> Vec<Vec<u32>> {
        let n = self.state_count();
        let nk = self.key_count();
        // Bipartite graph: state c -> key out_key[c] -> members of that key.
        let total = n + nk;
        let succ = |v: usize| -> &[u32] {
            if v < n {
                std::slice::from_ref(&self.out_key[v])
            } else {
                self.key_members.row(v - n)
            }
        };
        let target = |v: usize, e: u32| -> usize {
            if v < n {
                n + e as usize
            } else {
                e as usize
            }
        };

        const UNSEEN: u32 = u32::MAX;
        let mut index = vec![UNSEEN; total];
        let mut low = vec![0u32; total];
        let mut on_stack = vec![false; total];
        let mut stack: Vec<usize> = Vec::new();
        let mut counter = 0u32;
        let mut comps = Vec::new();
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                let edges = succ(v);
                if *pos < edges.len() {
                    let w = target(v, edges[*pos]);
                    *pos += 1;
                    if index[w] == UNSEEN {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(u, _)) = call.last() {
                        low[u] = low[u].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp_states = Vec::new();
                        let mut size = 0;
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            size += 1;
                            if w < n {
                                comp_states.push(w as u32);
                            }
                            if w == v {
                                break;
                            }
                        }
                        if size >= 2 && !comp_states.is_empty() {
                            comp_states.sort_unstable();
                            comps.push(comp_states);
                        }
                    }
                }
            }
        }
        comps.sort();
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::count_patterns;
    use crate::wire::{build_electrical_shift, build_wire_shift};

    fn dense_oracle(x: &SftDefinition, t: &TransferOperator) -> Vec<Vec<u8>> {
        let n = t.state_count();
        let mut m = vec![vec![0u8; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ok = t
                    .state(a)
                    .iter()
                    .zip(t.state(b))
                    .all(|(&p, &q)| x.allows(t.axis(), p, q));
                m[a][b] = ok as u8;
            }
        }
        m
    }

    #[test]
    fn full_shift_height_three() {
        let x = SftDefinition::full_shift(2, 2).unwrap();
        let t = TransferOperator::new(&x, 0, &[3]).unwrap();
        assert_eq!(t.state_count(), 8);
        assert_eq!(t.transition_count(), 64);
    }

    #[test]
    fn wire_height_one() {
        let w = build_wire_shift(1).unwrap();
        let t = TransferOperator::new(w.sft(), 0, &[1]).unwrap();
        assert_eq!(t.state_count(), 7);
        assert_eq!(t.transition_count(), 25);
        let w2 = build_wire_shift(2).unwrap();
        let t = TransferOperator::new(w2.sft(), 0, &[1]).unwrap();
        assert_eq!(t.state_count(), 8);
        assert_eq!(t.transition_count(), 32);
    }

    #[test]
    fn lumped_matrix_matches_cellwise_rule() {
        let w = build_wire_shift(2).unwrap();
        for axis in 0..2 {
            let t = TransferOperator::new(w.sft(), axis, &[3]).unwrap();
            assert_eq!(t.to_dense().unwrap(), dense_oracle(w.sft(), &t));
        }
        let e = build_electrical_shift();
        let t = TransferOperator::new(e.sft(), 2, &[2, 1]).unwrap();
        assert_eq!(t.to_dense().unwrap(), dense_oracle(e.sft(), &t));
    }

    #[test]
    fn transpose_is_adjoint() {
        let w = build_wire_shift(1).unwrap();
        let t = TransferOperator::new(w.sft(), 1, &[3]).unwrap();
        let n = t.state_count();
        let v: Vec<f64> = (0..n).map(|i| (i % 7) as f64 + 0.5).collect();
        let u: Vec<f64> = (0..n).map(|i| (i % 5) as f64 - 1.0).collect();
        let (mut tv, mut ttu) = (vec![0.0; n], vec![0.0; n]);
        t.apply(&v, &mut tv);
        t.apply_transpose(&u, &mut ttu);
        let a: f64 = u.iter().zip(&tv).map(|(x, y)| x * y).sum();
        let b: f64 = ttu.iter().zip(&v).map(|(x, y)| x * y).sum();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn path_counts_match_prisms() {
        let w = build_wire_shift(1).unwrap();
        let t = TransferOperator::new(w.sft(), 0, &[2]).unwrap();
        for m in 1..=4 {
            let prism = Block::from_extents(&[m, 2]).unwrap();
            assert_eq!(t.path_count(m), count_patterns(w.sft(), &prism).unwrap());
        }
    }

    #[test]
    fn state_cap() {
        let x = SftDefinition::full_shift(2, 2).unwrap();
        assert!(matches!(
            TransferOperator::with_cap(&x, 0, &[5], 16),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn components_of_a_chain() {
        // 0 -> 1 -> 1, 2 isolated: one recurrent component {1}
        let x = SftDefinition::new(
            "chain",
            crate::sft::SymbolTable::numbered(3).unwrap(),
            vec![crate::sft::AxisRule::from_pairs(3, [(0, 1), (1, 1)])],
        )
        .unwrap();
        let t = TransferOperator::new(&x, 0, &[]).unwrap();
        assert_eq!(t.recurrent_components(), vec![vec![1]]);
    }
}
