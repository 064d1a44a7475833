//! Fixed points and coordinatewise periodic points, counted on the torus.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Block;
use crate::sft::{SftDefinition, Symbol, SymbolSet};

/// Largest fundamental domain accepted by [`count_periodic_points`].
pub const PERIODIC_VOLUME_CAP: usize = 64;
/// Search nodes allowed before the count gives up.
pub const PERIODIC_NODE_CAP: u64 = 1 << 31;

/// Periods `(p_1, ..., p_d)`: invariance under the shift by `p_k e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSpec {
    periods: Vec<usize>,
}

impl PeriodSpec {
    pub fn new(periods: Vec<usize>) -> Result<Self> {
        if periods.is_empty() || periods.contains(&0) {
            return Err(Error::InvalidArgument("periods must be positive".into()));
        }
        Ok(PeriodSpec { periods })
    }

    /// Period 1 in every direction.
    pub fn fixed(d: usize) -> Self {
        PeriodSpec { periods: vec![1; d] }
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    pub fn volume(&self) -> usize {
        self.periods.iter().product()
    }

    /// `p` divides `q` in every coordinate.
    pub fn divides(&self, q: &PeriodSpec) -> bool {
        self.periods.len() == q.periods.len() && self.periods.iter().zip(&q.periods).all(|(a, b)| b % a == 0)
    }
}

/// Symbols whose constant configuration lies in the shift.
pub fn fixed_points(x: &SftDefinition) -> Vec<Symbol> {
    x.fixed_symbols()
}

struct Torus<'a> {
    x: &'a SftDefinition,
    periods: &'a [usize],
    strides: Vec<usize>,
    cells: Vec<Symbol>,
    nodes: u64,
}

impl Torus<'_> {
    /// Symbols allowed at cell `i` given every constraint to cells `< i`,
    /// including wrap-around edges and self-loops of period-1 axes.
    fn candidates(&self, i: usize) -> SymbolSet {
        let mut set = self.x.symbols().all();
        for (k, (&p, &st)) in self.periods.iter().zip(&self.strides).enumerate() {
            let rule = self.x.rule(k);
            let pos = (i / st) % p;
            if p == 1 {
                continue;
            }
            if pos > 0 {
                set &= rule.successors(self.cells[i - st]);
            }
            if pos == p - 1 {
                set &= rule.predecessors(self.cells[i - (p - 1) * st]);
            }
        }
        set
    }

    fn count(&mut self, i: usize, self_loops: SymbolSet) -> Result<u128> {
        self.nodes += 1;
        if self.nodes > PERIODIC_NODE_CAP {
            return Err(Error::CapExceeded {
                what: "periodic point search nodes",
                size: self.nodes as u128,
                cap: PERIODIC_NODE_CAP as u128,
            });
        }
        let set = self.candidates(i) & self_loops;
        if i + 1 == self.cells.len() {
            return Ok(set.count_ones() as u128);
        }
        let mut total = 0;
        let mut rest = set;
        while rest != 0 {
            let s = rest.trailing_zeros() as Symbol;
            rest &= rest - 1;
            self.cells[i] = s;
            total += self.count(i + 1, self_loops)?;
        }
        Ok(total)
    }
}

/// Number of points of `x` invariant under `σ_{p_k e_k}` for every `k`.
///
/// These are exactly the assignments on the fundamental domain that are
/// locally valid with wrap-around adjacency along every axis.
pub fn count_periodic_points(x: &SftDefinition, p: &PeriodSpec) -> Result<BigUint> {
    let d = x.dim();
    if p.periods.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.periods.len(),
        });
    }
    let vol = p.volume();
    if vol > PERIODIC_VOLUME_CAP {
        return Err(Error::CapExceeded {
            what: "fundamental domain volume",
            size: vol as u128,
            cap: PERIODIC_VOLUME_CAP as u128,
        });
    }
    let self_loops = (0..d)
        .filter(|&k| p.periods[k] == 1)
        .fold(x.symbols().all(), |m, k| {
            m & x.fixed_symbols_on(k)
        });
    let strides = Block::from_extents(&p.periods)?.strides();
    let mut torus = Torus {
        x,
        periods: &p.periods,
        strides,
        cells: vec![0; vol],
        nodes: 0,
    };
    Ok(BigUint::from(torus.count(0, self_loops)?))
}
