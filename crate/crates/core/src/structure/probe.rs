//! Experiment: which cells of a planar square are forced blank once a
//! diagonal of blanks is imposed. Reports findings only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};
use crate::sft::{CompletionProblem, SearchBudget, SearchOutcome};
use crate::wire::WireShift;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalProbe {
    pub shift: String,
    /// Diagonal `{ n (u + v) : 0 <= n <= N }` held blank.
    pub u: Coord,
    pub v: Coord,
    pub size: u64,
    pub margin: u64,
    /// `(m, n)` such that `m u + n v` cannot hold a wire symbol.
    pub forced_blank: Vec<(u64, u64)>,
    /// `(m, n)` whose search ran out of budget.
    pub undecided: Vec<(u64, u64)>,
    /// Whether a wire symbol fits at `N u` alongside the blank diagonal.
    pub wire_at_corner: Option<bool>,
}

/// Impose blanks on `n (u + v)` for `0 <= n <= size`, then ask, cell by cell
/// of the square `{m u + n v}`, whether a wire symbol can still sit there in
/// a locally valid pattern on the bounding box inflated by `margin`.
pub fn diagonal_blank_probe(
    w: &WireShift,
    u: &Coord,
    v: &Coord,
    size: u64,
    margin: u64,
    budget: SearchBudget,
) -> Result<DiagonalProbe> {
    let d = w.sft().dim();
    if u.dim() != d || v.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: u.dim().min(v.dim()),
        });
    }
    let point = |m: u64, n: u64| u.scale(m as i64).add(&v.scale(n as i64));
    let square: Vec<(u64, u64)> = (0..=size).flat_map(|m| (0..=size).map(move |n| (m, n))).collect();
    let pts: Vec<Coord> = square.iter().map(|&(m, n)| point(m, n)).collect();
    let lo: Vec<i64> = (0..d).map(|k| pts.iter().map(|p| p[k]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|k| pts.iter().map(|p| p[k]).max().unwrap()).collect();
    let window = Block::new(Coord::new(lo), Coord::new(hi))?.inflate(margin);
    let blanks = w.blanks().fold(0u64, |m, b| m | 1 << b);
    let wires = w.sft().symbols().all() & !blanks;
    let mut base = CompletionProblem::new(w.sft(), &window)?;
    for n in 0..=size {
        base.restrict(&point(n, n), blanks)?;
    }
    let mut forced_blank = Vec::new();
    let mut undecided = Vec::new();
    let mut wire_at_corner = None;
    for (&(m, n), c) in square.iter().zip(&pts) {
        let mut prob = base.clone();
        prob.restrict(c, wires)?;
        let outcome = prob.solve(budget);
        match outcome {
            SearchOutcome::Infeasible => forced_blank.push((m, n)),
            SearchOutcome::Exhausted => undecided.push((m, n)),
            SearchOutcome::Found(_) => {}
        }
        if (m, n) == (size, 0) {
            wire_at_corner = match outcome {
                SearchOutcome::Found(_) => Some(true),
                SearchOutcome::Infeasible => Some(false),
                SearchOutcome::Exhausted => None,
            };
        }
    }
    Ok(DiagonalProbe {
        shift: w.sft().name().to_string(),
        u: u.clone(),
        v: v.clone(),
        size,
        margin,
        forced_blank,
        undecided,
        wire_at_corner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wire::build_electrical_shift;

    #[test]
    fn probe_runs_and_keeps_the_diagonal_blank() {
        let el = build_electrical_shift();
        let r = diagonal_blank_probe(
            &el,
            &Coord::from([1, 0, 0]),
            &Coord::from([0, 1, 0]),
            3,
            2,
            SearchBudget::default(),
        )
        .unwrap();
        for n in 0..=3 {
            assert!(r.forced_blank.contains(&(n, n)));
        }
    }
}
