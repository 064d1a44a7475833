//! Finite-window approximations of the projection `X_L` of a shift onto a
//! sublattice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord, Sublattice};
use crate::sft::{CompletionProblem, SearchBudget, SearchOutcome, SftDefinition, Symbol};

/// Cap on assignments examined on a shape.
pub const PROJECTION_CAP: u64 = 1 << 22;

/// Assignments on `shape` that extend to a locally valid pattern on `window`.
///
/// This contains the true language of `X_L` on the shape and can only shrink
/// as the margin grows. Assignments whose search ran out of budget are kept
/// and counted in `undecided`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectedLanguage {
    pub shape: Vec<Coord>,
    pub window: Block,
    pub margin: u64,
    /// Symbol vectors in the order of `shape`, sorted lexicographically.
    pub patterns: Vec<Vec<Symbol>>,
    pub undecided: usize,
}

impl ProjectedLanguage {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, word: &[Symbol]) -> bool {
        self.patterns.binary_search_by(|p| p.as_slice().cmp(word)).is_ok()
    }
}

/// Smallest block containing all points.
pub fn bounding_block(points: &[Coord]) -> Result<Block> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty shape".into()))?;
    let d = first.dim();
    let lo: Vec<i64> = (0..d).map(|k| points.iter().map(|p| p[k]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|k| points.iter().map(|p| p[k]).max().unwrap()).collect();
    Block::new(Coord::new(lo), Coord::new(hi))
}

struct Extender<'a> {
    x: &'a SftDefinition,
    shape: &'a [Coord],
    window: Block,
    budget: SearchBudget,
    word: Vec<Symbol>,
    out: Vec<Vec<Symbol>>,
    undecided: usize,
}

impl Extender<'_> {
    fn outcome(&self, len: usize) -> Result<SearchOutcome> {
        let mut prob = CompletionProblem::new(self.x, &self.window)?;
        for (c, &s) in self.shape.iter().zip(&self.word[..len]) {
            prob.fix(c, s)?;
        }
        Ok(prob.solve(self.budget))
    }

    /// Depth-first over the shape, dropping prefixes that already fail.
    fn walk(&mut self, i: usize) -> Result<()> {
        for s in 0..self.x.alphabet_size() as Symbol {
            self.word[i] = s;
            let outcome = self.outcome(i + 1)?;
            if outcome == SearchOutcome::Infeasible {
                continue;
            }
            if i + 1 == self.shape.len() {
                if outcome == SearchOutcome::Exhausted {
                    self.undecided += 1;
                }
                self.out.push(self.word.clone());
            } else {
                self.walk(i + 1)?;
            }
        }
        Ok(())
    }
}

/// Language of `X_L` on `shape` (points of `L`), approximated by extension
/// to the bounding box of the shape inflated by `margin`.
pub fn project_language(
    x: &SftDefinition,
    l: &Sublattice,
    shape: &[Coord],
    margin: u64,
    budget: SearchBudget,
) -> Result<ProjectedLanguage> {
    if l.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: l.dim(),
        });
    }
    if let Some(p) = shape.iter().find(|p| !l.contains(p)) {
        return Err(Error::InvalidArgument(format!("{p} is not in the sublattice")));
    }
    let size = (x.alphabet_size() as f64).powi(shape.len() as i32);
    if size > PROJECTION_CAP as f64 {
        return Err(Error::CapExceeded {
            what: "shape assignments",
            size: size as u128,
            cap: PROJECTION_CAP as u128,
        });
    }
    let window = bounding_block(shape)?.inflate(margin);
    let mut ext = Extender {
        x,
        shape,
        window: window.clone(),
        budget,
        word: vec![0; shape.len()],
        out: Vec::new(),
        undecided: 0,
    };
    ext.walk(0)?;
    Ok(ProjectedLanguage {
        shape: shape.to_vec(),
        window,
        margin,
        patterns: ext.out,
        undecided: ext.undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::{all_patterns, Pattern};
    use crate::wire::{build_electrical_shift, build_wire_shift};

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn diagonal_of_two_blank_shift_is_free() {
        let w = build_wire_shift(2).unwrap();
        let l = Sublattice::from_generators(vec![Coord::from([1, 1])]).unwrap();
        let shape = [Coord::from([0, 0]), Coord::from([1, 1]), Coord::from([2, 2])];
        let lang = project_language(w.sft(), &l, &shape, 2, budget()).unwrap();
        assert_eq!(lang.len(), 512);
        assert_eq!(lang.undecided, 0);
    }

    #[test]
    fn horizontal_wire_cannot_end_in_a_blank() {
        let w = build_wire_shift(2).unwrap();
        let l = Sublattice::coordinate(2, &[0]).unwrap();
        let shape = [Coord::from([0, 0]), Coord::from([1, 0])];
        let lang = project_language(w.sft(), &l, &shape, 2, budget()).unwrap();
        assert!(!lang.contains(&[w.wire(2), w.blank()]));
        assert!(lang.contains(&[w.wire(2), w.wire(2)]));
    }

    #[test]
    fn electrical_layer_language_is_the_planar_one() {
        let el = build_electrical_shift();
        let w2 = build_wire_shift(2).unwrap();
        let l = Sublattice::coordinate(3, &[0, 1]).unwrap();
        let block2 = Block::from_extents(&[2, 2]).unwrap();
        let shape: Vec<Coord> = block2.iter().map(|c| Coord::from([c[0], c[1], 0])).collect();
        let lang = project_language(el.sft(), &l, &shape, 1, budget()).unwrap();
        let mut planar: Vec<Vec<Symbol>> = all_patterns(w2.sft(), &block2)
            .unwrap()
            .into_iter()
            .map(Pattern::into_cells)
            .filter(|cells| {
                // the planar language itself must extend by one cell as well
                let shape2: Vec<Coord> = block2.iter().collect();
                let mut prob = CompletionProblem::new(w2.sft(), &block2.inflate(1)).unwrap();
                for (c, &s) in shape2.iter().zip(cells) {
                    prob.fix(c, s).unwrap();
                }
                prob.solve(budget()).is_found()
            })
            .collect();
        planar.sort();
        assert_eq!(lang.patterns, planar);
    }

    #[test]
    fn shrinks_with_margin() {
        let w = build_wire_shift(1).unwrap();
        let l = Sublattice::coordinate(2, &[0]).unwrap();
        let shape = [Coord::from([0, 0]), Coord::from([1, 0]), Coord::from([2, 0])];
        let sizes: Vec<usize> = (0..=3)
            .map(|m| project_language(w.sft(), &l, &shape, m, budget()).unwrap().len())
            .collect();
        assert!(sizes.windows(2).all(|s| s[0] >= s[1]), "{sizes:?}");
    }

    #[test]
    fn rejects_points_off_the_sublattice() {
        let w = build_wire_shift(1).unwrap();
        let l = Sublattice::coordinate(2, &[0]).unwrap();
        assert!(project_language(w.sft(), &l, &[Coord::from([0, 1])], 1, budget()).is_err());
    }
}
