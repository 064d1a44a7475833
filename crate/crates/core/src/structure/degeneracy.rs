//! Degeneracy along a sublattice: search for a configuration whose layers
//! (translates of `L`) each look admissible for `X_L` while the whole is
//! locally invalid for `X`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord, Sublattice};
use crate::report::PatternDump;
use crate::sft::{is_locally_valid, Pattern, SearchBudget, SftDefinition, Symbol};

use super::projection::{project_language, ProjectedLanguage};

/// Cap on layer-pattern combinations visited.
pub const DEGENERACY_COMBINATION_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegeneracyVerdict {
    /// Every combination of admissible layers was locally valid.
    DegenerateOnWindow,
    /// A witness shows `X` is strictly smaller than the product of its layers.
    ProperSubsystem,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracyReport {
    pub shift: String,
    pub generators: Vec<Coord>,
    pub complement: Vec<Coord>,
    pub window: Block,
    /// Margin used to approximate the layer languages.
    pub layer_margin: u64,
    pub layers: usize,
    pub verdict: DegeneracyVerdict,
    pub witness: Option<PatternDump>,
    pub combinations_checked: u64,
}

/// Points of the window grouped by their coset of `L`, each listed in
/// sublattice order, cosets ordered by complement coefficients.
fn layers(l: &Sublattice, window: &Block) -> Vec<Vec<Coord>> {
    let mut groups: BTreeMap<Vec<i64>, Vec<Coord>> = BTreeMap::new();
    for c in window.iter() {
        let (_, v) = l.decompose(&c);
        groups.entry(v).or_default().push(c);
    }
    groups
        .into_values()
        .map(|mut pts| {
            pts.sort_by_key(|p| l.decompose(p).0);
            pts
        })
        .collect()
}

/// Admissible words on each layer, from the projected language of the layer
/// moved back into `L`.
fn layer_languages(
    x: &SftDefinition,
    l: &Sublattice,
    groups: &[Vec<Coord>],
    margin: u64,
    budget: SearchBudget,
) -> Result<Vec<ProjectedLanguage>> {
    let mut cache: BTreeMap<Vec<Coord>, ProjectedLanguage> = BTreeMap::new();
    groups
        .iter()
        .map(|pts| {
            let (_, v) = l.decompose(&pts[0]);
            let base = l.combine_complement(&v);
            let shape: Vec<Coord> = pts.iter().map(|p| p.sub(&base)).collect();
            if let Some(lang) = cache.get(&shape) {
                return Ok(lang.clone());
            }
            let lang = project_language(x, l, &shape, margin, budget)?;
            cache.insert(shape, lang.clone());
            Ok(lang)
        })
        .collect()
}

struct Assembler<'a> {
    x: &'a SftDefinition,
    window: &'a Block,
    groups: &'a [Vec<Coord>],
    langs: &'a [ProjectedLanguage],
    cells: Vec<Option<Symbol>>,
    checked: u64,
}

impl Assembler<'_> {
    /// Whether the cells just placed for layer `g` clash with placed neighbours.
    fn clashes(&self, g: usize) -> bool {
        let d = self.window.dim();
        self.groups[g].iter().any(|c| {
            let s = self.cells[self.window.index_of(c).unwrap()].unwrap();
            (0..d).any(|k| {
                let e = Coord::unit(d, k);
                let fwd = self.window.index_of(&c.add(&e)).and_then(|j| self.cells[j]);
                let back = self.window.index_of(&c.sub(&e)).and_then(|j| self.cells[j]);
                fwd.is_some_and(|t| !self.x.allows(k, s, t)) || back.is_some_and(|t| !self.x.allows(k, t, s))
            })
        })
    }

    fn place(&mut self, g: usize, word: &[Symbol]) {
        for (c, &s) in self.groups[g].iter().zip(word) {
            let i = self.window.index_of(c).unwrap();
            self.cells[i] = Some(s);
        }
    }

    fn clear(&mut self, g: usize) {
        for c in &self.groups[g] {
            let i = self.window.index_of(c).unwrap();
            self.cells[i] = None;
        }
    }

    /// Lexicographically first combination that is locally invalid.
    fn search(&mut self, g: usize) -> Result<bool> {
        if g == self.groups.len() {
            return Ok(false);
        }
        for w in 0..self.langs[g].patterns.len() {
            self.checked += 1;
            if self.checked > DEGENERACY_COMBINATION_CAP {
                return Err(Error::CapExceeded {
                    what: "layer combinations",
                    size: self.checked as u128,
                    cap: DEGENERACY_COMBINATION_CAP as u128,
                });
            }
            let word = self.langs[g].patterns[w].clone();
            self.place(g, &word);
            if self.clashes(g) {
                // complete with the first word of every remaining layer
                for h in g + 1..self.groups.len() {
                    let first = self.langs[h].patterns[0].clone();
                    self.place(h, &first);
                }
                return Ok(true);
            }
            if self.search(g + 1)? {
                return Ok(true);
            }
            self.clear(g);
        }
        Ok(false)
    }
}

/// Search the window for a degeneracy witness, in lexicographic order of
/// layer-pattern combinations (layers ordered by coset, then words).
pub fn degeneracy_witness(
    x: &SftDefinition,
    l: &Sublattice,
    window: &Block,
    layer_margin: u64,
    budget: SearchBudget,
) -> Result<DegeneracyReport> {
    if l.dim() != x.dim() || window.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: l.dim().max(window.dim()),
        });
    }
    let groups = layers(l, window);
    let langs = layer_languages(x, l, &groups, layer_margin, budget)?;
    let mut report = DegeneracyReport {
        shift: x.name().to_string(),
        generators: l.generators().to_vec(),
        complement: l.complement().to_vec(),
        window: window.clone(),
        layer_margin,
        layers: groups.len(),
        verdict: DegeneracyVerdict::DegenerateOnWindow,
        witness: None,
        combinations_checked: 0,
    };
    if langs.iter().any(ProjectedLanguage::is_empty) {
        return Ok(report);
    }
    let mut asm = Assembler {
        x,
        window,
        groups: &groups,
        langs: &langs,
        cells: vec![None; window.len()],
        checked: 0,
    };
    let found = asm.search(0)?;
    report.combinations_checked = asm.checked;
    if found {
        let cells: Vec<Symbol> = asm.cells.iter().map(|c| c.expect("all layers placed")).collect();
        let witness = Pattern::new(window.clone(), cells)?;
        if !verify_degeneracy_witness(x, l, &witness, layer_margin, budget)? {
            return Err(Error::InvalidArgument("degeneracy witness failed verification".into()));
        }
        report.verdict = DegeneracyVerdict::ProperSubsystem;
        report.witness = Some(PatternDump::new(&witness, x.symbols()));
    }
    Ok(report)
}

/// Check a candidate witness: every layer of `p` lies in the projected
/// language of its shape, and `p` is locally invalid for `x`.
pub fn verify_degeneracy_witness(
    x: &SftDefinition,
    l: &Sublattice,
    p: &Pattern,
    layer_margin: u64,
    budget: SearchBudget,
) -> Result<bool> {
    if is_locally_valid(x, p)? {
        return Ok(false);
    }
    let groups = layers(l, p.block());
    let langs = layer_languages(x, l, &groups, layer_margin, budget)?;
    Ok(groups.iter().zip(&langs).all(|(pts, lang)| {
        let word: Vec<Symbol> = pts.iter().map(|c| p.get(c).unwrap()).collect();
        lang.contains(&word)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wire::{build_electrical_shift, build_wire_shift};

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn electrical_stacked_wires() {
        let el = build_electrical_shift();
        let l = Sublattice::coordinate(3, &[0, 1]).unwrap();
        let window = Block::from_extents(&[1, 1, 2]).unwrap();
        let r = degeneracy_witness(el.sft(), &l, &window, 2, budget()).unwrap();
        assert_eq!(r.verdict, DegeneracyVerdict::ProperSubsystem);
        assert_eq!(r.witness.unwrap().cells, ["2", "2"]);
    }

    #[test]
    fn two_blank_shift_along_rows() {
        let w = build_wire_shift(2).unwrap();
        let l = Sublattice::coordinate(2, &[0]).unwrap();
        let window = Block::from_extents(&[1, 2]).unwrap();
        let r = degeneracy_witness(w.sft(), &l, &window, 2, budget()).unwrap();
        assert_eq!(r.verdict, DegeneracyVerdict::ProperSubsystem);
        assert_eq!(r.witness.unwrap().cells, ["1_1", "4"]);
        let seven_under_two = Pattern::new(window.clone(), vec![w.wire(7), w.wire(2)]).unwrap();
        assert!(verify_degeneracy_witness(w.sft(), &l, &seven_under_two, 2, budget()).unwrap());
        let valid = Pattern::new(window, vec![w.wire(2), w.blank()]).unwrap();
        assert!(!verify_degeneracy_witness(w.sft(), &l, &valid, 2, budget()).unwrap());
    }

    #[test]
    fn full_shift_is_degenerate() {
        let x = SftDefinition::full_shift(2, 3).unwrap();
        let l = Sublattice::coordinate(2, &[0]).unwrap();
        let r = degeneracy_witness(&x, &l, &Block::from_extents(&[2, 2]).unwrap(), 1, budget()).unwrap();
        assert_eq!(r.verdict, DegeneracyVerdict::DegenerateOnWindow);
        assert_eq!(r.combinations_checked, 9 + 81);
        let diag = Sublattice::from_generators(vec![Coord::from([1, 1])]).unwrap();
        let r = degeneracy_witness(&x, &diag, &Block::from_extents(&[2, 2]).unwrap(), 1, budget()).unwrap();
        assert_eq!(r.verdict, DegeneracyVerdict::DegenerateOnWindow);
        assert_eq!(r.layers, 3);
    }
}
