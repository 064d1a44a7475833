//! Finite-window uniform filling checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Block;
use crate::report::PatternDump;
use crate::sft::{CompletionProblem, Pattern, SearchBudget, SearchOutcome, SftDefinition};

use super::gluing::{CertificateMode, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FillingRecord {
    pub ambient: PatternDump,
    pub inner: PatternDump,
    pub verdict: Verdict,
    pub witness: Option<PatternDump>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FillingCertificate {
    pub shift: String,
    pub filling_length: u64,
    pub mode: CertificateMode,
    pub tested: usize,
    pub filled: usize,
    pub inconclusive: usize,
    pub counterexamples: Vec<FillingRecord>,
    pub evidence: Vec<FillingRecord>,
}

impl FillingCertificate {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.inconclusive == 0
    }
}

/// Replace the content of `ambient` on `inner`'s block by `inner`, changing
/// only cells within distance `l` of that block. Cells of the window outside
/// the `l`-inflation keep their ambient symbols.
pub fn fill(
    x: &SftDefinition,
    ambient: &Pattern,
    inner: &Pattern,
    l: u64,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    let window = ambient.block();
    let grown = inner.block().inflate(l);
    if !window.contains_block(&grown) {
        return Err(Error::NotContained {
            inner: grown.to_string(),
            outer: window.to_string(),
        });
    }
    let mut prob = CompletionProblem::new(x, window)?;
    for (c, &s) in window.iter().zip(ambient.cells()) {
        if !grown.contains(&c) {
            prob.fix(&c, s)?;
        }
    }
    prob.fix_pattern(inner)?;
    Ok(prob.solve(budget))
}

#[derive(Clone, Debug)]
pub struct FillingSearch {
    pub filling_length: u64,
    pub window: Block,
    pub inner: Block,
    pub samples: usize,
    pub seed: u64,
    pub budget: SearchBudget,
}

/// Sample locally valid ambient patterns on the window and inner patterns on
/// the inner block, and try to fill each pair. Samples come from randomized
/// completion search with seeds derived from `seed`.
pub fn check_ufp(x: &SftDefinition, params: &FillingSearch) -> Result<FillingCertificate> {
    let grown = params.inner.inflate(params.filling_length);
    if !params.window.contains_block(&grown) || params.window == grown {
        return Err(Error::InvalidArgument(
            "the window must strictly contain the inflated inner block".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let names = x.symbols();
    let sample = |block: &Block, seed: u64| -> Result<Option<Pattern>> {
        let prob = CompletionProblem::new(x, block)?;
        Ok(prob.solve_random(params.budget, seed).found())
    };
    let mut records = Vec::with_capacity(params.samples);
    for _ in 0..params.samples {
        let (Some(ambient), Some(inner)) = (
            sample(&params.window, rng.gen())?,
            sample(&params.inner, rng.gen())?,
        ) else {
            return Err(Error::BudgetExhausted);
        };
        let outcome = fill(x, &ambient, &inner, params.filling_length, params.budget)?;
        let (verdict, witness) = match outcome {
            SearchOutcome::Found(p) => (Verdict::Glued, Some(PatternDump::new(&p, names))),
            SearchOutcome::Infeasible => (Verdict::Failed, None),
            SearchOutcome::Exhausted => (Verdict::Inconclusive, None),
        };
        records.push(FillingRecord {
            ambient: PatternDump::new(&ambient, names),
            inner: PatternDump::new(&inner, names),
            verdict,
            witness,
        });
    }
    let tested = records.len();
    let filled = records.iter().filter(|r| r.verdict == Verdict::Glued).count();
    let inconclusive = records.iter().filter(|r| r.verdict == Verdict::Inconclusive).count();
    let evidence = records.iter().filter(|r| r.verdict == Verdict::Glued).take(8).cloned().collect();
    let counterexamples = records.into_iter().filter(|r| r.verdict == Verdict::Failed).collect();
    Ok(FillingCertificate {
        shift: x.name().to_string(),
        filling_length: params.filling_length,
        mode: CertificateMode::EmpiricalSample,
        tested,
        filled,
        inconclusive,
        counterexamples,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Coord;
    use crate::sft::is_locally_valid;
    use crate::wire::build_wire_shift;

    #[test]
    fn full_shift_fills_by_overwriting() {
        let x = SftDefinition::full_shift(2, 2).unwrap();
        let params = FillingSearch {
            filling_length: 0,
            window: Block::from_extents(&[5, 5]).unwrap(),
            inner: Block::with_origin(Coord::from([1, 1]), &[2, 2]).unwrap(),
            samples: 20,
            seed: 3,
            budget: SearchBudget::default(),
        };
        let cert = check_ufp(&x, &params).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.filled, 20);
    }

    #[test]
    fn wire_cannot_be_cut_without_room() {
        let w = build_wire_shift(1).unwrap();
        let row = Block::from_extents(&[5, 1]).unwrap();
        let ambient = Pattern::filled(row, w.wire(2));
        let inner = Pattern::single(Coord::from([2, 0]), w.blank());
        assert_eq!(
            fill(w.sft(), &ambient, &inner, 0, SearchBudget::default()).unwrap(),
            SearchOutcome::Infeasible
        );
    }

    #[test]
    fn witnesses_are_sound() {
        let w = build_wire_shift(2).unwrap();
        let window = Block::from_extents(&[7, 7]).unwrap();
        let inner = Block::singleton(Coord::from([3, 3]));
        let params = FillingSearch {
            filling_length: 2,
            window: window.clone(),
            inner: inner.clone(),
            samples: 10,
            seed: 11,
            budget: SearchBudget::default(),
        };
        let cert = check_ufp(w.sft(), &params).unwrap();
        assert_eq!(cert.tested, 10);
        for r in &cert.evidence {
            let wit = r.witness.as_ref().unwrap();
            let cells: Vec<u8> = wit.cells.iter().map(|l| w.sft().symbols().lookup(l).unwrap()).collect();
            let p = Pattern::new(window.clone(), cells).unwrap();
            assert!(is_locally_valid(w.sft(), &p).unwrap());
            assert_eq!(w.sft().symbols().name(p.get(&Coord::from([3, 3])).unwrap()), r.inner.cells[0]);
        }
    }
}
