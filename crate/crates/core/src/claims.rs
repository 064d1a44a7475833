//! Named verification bundles, runnable from the command line.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord, Sublattice};
use crate::mixing::{check_frame_gluing, extend_electrical, extend_with_wire_frame, verify_pattern_bound};
use crate::sft::{all_patterns, is_locally_valid, Pattern, SearchBudget, SftDefinition};
use crate::structure::{
    count_periodic_points, degeneracy_witness, fixed_points, full_entropy_subsystem_check, DegeneracyVerdict,
    PeriodSpec, SubsystemConclusion,
};
use crate::transfer::{
    corner_choice_profile, corner_entropy_upper_bound, entropy_bounds, projectional_entropy_1d, EntropyUnit,
    PerronOptions, ProjectionOptions,
};
use crate::wire::{build_electrical_shift, build_wire_shift, WireShift};

/// Parameters a claim may read; unset values take per-claim defaults.
#[derive(Clone, Debug, Default)]
pub struct ClaimParams {
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub n: Option<usize>,
    pub big_n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimOutcome {
    pub claim: String,
    pub passed: bool,
    pub details: Value,
}

pub const CLAIMS: [(&str, &str); 16] = [
    ("projection-lambda", "Perron value of the horizontal matrix of W~k matches the closed form (--k)"),
    ("fixed-points", "W~k has k+2 fixed points (--k)"),
    ("fixed-points-wel", "the fixed points of W^el are its two blanks"),
    ("periodic-112", "W^el has 14 points of period (1,1,2); the full shift on 8 symbols has 64"),
    ("corner-condition-2", "every corner of W~2 has exactly two completions"),
    ("corner-profile", "W~k corners: k completions on the all-blank-edge class, 2 elsewhere (--k)"),
    ("entropy-wk2", "strip bounds for W~2 bracket log 2 within 0.2 nats; corner bound at n=50 within 0.03 (--n)"),
    ("entropy-w", "strip interval for W overlaps (log 1.75, log 1.964) (--n)"),
    ("degeneracy-wel", "W^el is not degenerate along <e1,e2>: 2 above 2"),
    ("degeneracy-wk2", "W~2 is not degenerate along <e1>"),
    ("frames", "wire frames extend every locally valid pattern up to n x n (--k, --n)"),
    ("frames-wel", "electrical frames extend every locally valid W^el pattern up to n x n x n (--n)"),
    ("gluing-w", "frame gluing of all 1x1 W patterns at separation 3"),
    ("gluing-wel", "frame gluing of all 1x1x1 W^el patterns at separation 5"),
    ("pb-inequality", "pattern-count bound for the full shift minus one cube (--d, --k, --N, --n)"),
    ("subsystem", "the blanks of W~k form a proper subsystem of full entropy (--k)"),
];

fn outcome(claim: &str, passed: bool, details: Value) -> Result<ClaimOutcome> {
    Ok(ClaimOutcome {
        claim: claim.to_string(),
        passed,
        details,
    })
}

/// `2 + k/2 + sqrt(k^2 - 4k + 8)/2`.
pub fn projection_lambda_closed_form(k: usize) -> f64 {
    let k = k as f64;
    2.0 + k / 2.0 + (k * k - 4.0 * k + 8.0).sqrt() / 2.0
}

/// Run `check` on every locally valid pattern of every shape `a_1 x ... x a_d`
/// with `1 <= a_i <= side`; returns (patterns checked, failures).
fn over_shapes<F>(x: &SftDefinition, d: usize, side: usize, check: F) -> Result<(usize, Vec<Pattern>)>
where
    F: Fn(&Pattern) -> bool + Sync,
{
    let shapes = Block::from_extents(&vec![side; d])?;
    let mut total = 0;
    let mut failures = Vec::new();
    for e in shapes.iter() {
        let extents: Vec<usize> = e.components().iter().map(|&a| a as usize + 1).collect();
        let pats = all_patterns(x, &Block::from_extents(&extents)?)?;
        total += pats.len();
        failures.extend(pats.into_par_iter().filter(|p| !check(p)).collect::<Vec<_>>());
    }
    Ok((total, failures))
}

fn frame_check(w: &WireShift, side: usize, electrical: bool) -> Result<(usize, usize)> {
    let d = if electrical { 3 } else { 2 };
    let (total, failures) = over_shapes(w.sft(), d, side, |p| {
        let framed = if electrical {
            extend_electrical(w, p, 2)
        } else {
            extend_with_wire_frame(w, p, 2)
        };
        framed.is_ok_and(|f| {
            is_locally_valid(w.sft(), &f).unwrap_or(false) && f.restrict(p.block()).is_ok_and(|r| r == *p)
        })
    })?;
    Ok((total, failures.len()))
}

pub fn run_claim(name: &str, params: &ClaimParams) -> Result<ClaimOutcome> {
    let k = params.k;
    match name {
        "projection-lambda" => {
            let k = k.unwrap_or(2);
            let w = build_wire_shift(k)?;
            let est = projectional_entropy_1d(w.sft(), &Coord::from([1, 0]), ProjectionOptions::default())?;
            let (lo, hi) = est.lambda.expect("axis method");
            let expected = projection_lambda_closed_form(k);
            let lambda = (lo + hi) / 2.0;
            outcome(
                name,
                (lambda - expected).abs() <= 1e-9,
                json!({"k": k, "lambda": lambda, "bracket": [lo, hi], "expected": expected, "tolerance": 1e-9}),
            )
        }
        "fixed-points" => {
            let k = k.unwrap_or(2);
            let w = build_wire_shift(k)?;
            let count = count_periodic_points(w.sft(), &PeriodSpec::fixed(2))?;
            let names: Vec<&str> = fixed_points(w.sft()).iter().map(|&s| w.sft().symbols().name(s)).collect();
            outcome(
                name,
                count == (k + 2).into(),
                json!({"k": k, "count": count.to_string(), "expected": k + 2, "symbols": names}),
            )
        }
        "fixed-points-wel" => {
            let el = build_electrical_shift();
            let fixed = fixed_points(el.sft());
            let blanks: Vec<_> = el.blanks().collect();
            let names: Vec<&str> = fixed.iter().map(|&s| el.sft().symbols().name(s)).collect();
            outcome(name, fixed == blanks, json!({"symbols": names}))
        }
        "periodic-112" => {
            let p = PeriodSpec::new(vec![1, 1, 2])?;
            let el = count_periodic_points(build_electrical_shift().sft(), &p)?;
            let full = count_periodic_points(&SftDefinition::full_shift(3, 8)?, &p)?;
            outcome(
                name,
                el == 14u32.into() && full == 64u32.into(),
                json!({"wel": el.to_string(), "full_shift_8": full.to_string(), "expected": [14, 64]}),
            )
        }
        "corner-condition-2" => {
            let w = build_wire_shift(2)?;
            let prof = corner_choice_profile(w.sft())?;
            outcome(
                name,
                prof.is_uniform(2),
                json!({"corners": prof.records.len(), "histogram": prof.histogram}),
            )
        }
        "corner-profile" => {
            let k = k.unwrap_or(3);
            let w = build_wire_shift(k)?;
            let prof = corner_choice_profile(w.sft())?;
            let bad = prof
                .records
                .iter()
                .filter(|r| {
                    let open = !w.profile(r.left).right && !w.profile(r.below).top;
                    r.completions != if open { k } else { 2 }
                })
                .count();
            outcome(
                name,
                bad == 0,
                json!({"k": k, "corners": prof.records.len(), "mismatches": bad, "histogram": prof.histogram}),
            )
        }
        "entropy-wk2" => {
            let n = params.n.unwrap_or(9);
            let w = build_wire_shift(2)?;
            let b = entropy_bounds(w.sft(), 1, n, 2, PerronOptions::default(), EntropyUnit::Nats)?;
            let ln2 = 2f64.ln();
            let corner = corner_entropy_upper_bound(w.sft(), 50)?;
            let passed =
                b.lower <= ln2 && ln2 <= b.upper && b.upper - b.lower <= 0.2 && (corner - ln2).abs() <= 0.03;
            outcome(
                name,
                passed,
                json!({"n": n, "g": 2, "lower": b.lower, "upper": b.upper, "width": b.upper - b.lower,
                       "log2": ln2, "corner_bound_50": corner, "states": b.method.states}),
            )
        }
        "entropy-w" => {
            let n = params.n.unwrap_or(10);
            let w = build_wire_shift(1)?;
            let b = entropy_bounds(w.sft(), 1, n, 2, PerronOptions::default(), EntropyUnit::Nats)?;
            let (a, c) = (1.75f64.ln(), 1.964f64.ln());
            outcome(
                name,
                b.lower < c && a < b.upper,
                json!({"n": n, "g": 2, "lower": b.lower, "upper": b.upper, "target": [a, c], "states": b.method.states}),
            )
        }
        "degeneracy-wel" => {
            let el = build_electrical_shift();
            let l = Sublattice::coordinate(3, &[0, 1])?;
            let r = degeneracy_witness(el.sft(), &l, &Block::from_extents(&[1, 1, 2])?, 2, SearchBudget::default())?;
            let passed = r.verdict == DegeneracyVerdict::ProperSubsystem
                && r.witness.as_ref().is_some_and(|w| w.cells == ["2", "2"]);
            outcome(name, passed, serde_json::to_value(&r)?)
        }
        "degeneracy-wk2" => {
            let w = build_wire_shift(2)?;
            let l = Sublattice::coordinate(2, &[0])?;
            let r = degeneracy_witness(w.sft(), &l, &Block::from_extents(&[1, 2])?, 2, SearchBudget::default())?;
            outcome(name, r.verdict == DegeneracyVerdict::ProperSubsystem, serde_json::to_value(&r)?)
        }
        "frames" => {
            let k = k.unwrap_or(1);
            let side = params.n.unwrap_or(3);
            let (total, failed) = frame_check(&build_wire_shift(k)?, side, false)?;
            outcome(name, failed == 0, json!({"k": k, "max_side": side, "patterns": total, "failures": failed}))
        }
        "frames-wel" => {
            let side = params.n.unwrap_or(2);
            let (total, failed) = frame_check(&build_electrical_shift(), side, true)?;
            outcome(name, failed == 0, json!({"max_side": side, "patterns": total, "failures": failed}))
        }
        "gluing-w" | "gluing-wel" => {
            let (w, shape, sep) = if name == "gluing-w" {
                (build_wire_shift(1)?, vec![1, 1], 3)
            } else {
                (build_electrical_shift(), vec![1, 1, 1], 5)
            };
            let cert = check_frame_gluing(&w, &[shape], sep)?;
            outcome(
                name,
                cert.passed() && cert.tested == cert.total_jobs,
                json!({"separation": sep, "tested": cert.tested, "glued": cert.glued, "failed": cert.failed}),
            )
        }
        "pb-inequality" => {
            let d = params.d.unwrap_or(1);
            let k = k.unwrap_or(2);
            let big_n = params.big_n.unwrap_or(2);
            let n = params.n.unwrap_or(2);
            let block = Block::from_extents(&vec![n; d])?;
            let forbidden = Pattern::filled(block, (k - 1) as u8);
            let r = verify_pattern_bound(k, &forbidden, big_n)?;
            outcome(name, r.holds, serde_json::to_value(&r)?)
        }
        "subsystem" => {
            let k = k.unwrap_or(2);
            let r = full_entropy_subsystem_check(k)?;
            let expected = if k >= 2 {
                SubsystemConclusion::FullEntropyProperSubsystem
            } else {
                SubsystemConclusion::NotProduced
            };
            outcome(name, r.conclusion == expected, serde_json::to_value(&r)?)
        }
        _ => Err(Error::InvalidArgument(format!(
            "unknown claim {name:?}; known: {}",
            CLAIMS.iter().map(|c| c.0).collect::<Vec<_>>().join(", ")
        ))),
    }
}
