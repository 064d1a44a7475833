//! Block gluing: constructive composition of wire frames, and a finite
//! window search for arbitrary shifts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{block_distance, Block, Coord};
use crate::report::PatternDump;
use crate::sft::{
    all_patterns, is_locally_valid, CompletionProblem, Pattern, SearchBudget, SearchOutcome, SftDefinition,
};
use crate::wire::WireShift;

use super::frame::{frame_in_window, frame_layers_in_window, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMode {
    /// The explicit wire-frame construction was run and its output validated.
    ConstructiveProof,
    /// Every pair and placement in range was searched.
    EmpiricalExhaustive,
    /// A seeded sample of pairs and placements was searched.
    EmpiricalSample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Glued,
    Failed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GluingRecord {
    pub first: PatternDump,
    pub second: PatternDump,
    pub separation: u64,
    pub verdict: Verdict,
    pub witness: Option<PatternDump>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GluingCertificate {
    pub shift: String,
    pub gap: u64,
    pub mode: CertificateMode,
    /// Jobs (pair and placement) in range; `tested` is smaller when sampled.
    pub total_jobs: usize,
    pub tested: usize,
    pub glued: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// The first few failures, with their inputs.
    pub counterexamples: Vec<GluingRecord>,
    /// The first few successful records, kept as evidence.
    pub evidence: Vec<GluingRecord>,
}

impl GluingCertificate {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0
    }
}

const EVIDENCE_KEPT: usize = 8;
const COUNTEREXAMPLES_KEPT: usize = 32;

/// All pairs of patterns from two families, at every offset in range.
struct JobGroup<'a> {
    first: &'a [Pattern],
    second: &'a [Pattern],
    offsets: Vec<Coord>,
}

impl JobGroup<'_> {
    fn len(&self) -> usize {
        self.first.len() * self.second.len() * self.offsets.len()
    }
}

struct JobPlan<'a> {
    groups: Vec<JobGroup<'a>>,
    separation: u64,
}

impl<'a> JobPlan<'a> {
    fn new(families: &'a [Vec<Pattern>], separation: u64) -> Result<Self> {
        let mut groups = Vec::new();
        for (i, f1) in families.iter().enumerate() {
            for f2 in &families[i..] {
                let (Some(a), Some(b)) = (f1.first(), f2.first()) else {
                    continue;
                };
                let offsets = offsets_at_distance(a.block(), b.block(), separation)?;
                groups.push(JobGroup {
                    first: f1,
                    second: f2,
                    offsets,
                });
            }
        }
        Ok(JobPlan { groups, separation })
    }

    fn total(&self) -> usize {
        self.groups.iter().map(JobGroup::len).sum()
    }

    fn job(&self, mut idx: usize) -> (&'a Pattern, Pattern) {
        for g in &self.groups {
            if idx < g.len() {
                let t = idx % g.offsets.len();
                idx /= g.offsets.len();
                let j = idx % g.second.len();
                let i = idx / g.second.len();
                return (&g.first[i], g.second[j].translate(&g.offsets[t]));
            }
            idx -= g.len();
        }
        unreachable!("job index out of range")
    }

    /// Job indices to run: all of them, or a seeded sample of `max_jobs`.
    fn select(&self, max_jobs: Option<usize>, seed: u64) -> Vec<usize> {
        let total = self.total();
        match max_jobs {
            Some(m) if total > m => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut v = rand::seq::index::sample(&mut rng, total, m).into_vec();
                v.sort_unstable();
                v
            }
            _ => (0..total).collect(),
        }
    }

    /// Run `attempt` on the selected jobs and summarize.
    fn run<F>(&self, x: &SftDefinition, gap: u64, mode: CertificateMode, selected: &[usize], attempt: F) -> Result<GluingCertificate>
    where
        F: Fn(&Pattern, &Pattern) -> Result<(Verdict, Option<Pattern>)> + Sync,
    {
        let verdicts = selected
            .par_iter()
            .map(|&i| {
                let (p1, p2) = self.job(i);
                attempt(p1, &p2).map(|(v, _)| v)
            })
            .collect::<Result<Vec<_>>>()?;
        let names = x.symbols();
        let count = |v: Verdict| verdicts.iter().filter(|&&u| u == v).count();
        let mut record = |i: usize| -> Result<GluingRecord> {
            let (p1, p2) = self.job(i);
            let (verdict, witness) = attempt(p1, &p2)?;
            Ok(GluingRecord {
                first: PatternDump::new(p1, names),
                second: PatternDump::new(&p2, names),
                separation: self.separation,
                verdict,
                witness: witness.map(|g| PatternDump::new(&g, names)),
            })
        };
        let pick = |v: Verdict, n: usize| -> Vec<usize> {
            selected.iter().zip(&verdicts).filter(|(_, &u)| u == v).map(|(&i, _)| i).take(n).collect()
        };
        let counterexamples = pick(Verdict::Failed, COUNTEREXAMPLES_KEPT)
            .into_iter()
            .map(&mut record)
            .collect::<Result<_>>()?;
        let evidence = pick(Verdict::Glued, EVIDENCE_KEPT).into_iter().map(&mut record).collect::<Result<_>>()?;
        Ok(GluingCertificate {
            shift: x.name().to_string(),
            gap,
            mode,
            total_jobs: self.total(),
            tested: selected.len(),
            glued: count(Verdict::Glued),
            failed: count(Verdict::Failed),
            inconclusive: count(Verdict::Inconclusive),
            counterexamples,
            evidence,
        })
    }
}

/// Axis along which the two blocks are separated by more than `need`.
fn separating_axis(b1: &Block, b2: &Block, need: i64, axes: &[usize]) -> Option<usize> {
    axes.iter().copied().find(|&k| {
        let gap = (b2.lo()[k] - b1.hi()[k]).max(b1.lo()[k] - b2.hi()[k]);
        gap > need
    })
}

fn merge(window: &Block, w: &WireShift, parts: &[(&Pattern, &Pattern)]) -> Result<Pattern> {
    let mut out = Pattern::filled(window.clone(), w.blank());
    for (i, c) in window.iter().enumerate() {
        let mut sym = None;
        for (orig, _) in parts {
            if orig.block().contains(&c) {
                sym = orig.get(&c);
                break;
            }
        }
        if sym.is_none() {
            for (_, framed) in parts {
                let s = framed.get(&c).expect("framed on window");
                if !w.is_blank(s) {
                    if sym.is_some_and(|t| t != s) {
                        return Err(Error::InvalidArgument(format!("frames collide at {c}")));
                    }
                    sym = Some(s);
                }
            }
        }
        if let Some(s) = sym {
            out.set(&window.coord_of(i), s)?;
        }
    }
    Ok(out)
}

/// Realize two locally valid wire patterns in one locally valid pattern by
/// framing each of them, following the block gluing construction.
///
/// Planar shifts need the blocks more than 2 apart along `e1` or `e2`. The
/// electrical shift needs them at least 2 apart along `e3`, or more than 4
/// apart along `e1` or `e2`. The result lives on the hull of both blocks
/// inflated by 1 (planar) or 2 (electrical).
pub fn glue_with_frames(w: &WireShift, p1: &Pattern, p2: &Pattern) -> Result<Pattern> {
    for p in [p1, p2] {
        if !is_locally_valid(w.sft(), p)? {
            return Err(Error::NotLocallyValid);
        }
    }
    let (b1, b2) = (p1.block(), p2.block());
    let glued = if w.is_electrical() {
        let window = b1.hull(b2).inflate(2);
        let orientation = if separating_axis(b1, b2, 1, &[2]).is_some() {
            Orientation::Horizontal
        } else {
            match separating_axis(b1, b2, 4, &[1, 0]) {
                Some(1) => Orientation::Horizontal,
                Some(_) => Orientation::Vertical,
                None => {
                    return Err(Error::InvalidArgument(
                        "electrical gluing needs e3 distance >= 2 or planar distance > 4".into(),
                    ))
                }
            }
        };
        let f1 = frame_layers_in_window(w, p1, &window, orientation)?;
        let f2 = frame_layers_in_window(w, p2, &window, orientation)?;
        merge(&window, w, &[(p1, &f1), (p2, &f2)])?
    } else {
        let window = b1.hull(b2).inflate(1);
        let orientation = match separating_axis(b1, b2, 2, &[1, 0]) {
            Some(1) => Orientation::Horizontal,
            Some(_) => Orientation::Vertical,
            None => return Err(Error::InvalidArgument("planar gluing needs distance > 2".into())),
        };
        let f1 = frame_in_window(w, p1, &window, orientation)?;
        let f2 = frame_in_window(w, p2, &window, orientation)?;
        merge(&window, w, &[(p1, &f1), (p2, &f2)])?
    };
    let sound = is_locally_valid(w.sft(), &glued)?
        && glued.restrict(b1)? == *p1
        && glued.restrict(b2)? == *p2;
    if !sound {
        return Err(Error::InvalidArgument("frame composition produced an invalid pattern".into()));
    }
    Ok(glued)
}

/// Offsets `t` such that `first` and `second + t` are exactly `separation`
/// apart.
pub fn offsets_at_distance(first: &Block, second: &Block, separation: u64) -> Result<Vec<Coord>> {
    let d = first.dim();
    let s = separation as i64;
    let range = Block::new(
        Coord::new((0..d).map(|k| first.lo()[k] - second.hi()[k] - s).collect::<Vec<_>>()),
        Coord::new((0..d).map(|k| first.hi()[k] - second.lo()[k] + s).collect::<Vec<_>>()),
    )?;
    let mut out = Vec::new();
    for t in range.iter() {
        if block_distance(first, &second.translate(&t))? == separation {
            out.push(t);
        }
    }
    Ok(out)
}

fn patterns_on(x: &SftDefinition, shape: &[usize]) -> Result<Vec<Pattern>> {
    all_patterns(x, &Block::from_extents(shape)?)
}

/// Run the frame construction on every pair of locally valid patterns of the
/// given shapes, at every placement exactly `separation` apart.
pub fn check_frame_gluing(w: &WireShift, shapes: &[Vec<usize>], separation: u64) -> Result<GluingCertificate> {
    check_frame_gluing_sampled(w, shapes, separation, None, 0)
}

/// As [`check_frame_gluing`], running a seeded sample of at most `max_jobs`
/// pairs and placements when there are more.
pub fn check_frame_gluing_sampled(
    w: &WireShift,
    shapes: &[Vec<usize>],
    separation: u64,
    max_jobs: Option<usize>,
    seed: u64,
) -> Result<GluingCertificate> {
    let x = w.sft();
    let families: Vec<Vec<Pattern>> = shapes.iter().map(|s| patterns_on(x, s)).collect::<Result<_>>()?;
    let plan = JobPlan::new(&families, separation)?;
    let selected = plan.select(max_jobs, seed);
    plan.run(x, separation.saturating_sub(1), CertificateMode::ConstructiveProof, &selected, |p1, p2| {
        Ok(match glue_with_frames(w, p1, p2) {
            Ok(g) => (Verdict::Glued, Some(g)),
            Err(_) => (Verdict::Failed, None),
        })
    })
}

/// Search for a locally valid pattern on `window` containing both inputs.
pub fn glue_by_search(
    x: &SftDefinition,
    p1: &Pattern,
    p2: &Pattern,
    window: &Block,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    let mut prob = CompletionProblem::new(x, window)?;
    prob.fix_pattern(p1)?;
    prob.fix_pattern(p2)?;
    Ok(prob.solve(budget))
}

#[derive(Clone, Debug)]
pub struct GluingSearch {
    pub gap: u64,
    pub shapes: Vec<Vec<usize>>,
    pub window_margin: u64,
    pub budget: SearchBudget,
    /// Above this many (pair, placement) jobs a seeded sample is taken.
    pub max_jobs: usize,
    pub seed: u64,
}

impl GluingSearch {
    pub fn new(gap: u64, shapes: Vec<Vec<usize>>) -> Self {
        GluingSearch {
            gap,
            shapes,
            window_margin: 3,
            budget: SearchBudget::default(),
            max_jobs: 20_000,
            seed: 0,
        }
    }
}

/// Finite-window block gluing check at separation `gap + 1`.
///
/// Each job searches for a locally valid pattern on the hull of both blocks
/// inflated by `window_margin`. Success on a finite window is a necessary
/// condition only. A failure is an explicit counterexample for that window.
pub fn check_block_gluing(x: &SftDefinition, params: &GluingSearch) -> Result<GluingCertificate> {
    let separation = params.gap + 1;
    let families: Vec<Vec<Pattern>> = params.shapes.iter().map(|s| patterns_on(x, s)).collect::<Result<_>>()?;
    let plan = JobPlan::new(&families, separation)?;
    let selected = plan.select(Some(params.max_jobs), params.seed);
    let mode = if selected.len() < plan.total() {
        CertificateMode::EmpiricalSample
    } else {
        CertificateMode::EmpiricalExhaustive
    };
    plan.run(x, params.gap, mode, &selected, |p1, p2| {
        let window = p1.block().hull(p2.block()).inflate(params.window_margin);
        Ok(match glue_by_search(x, p1, p2, &window, params.budget)? {
            SearchOutcome::Found(g) => (Verdict::Glued, Some(g)),
            SearchOutcome::Infeasible => (Verdict::Failed, None),
            SearchOutcome::Exhausted => (Verdict::Inconclusive, None),
        })
    })
}

/// Block gluing restricted to cubes of the given radii, at separation `s + 1`.
pub fn check_cube_gluing(x: &SftDefinition, s: u64, radii: &[u64], budget: SearchBudget) -> Result<GluingCertificate> {
    let d = x.dim();
    let shapes = radii.iter().map(|&r| vec![(2 * r + 1) as usize; d]).collect();
    let mut params = GluingSearch::new(s, shapes);
    params.budget = budget;
    check_block_gluing(x, &params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wire::{build_electrical_shift, build_wire_shift};

    #[test]
    fn offsets_for_single_cells() {
        let b = Block::from_extents(&[1, 1]).unwrap();
        assert_eq!(offsets_at_distance(&b, &b, 3).unwrap().len(), 24);
        let c = Block::from_extents(&[1, 1, 1]).unwrap();
        assert_eq!(offsets_at_distance(&c, &c, 5).unwrap().len(), 11 * 11 * 11 - 9 * 9 * 9);
    }

    #[test]
    fn frames_glue_wire_cells() {
        let w = build_wire_shift(1).unwrap();
        let cert = check_frame_gluing(&w, &[vec![1, 1]], 3).unwrap();
        assert_eq!(cert.tested, 49 * 24);
        assert!(cert.passed(), "{:?}", cert.counterexamples.first());
    }

    #[test]
    fn frames_reject_close_blocks() {
        let w = build_wire_shift(1).unwrap();
        let p1 = Pattern::single(Coord::from([0, 0]), w.wire(2));
        let p2 = Pattern::single(Coord::from([2, 0]), w.wire(2));
        assert!(glue_with_frames(&w, &p1, &p2).is_err());
    }

    #[test]
    fn electrical_crossing_stacks_glue() {
        let e = build_electrical_shift();
        let stack = Pattern::new(
            Block::from_extents(&[1, 1, 2]).unwrap(),
            vec![e.wire(2), e.wire(5)],
        )
        .unwrap();
        for t in [[5, 0, 0], [0, 5, 0], [0, 0, 3], [5, 5, 5], [-5, 2, 1]] {
            let other = stack.translate(&Coord::from(t));
            glue_with_frames(&e, &stack, &other).unwrap();
        }
    }

    #[test]
    fn search_finds_counterexample_at_gap_zero() {
        let w = build_wire_shift(1).unwrap();
        let p1 = Pattern::single(Coord::from([0, 0]), w.wire(2));
        let p2 = Pattern::single(Coord::from([1, 0]), w.blank());
        let win = p1.block().hull(p2.block()).inflate(2);
        assert_eq!(
            glue_by_search(w.sft(), &p1, &p2, &win, SearchBudget::default()).unwrap(),
            SearchOutcome::Infeasible
        );
        let cert = check_block_gluing(w.sft(), &GluingSearch::new(0, vec![vec![1, 1]])).unwrap();
        assert!(!cert.counterexamples.is_empty());
    }

    #[test]
    fn search_gluing_of_w_at_gap_two() {
        let w = build_wire_shift(1).unwrap();
        let cert = check_block_gluing(w.sft(), &GluingSearch::new(2, vec![vec![1, 1]])).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.mode, CertificateMode::EmpiricalExhaustive);
        let mut params = GluingSearch::new(2, vec![vec![3, 3]]);
        params.max_jobs = 300;
        let cubes = check_block_gluing(w.sft(), &params).unwrap();
        assert_eq!(cubes.mode, CertificateMode::EmpiricalSample);
        assert_eq!(cubes.tested, 300);
        assert!(cubes.passed());
    }

    #[test]
    fn full_shift_glues_at_gap_zero() {
        let x = SftDefinition::full_shift(2, 2).unwrap();
        let cert = check_cube_gluing(&x, 0, &[0, 1], SearchBudget::default()).unwrap();
        assert!(cert.passed());
    }
}
