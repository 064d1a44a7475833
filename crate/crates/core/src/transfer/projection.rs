use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};
use crate::sft::{CompletionProblem, SearchBudget, SearchOutcome, SftDefinition, Symbol};

use super::operator::TransferOperator;
use super::perron::{perron_eigenvalue, PerronOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionMethod {
    /// Perron value of the axis transition matrix.
    AxisMatrix,
    /// Counts of admissible words on a window of the line.
    WindowCount,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionEstimate {
    pub direction: Vec<i64>,
    pub lower: f64,
    pub upper: f64,
    pub method: ProjectionMethod,
    pub approximate: bool,
    /// Perron interval for the matrix method, window word count otherwise.
    pub lambda: Option<(f64, f64)>,
    pub window: Option<usize>,
    pub words: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionOptions {
    pub perron: PerronOptions,
    /// Number of lattice points on the line for the window method.
    pub window: usize,
    /// Gluing gap assumed for the window lower bound.
    pub gap: u64,
    pub budget: SearchBudget,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            perron: PerronOptions::default(),
            window: 4,
            gap: 2,
            budget: SearchBudget::default(),
        }
    }
}

/// Entropy of the one-dimensional projection onto the line spanned by a
/// primitive vector.
///
/// Along a coordinate axis this is the log Perron value of that axis's
/// transition matrix. Otherwise the words of length `m` seen on the line are
/// counted by completion search on their bounding box (exact when locally
/// valid box patterns extend), and the count gives
/// `[log c_m / (m + t), log c_m / m]` where `t = floor(g / |w|_inf)` points
/// of the line separate two glued windows.
pub fn projectional_entropy_1d(
    x: &SftDefinition,
    direction: &Coord,
    opts: ProjectionOptions,
) -> Result<ProjectionEstimate> {
    let d = x.dim();
    if direction.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: direction.dim(),
        });
    }
    if !direction.is_primitive() {
        return Err(Error::InvalidSublattice(format!("{direction} is not a primitive vector")));
    }
    if let Some(axis) = direction.is_unit_axis() {
        let t = TransferOperator::new(x, axis, &vec![1; d - 1])?;
        let p = perron_eigenvalue(&t, opts.perron)?;
        return Ok(ProjectionEstimate {
            direction: direction.components().to_vec(),
            lower: p.lower.ln(),
            upper: p.upper.ln(),
            method: ProjectionMethod::AxisMatrix,
            approximate: false,
            lambda: Some((p.lower, p.upper)),
            window: None,
            words: None,
        });
    }
    let m = opts.window.max(1);
    let words = count_line_words(x, direction, m, opts.budget)?;
    let norm = direction.linf_norm();
    let sep = (opts.gap / norm) as f64;
    let log_c = (words as f64).ln();
    Ok(ProjectionEstimate {
        direction: direction.components().to_vec(),
        lower: log_c / (m as f64 + sep),
        upper: log_c / m as f64,
        method: ProjectionMethod::WindowCount,
        approximate: true,
        lambda: None,
        window: Some(m),
        words: Some(words),
    })
}

/// Number of words `(x_0, x_w, ..., x_{(m-1)w})` that occur in some locally
/// valid pattern on the bounding box of those points.
pub fn count_line_words(x: &SftDefinition, w: &Coord, m: usize, budget: SearchBudget) -> Result<u64> {
    let d = x.dim();
    let points: Vec<Coord> = (0..m as i64).map(|j| w.scale(j)).collect();
    let lo: Vec<i64> = (0..d).map(|k| points.iter().map(|p| p[k]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|k| points.iter().map(|p| p[k]).max().unwrap()).collect();
    let window = Block::new(Coord::new(lo), Coord::new(hi))?;
    let base = CompletionProblem::new(x, &window)?;
    let mut count = 0u64;
    let mut word: Vec<Symbol> = Vec::with_capacity(m);
    extend_words(x, &base, &points, &mut word, budget, &mut count)?;
    Ok(count)
}

fn extend_words(
    x: &SftDefinition,
    base: &CompletionProblem<'_>,
    points: &[Coord],
    word: &mut Vec<Symbol>,
    budget: SearchBudget,
    count: &mut u64,
) -> Result<()> {
    if word.len() == points.len() {
        *count += 1;
        return Ok(());
    }
    for s in 0..x.alphabet_size() as Symbol {
        word.push(s);
        let mut prob = base.clone();
        for (p, &t) in points.iter().zip(word.iter()) {
            prob.fix(p, t)?;
        }
        match prob.solve(budget) {
            SearchOutcome::Found(_) => extend_words(x, base, points, word, budget, count)?,
            SearchOutcome::Infeasible => {}
            SearchOutcome::Exhausted => return Err(Error::BudgetExhausted),
        }
        word.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wire::build_wire_shift;

    #[test]
    fn axis_projection_of_w2() {
        let w = build_wire_shift(2).unwrap();
        let e = projectional_entropy_1d(w.sft(), &Coord::from([1, 0]), ProjectionOptions::default()).unwrap();
        assert!((e.lower - 4f64.ln()).abs() < 1e-9 && (e.upper - 4f64.ln()).abs() < 1e-9);
        assert!(!e.approximate);
    }

    #[test]
    fn diagonal_words_are_free() {
        let w = build_wire_shift(2).unwrap();
        let c = count_line_words(w.sft(), &Coord::from([1, 1]), 3, SearchBudget::default()).unwrap();
        assert_eq!(c, 512);
        let e = projectional_entropy_1d(w.sft(), &Coord::from([1, 1]), ProjectionOptions::default()).unwrap();
        assert!(e.approximate);
        assert!((e.upper - 8f64.ln()).abs() < 1e-9);
        assert!(e.lower <= 8f64.ln());
    }

    #[test]
    fn full_shift_any_direction() {
        let x = SftDefinition::full_shift(2, 3).unwrap();
        let e = projectional_entropy_1d(&x, &Coord::from([2, 1]), ProjectionOptions::default()).unwrap();
        assert!((e.upper - 3f64.ln()).abs() < 1e-12);
        let e = projectional_entropy_1d(&x, &Coord::from([0, 1]), ProjectionOptions::default()).unwrap();
        assert!((e.upper - 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn non_primitive_direction_is_rejected() {
        let x = SftDefinition::full_shift(2, 2).unwrap();
        assert!(projectional_entropy_1d(&x, &Coord::from([2, 2]), ProjectionOptions::default()).is_err());
    }
}
