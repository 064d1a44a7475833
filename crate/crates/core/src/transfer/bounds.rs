use serde::Serialize;

use crate::error::Result;
use crate::sft::SftDefinition;

use super::operator::TransferOperator;
use super::perron::{perron_eigenvalue, PerronEstimate, PerronOptions};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyUnit {
    #[default]
    Nats,
    Bits,
}

impl EntropyUnit {
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            EntropyUnit::Nats => nats,
            EntropyUnit::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StripMethod {
    pub axis: usize,
    pub cross_extents: Vec<usize>,
    pub gap: usize,
    pub states: usize,
    pub transitions: u64,
    /// Conditions the lower bound relies on; not checked here.
    pub assumptions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyBound {
    pub lower: f64,
    pub upper: f64,
    pub unit: EntropyUnit,
    pub lambda: PerronEstimate,
    pub method: StripMethod,
}

/// Strip bounds on topological entropy per site.
///
/// With `λ` the Perron value of the strip whose cross-section has side `n` on
/// every axis other than `axis`, the locally valid patterns on a prism of
/// length `m` number at most `C λ^m`, so `log λ / n^(d-1)` bounds the
/// entropy from above. Stacking strips separated by `g` cells and gluing
/// them gives at least `c λ^m` patterns per `(n + g)^(d-1)` cross-section
/// sites, which yields the lower bound when the shift is block gluing at
/// gap `g` and every locally valid pattern is globally admissible.
pub fn entropy_bounds(
    x: &SftDefinition,
    axis: usize,
    n: usize,
    g: usize,
    opts: PerronOptions,
    unit: EntropyUnit,
) -> Result<EntropyBound> {
    let d = x.dim();
    let cross = vec![n; d - 1];
    let t = TransferOperator::new(x, axis, &cross)?;
    let lambda = perron_eigenvalue(&t, opts)?;
    let sites = (n as f64).powi(d as i32 - 1);
    let padded = ((n + g) as f64).powi(d as i32 - 1);
    let upper = lambda.upper.ln() / sites;
    let lower = lambda.lower.ln() / padded;
    let mut assumptions = vec!["locally valid patterns are globally admissible (extendibility)".to_string()];
    if g > 0 || d > 1 {
        assumptions.push(format!("block gluing at gap {g}"));
    }
    Ok(EntropyBound {
        lower: unit.convert(lower),
        upper: unit.convert(upper),
        unit,
        lambda,
        method: StripMethod {
            axis,
            cross_extents: cross,
            gap: g,
            states: t.state_count(),
            transitions: t.transition_count(),
            assumptions,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wire::build_wire_shift;

    #[test]
    fn full_shift_is_tight() {
        let x = SftDefinition::full_shift(2, 3).unwrap();
        for n in 1..=3 {
            let b = entropy_bounds(&x, 0, n, 0, PerronOptions::default(), EntropyUnit::Nats).unwrap();
            assert!((b.lower - 3f64.ln()).abs() < 1e-9);
            assert!((b.upper - 3f64.ln()).abs() < 1e-9);
        }
        let b = entropy_bounds(&x, 1, 2, 0, PerronOptions::default(), EntropyUnit::Bits).unwrap();
        assert!((b.upper - 3f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn w2_sandwich_small_n() {
        let w = build_wire_shift(2).unwrap();
        for n in 1..=4 {
            let b = entropy_bounds(w.sft(), 0, n, 2, PerronOptions::default(), EntropyUnit::Nats).unwrap();
            assert!(b.lower <= 2f64.ln() && 2f64.ln() <= b.upper, "n={n}: {b:?}");
        }
    }
}
