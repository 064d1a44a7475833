use serde::Serialize;

use crate::error::{Error, Result};

use super::operator::TransferOperator;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerronOptions {
    /// Required width of the certified interval.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for PerronOptions {
    fn default() -> Self {
        PerronOptions {
            tol: 1e-10,
            max_iterations: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerronEstimate {
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    /// States in the component that attains the maximum.
    pub component_size: usize,
    pub components: usize,
}

/// Perron eigenvalue of the operator: the largest spectral radius over its
/// recurrent strongly connected components.
///
/// Each component is handled by power iteration on `T + I` started from the
/// all-ones vector. On an irreducible block the minimum and maximum of
/// `(T v)_c / v_c` over a positive vector bracket the Perron value, and the
/// iteration stops once that bracket is narrower than `tol`.
pub fn perron_eigenvalue(t: &TransferOperator, opts: PerronOptions) -> Result<PerronEstimate> {
    let comps = t.recurrent_components();
    if comps.is_empty() {
        return Err(Error::ZeroOperator);
    }
    let mut best: Option<PerronEstimate> = None;
    let mut iterations = 0;
    for comp in &comps {
        let est = if comp.len() == 1 {
            // a single state on a cycle through itself
            PerronEstimate {
                lambda: 1.0,
                lower: 1.0,
                upper: 1.0,
                iterations: 0,
                component_size: 1,
                components: comps.len(),
            }
        } else {
            power_iterate(t, comp, opts)?
        };
        iterations += est.iterations;
        if best.as_ref().is_none_or(|b| est.lambda > b.lambda) {
            best = Some(est);
        }
    }
    let mut best = best.expect("nonempty");
    best.iterations = iterations;
    best.components = comps.len();
    Ok(best)
}

fn power_iterate(t: &TransferOperator, comp: &[u32], opts: PerronOptions) -> Result<PerronEstimate> {
    let n = t.state_count();
    let mut inside = vec![false; n];
    for &c in comp {
        inside[c as usize] = true;
    }
    let mut v = vec![0.0; n];
    for &c in comp {
        v[c as usize] = 1.0;
    }
    let mut w = vec![0.0; n];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for it in 1..=opts.max_iterations {
        t.apply(&v, &mut w);
        lo = f64::INFINITY;
        hi = 0.0f64;
        for &c in comp {
            let r = w[c as usize] / v[c as usize];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if hi - lo <= opts.tol {
            return Ok(PerronEstimate {
                lambda: 0.5 * (lo + hi),
                lower: lo,
                upper: hi,
                iterations: it,
                component_size: comp.len(),
                components: 1,
            });
        }
        let mut peak = 0.0f64;
        for c in 0..n {
            let x = if inside[c] { w[c] + v[c] } else { 0.0 };
            v[c] = x;
            peak = peak.max(x);
        }
        for x in v.iter_mut() {
            *x /= peak;
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iterations,
        lower: lo,
        upper: hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::SftDefinition;
    use crate::wire::build_wire_shift;

    fn closed_form(k: f64) -> f64 {
        2.0 + k / 2.0 + (k * k - 4.0 * k + 8.0).sqrt() / 2.0
    }

    #[test]
    fn full_shift_is_exact() {
        let x = SftDefinition::full_shift(2, 2).unwrap();
        let t = TransferOperator::new(&x, 0, &[1]).unwrap();
        let p = perron_eigenvalue(&t, PerronOptions::default()).unwrap();
        assert!((p.lambda - 2.0).abs() < 1e-12);
    }

    #[test]
    fn projection_matrix_closed_form() {
        for k in [2usize, 3] {
            let w = build_wire_shift(k).unwrap();
            let t = TransferOperator::new(w.sft(), 0, &[1]).unwrap();
            let p = perron_eigenvalue(&t, PerronOptions::default()).unwrap();
            assert!((p.lambda - closed_form(k as f64)).abs() < 1e-9, "k={k}");
            assert!(p.lower <= p.upper);
        }
    }

    #[test]
    fn zero_operator() {
        let x = SftDefinition::new(
            "dead",
            crate::sft::SymbolTable::numbered(2).unwrap(),
            vec![crate::sft::AxisRule::from_pairs(2, [(0, 1)])],
        )
        .unwrap();
        let t = TransferOperator::new(&x, 0, &[]).unwrap();
        assert!(matches!(perron_eigenvalue(&t, PerronOptions::default()), Err(Error::ZeroOperator)));
    }

    #[test]
    fn iteration_cap_reports_bracket() {
        let w = build_wire_shift(1).unwrap();
        let t = TransferOperator::new(w.sft(), 0, &[3]).unwrap();
        let opts = PerronOptions {
            tol: 0.0,
            max_iterations: 3,
        };
        assert!(matches!(perron_eigenvalue(&t, opts), Err(Error::NonConvergence { .. })));
    }
}
