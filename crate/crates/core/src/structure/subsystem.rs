//! Proper subsystems of full entropy inside `W̃_k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transfer::{corner_choice_profile, corner_entropy_upper_bound};
use crate::wire::build_wire_shift;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsystemConclusion {
    /// The blank full shift is a proper subsystem whose entropy meets the
    /// upper bound of the whole shift.
    FullEntropyProperSubsystem,
    /// The construction does not produce such a subsystem.
    NotProduced,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsystemReport {
    pub k: usize,
    /// Every pair of blanks is allowed along both axes, so every blank-only
    /// configuration lies in `W̃_k`.
    pub blank_full_shift_embeds: bool,
    /// Wire symbols exist, so the blank full shift is a proper subsystem.
    pub proper: bool,
    /// `log k`, in nats.
    pub subsystem_entropy: f64,
    /// Largest number of completions of a locally valid corner.
    pub max_corner_completions: usize,
    /// `(n, bound)` pairs of the corner upper bound on `h(W̃_k)`.
    pub upper_bounds: Vec<(u64, f64)>,
    /// Limit of the corner bound as `n` grows: `log` of the largest corner
    /// completion count.
    pub upper_bound_limit: f64,
    pub conclusion: SubsystemConclusion,
}

const BOUND_RADII: [u64; 4] = [10, 50, 200, 1000];

pub fn full_entropy_subsystem_check(k: usize) -> Result<SubsystemReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("need k >= 1".into()));
    }
    let w = build_wire_shift(k)?;
    let x = w.sft();
    let blanks: Vec<_> = w.blanks().collect();
    let blank_full_shift_embeds = (0..2).all(|axis| blanks.iter().all(|&a| blanks.iter().all(|&b| x.allows(axis, a, b))));
    let proper = x.alphabet_size() > blanks.len();
    let profile = corner_choice_profile(x)?;
    let upper_bounds = BOUND_RADII
        .iter()
        .map(|&n| Ok((n, corner_entropy_upper_bound(x, n)?)))
        .collect::<Result<Vec<_>>>()?;
    let upper_bound_limit = (profile.max_completions as f64).ln();
    let subsystem_entropy = (k as f64).ln();
    let meets = (upper_bound_limit - subsystem_entropy).abs() < 1e-12;
    let conclusion = if blank_full_shift_embeds && proper && meets {
        SubsystemConclusion::FullEntropyProperSubsystem
    } else {
        SubsystemConclusion::NotProduced
    };
    Ok(SubsystemReport {
        k,
        blank_full_shift_embeds,
        proper,
        subsystem_entropy,
        max_corner_completions: profile.max_completions,
        upper_bounds,
        upper_bound_limit,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blanks_carry_full_entropy() {
        for k in 2..=5 {
            let r = full_entropy_subsystem_check(k).unwrap();
            assert_eq!(r.conclusion, SubsystemConclusion::FullEntropyProperSubsystem, "k = {k}");
            assert_eq!(r.max_corner_completions, k);
            assert!((r.subsystem_entropy - (k as f64).ln()).abs() < 1e-15);
            let last = r.upper_bounds.last().unwrap().1;
            assert!(last > r.subsystem_entropy && last - r.subsystem_entropy < 0.01);
        }
    }

    #[test]
    fn single_blank_is_not_covered() {
        let r = full_entropy_subsystem_check(1).unwrap();
        assert_eq!(r.conclusion, SubsystemConclusion::NotProduced);
        assert!(r.blank_full_shift_embeds && r.proper);
        assert_eq!(r.subsystem_entropy, 0.0);
    }
}
