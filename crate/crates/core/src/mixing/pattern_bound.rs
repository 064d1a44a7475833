//! Exact check of the pattern-count bound behind entropy minimality, for a
//! full shift `X` on `k` symbols and `Y` the patterns avoiding one cube `P`.
//!
//! With `P` of side `n`, filling length `0`, and `C(N)` the cube of side
//! `N n`, the bound reads
//! `|L_C(N)(Y)| <= (1 - 1/m)^(N^d) |L_C(N)(X)|` with `m = k^(n^d)`.
//! The left side is taken as the number of patterns on `C(N)` in which `P`
//! occurs nowhere, which is at least the number of `Y`-admissible ones.
//! Both sides are compared exactly after clearing the denominator.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sft::{Pattern, Symbol};

/// Cap on transfer states (`k^((n-1) * width)`) of the avoidance count.
pub const AVOIDANCE_STATE_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternBoundReport {
    pub d: usize,
    pub k: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Patterns on `C(N)` avoiding `P`.
    #[serde(serialize_with = "as_string")]
    pub lhs: BigUint,
    /// Right side is `rhs_numerator / rhs_denominator`.
    #[serde(serialize_with = "as_string")]
    pub rhs_numerator: BigUint,
    #[serde(serialize_with = "as_string")]
    pub rhs_denominator: BigUint,
    pub rhs: f64,
    /// `rhs - lhs`, rounded.
    pub margin: f64,
    pub holds: bool,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    // scale down so that both fit comfortably in f64
    let shift = num.bits().max(den.bits()).saturating_sub(900);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

fn check_forbidden(k: usize, p: &Pattern) -> Result<(usize, usize)> {
    let d = p.block().dim();
    if !(1..=2).contains(&d) {
        return Err(Error::InvalidArgument("the bound is checked for d = 1 or 2".into()));
    }
    let ext = p.block().extents();
    let n = ext[0];
    if ext.iter().any(|&e| e != n) {
        return Err(Error::InvalidArgument("the forbidden pattern must be a cube".into()));
    }
    if let Some(&s) = p.cells().iter().find(|&&s| s as usize >= k) {
        return Err(Error::SymbolOutOfRange {
            index: s as usize,
            size: k,
        });
    }
    Ok((d, n))
}

/// Number of patterns over `k` symbols on the cube of the given side (in
/// dimension 1 or 2) in which `p` occurs at no position.
///
/// Rows of the cube are added one at a time; the state is the last `n - 1`
/// rows, and each new row is rejected if it completes an occurrence of `p`.
pub fn count_avoiding(k: usize, p: &Pattern, side: usize) -> Result<BigUint> {
    let (d, n) = check_forbidden(k, p)?;
    let (width, px) = if d == 1 { (1, 1) } else { (side, n) };
    let keep = n - 1;
    let rows_total = (k as f64).powi(width as i32);
    if rows_total > AVOIDANCE_STATE_CAP as f64 || rows_total.powi(keep as i32) > AVOIDANCE_STATE_CAP as f64 {
        return Err(Error::CapExceeded {
            what: "avoidance transfer states",
            size: rows_total.powi(keep as i32 + 1) as u128,
            cap: AVOIDANCE_STATE_CAP as u128,
        });
    }
    // forbidden rows, bottom first
    let prow: Vec<&[Symbol]> = p.cells().chunks(px).collect();
    let rows: Vec<Vec<Symbol>> = (0..rows_total as usize)
        .map(|mut code| {
            (0..width)
                .map(|_| {
                    let s = (code % k) as Symbol;
                    code /= k;
                    s
                })
                .collect()
        })
        .collect();
    let occurs = |band: &[&[Symbol]]| -> bool {
        (0..=width - px).any(|x0| (0..n).all(|r| band[r][x0..x0 + px] == *prow[r]))
    };
    let mut states: HashMap<Vec<u32>, BigUint> = HashMap::new();
    states.insert(Vec::new(), BigUint::one());
    for _ in 0..side {
        let mut next: HashMap<Vec<u32>, BigUint> = HashMap::with_capacity(states.len());
        for (hist, count) in &states {
            for (ri, row) in rows.iter().enumerate() {
                if hist.len() == keep {
                    let mut band: Vec<&[Symbol]> = hist.iter().map(|&h| rows[h as usize].as_slice()).collect();
                    band.push(row);
                    if occurs(&band) {
                        continue;
                    }
                }
                let mut h = hist.clone();
                h.push(ri as u32);
                if h.len() > keep {
                    h.remove(0);
                }
                *next.entry(h).or_insert_with(BigUint::zero) += count;
            }
        }
        states = next;
    }
    Ok(states.into_values().sum())
}

pub fn verify_pattern_bound(k: usize, forbidden: &Pattern, big_n: usize) -> Result<PatternBoundReport> {
    if big_n == 0 || k < 2 {
        return Err(Error::InvalidArgument("need N >= 1 and k >= 2".into()));
    }
    let (d, n) = check_forbidden(k, forbidden)?;
    let side = big_n * n;
    let lhs = count_avoiding(k, forbidden, side)?;
    let kk = BigUint::from(k);
    let m = kk.pow((n.pow(d as u32)) as u32);
    let copies = big_n.pow(d as u32) as u32;
    let cells = side.pow(d as u32) as u32;
    let rhs_numerator = (&m - 1u32).pow(copies) * kk.pow(cells);
    let rhs_denominator = m.pow(copies);
    let holds = &lhs * &rhs_denominator <= rhs_numerator;
    let rhs = ratio_to_f64(&rhs_numerator, &rhs_denominator);
    let margin = rhs - lhs.to_f64().unwrap_or(f64::INFINITY);
    Ok(PatternBoundReport {
        d,
        k,
        n,
        big_n,
        lhs,
        rhs_numerator,
        rhs_denominator,
        rhs,
        margin,
        holds,
    })
}
