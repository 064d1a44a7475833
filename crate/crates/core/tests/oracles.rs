//! Cross-checks of the transfer and periodic machinery against independent
//! computations.

use nalgebra::DMatrix;
use num_bigint::BigUint;

use sftkit::lattice::{Block, Coord};
use sftkit::sft::{all_patterns, count_patterns, SftDefinition};
use sftkit::structure::{count_periodic_points, PeriodSpec};
use sftkit::transfer::{perron_eigenvalue, PerronOptions, TransferOperator};
use sftkit::wire::{build_electrical_shift, build_wire_shift};

fn builtins() -> Vec<SftDefinition> {
    vec![
        build_wire_shift(1).unwrap().into_sft(),
        build_wire_shift(2).unwrap().into_sft(),
        build_wire_shift(3).unwrap().into_sft(),
        build_electrical_shift().into_sft(),
        SftDefinition::full_shift(2, 2).unwrap(),
    ]
}

/// Cross-sections with at most `max_cells` cells for every axis.
fn cross_sections(x: &SftDefinition, max_cells: usize) -> Vec<(usize, Vec<usize>)> {
    let d = x.dim();
    let mut out = Vec::new();
    for axis in 0..d {
        if d == 1 {
            out.push((axis, vec![]));
            continue;
        }
        for e in Block::from_extents(&vec![max_cells; d - 1]).unwrap().iter() {
            let ext: Vec<usize> = e.components().iter().map(|&a| a as usize + 1).collect();
            if ext.iter().product::<usize>() <= max_cells {
                out.push((axis, ext));
            }
        }
    }
    out
}

fn spectral_radius(dense: &[Vec<u8>]) -> f64 {
    let n = dense.len();
    let m = DMatrix::from_fn(n, n, |i, j| dense[i][j] as f64);
    m.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn perron_value_matches_dense_eigenvalues() {
    let mut checked = 0;
    for x in builtins() {
        for (axis, cross) in cross_sections(&x, 3) {
            let t = TransferOperator::new(&x, axis, &cross).unwrap();
            if t.state_count() > 300 {
                continue;
            }
            let est = perron_eigenvalue(&t, PerronOptions::default()).unwrap();
            let rho = spectral_radius(&t.to_dense().unwrap());
            assert!(
                (est.lambda - rho).abs() <= 1e-8 * rho.max(1.0),
                "{} axis {axis} cross {cross:?}: {} vs {rho}",
                x.name(),
                est.lambda
            );
            assert!(est.lower <= rho + 1e-9 && rho <= est.upper + 1e-9);
            checked += 1;
        }
    }
    assert!(checked >= 15, "only {checked} operators checked");
}

#[test]
fn path_counts_match_prism_counts() {
    for x in builtins() {
        for (axis, cross) in cross_sections(&x, 3) {
            let t = TransferOperator::new(&x, axis, &cross).unwrap();
            for m in 1..=4 {
                let mut ext = cross.clone();
                ext.insert(axis, m);
                let block = Block::from_extents(&ext).unwrap();
                assert_eq!(t.path_count(m), count_patterns(&x, &block).unwrap(), "{} {ext:?}", x.name());
            }
        }
    }
}

/// Locally valid patterns on the period box whose wrapped neighbours are
/// allowed as well.
fn torus_brute_force(x: &SftDefinition, periods: &[usize]) -> BigUint {
    let block = Block::from_extents(periods).unwrap();
    let pats = all_patterns(x, &block).unwrap();
    let good = pats
        .iter()
        .filter(|p| {
            block.iter().all(|c| {
                (0..x.dim()).all(|axis| {
                    let mut next = c.components().to_vec();
                    next[axis] = (next[axis] + 1) % periods[axis] as i64;
                    let (a, b) = (p.get(&c).unwrap(), p.get(&Coord::new(next)).unwrap());
                    x.allows(axis, a, b)
                })
            })
        })
        .count();
    BigUint::from(good)
}

#[test]
fn torus_counts_match_brute_force() {
    for x in builtins() {
        let d = x.dim();
        let boxes = Block::from_extents(&vec![8; d]).unwrap();
        for e in boxes.iter() {
            let periods: Vec<usize> = e.components().iter().map(|&a| a as usize + 1).collect();
            if periods.iter().product::<usize>() > 8 {
                continue;
            }
            let spec = PeriodSpec::new(periods.clone()).unwrap();
            assert_eq!(
                count_periodic_points(&x, &spec).unwrap(),
                torus_brute_force(&x, &periods),
                "{} {periods:?}",
                x.name()
            );
        }
    }
}
