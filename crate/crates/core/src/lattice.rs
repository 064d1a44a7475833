//! Integer lattice geometry: coordinates, cuboid blocks and sublattices.
//!
//! Blocks are stored as inclusive corner pairs `[lo, hi]`. Cells of a block are
//! indexed with axis 0 varying fastest, so in two dimensions a block is laid out
//! row by row (rows of constant `e2`) and in three dimensions layer by layer.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the number of cells any enumeration may touch.
pub const DEFAULT_VOLUME_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coord(pub Vec<i64>);

impl Coord {
    pub fn new(components: impl Into<Vec<i64>>) -> Self {
        Coord(components.into())
    }

    pub fn zeros(d: usize) -> Self {
        Coord(vec![0; d])
    }

    /// Standard basis vector `e_{axis+1}`.
    pub fn unit(d: usize, axis: usize) -> Self {
        let mut c = vec![0; d];
        c[axis] = 1;
        Coord(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Coord) -> Coord {
        debug_assert_eq!(self.dim(), other.dim());
        Coord(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coord) -> Coord {
        debug_assert_eq!(self.dim(), other.dim());
        Coord(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: i64) -> Coord {
        Coord(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn linf_norm(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).max().unwrap_or(0)
    }

    /// A vector is primitive when the gcd of its components is 1.
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0u64, |g, &a| gcd(g, a.unsigned_abs())) == 1
    }

    pub fn is_unit_axis(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.dim()).filter(|&k| self.0[k] != 0).collect();
        match nonzero.as_slice() {
            [k] if self.0[*k].abs() == 1 => Some(*k),
            _ => None,
        }
    }
}

impl Index<usize> for Coord {
    type Output = i64;
    fn index(&self, k: usize) -> &i64 {
        &self.0[k]
    }
}

impl<const N: usize> From<[i64; N]> for Coord {
    fn from(a: [i64; N]) -> Self {
        Coord(a.to_vec())
    }
}

impl From<Vec<i64>> for Coord {
    fn from(v: Vec<i64>) -> Self {
        Coord(v)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cuboid `[lo, hi]` of integer points, both corners inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    lo: Coord,
    hi: Coord,
}

impl Block {
    pub fn new(lo: Coord, hi: Coord) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::DimensionMismatch {
                expected: lo.dim(),
                found: hi.dim(),
            });
        }
        if lo.dim() == 0 {
            return Err(Error::InvalidBlock("dimension must be at least 1".into()));
        }
        if (0..lo.dim()).any(|k| lo[k] > hi[k]) {
            return Err(Error::InvalidBlock(format!("lo {lo} exceeds hi {hi}")));
        }
        Ok(Block { lo, hi })
    }

    /// Block with corner at `origin` and the given side lengths.
    pub fn with_origin(origin: Coord, extents: &[usize]) -> Result<Self> {
        if origin.dim() != extents.len() {
            return Err(Error::DimensionMismatch {
                expected: origin.dim(),
                found: extents.len(),
            });
        }
        if extents.contains(&0) {
            return Err(Error::InvalidBlock("extents must be positive".into()));
        }
        let hi = Coord(
            origin
                .0
                .iter()
                .zip(extents)
                .map(|(o, &e)| o + e as i64 - 1)
                .collect(),
        );
        Block::new(origin, hi)
    }

    /// Block `[0, extents - 1]`.
    pub fn from_extents(extents: &[usize]) -> Result<Self> {
        Block::with_origin(Coord::zeros(extents.len()), extents)
    }

    /// Cube `[-r·1, r·1]` centred at `center`.
    pub fn cube(center: &Coord, radius: u64) -> Block {
        let r = radius as i64;
        Block {
            lo: Coord(center.0.iter().map(|c| c - r).collect()),
            hi: Coord(center.0.iter().map(|c| c + r).collect()),
        }
    }

    pub fn singleton(c: Coord) -> Block {
        Block { lo: c.clone(), hi: c }
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> &Coord {
        &self.lo
    }

    pub fn hi(&self) -> &Coord {
        &self.hi
    }

    pub fn extent(&self, axis: usize) -> usize {
        (self.hi[axis] - self.lo[axis] + 1) as usize
    }

    pub fn extents(&self) -> Vec<usize> {
        (0..self.dim()).map(|k| self.extent(k)).collect()
    }

    /// Exact cell count, or an error when it does not fit in `u64`.
    pub fn volume(&self) -> Result<u64> {
        let mut v: u128 = 1;
        for k in 0..self.dim() {
            v = v.saturating_mul(self.extent(k) as u128);
        }
        u64::try_from(v).map_err(|_| Error::CapExceeded {
            what: "block volume",
            size: v,
            cap: u64::MAX as u128,
        })
    }

    /// Volume checked against an enumeration cap.
    pub fn volume_within(&self, cap: u64) -> Result<usize> {
        let v = self.volume()?;
        if v > cap {
            return Err(Error::CapExceeded {
                what: "block volume",
                size: v as u128,
                cap: cap as u128,
            });
        }
        Ok(v as usize)
    }

    /// Number of cells, assuming the block was already checked against a cap.
    pub fn len(&self) -> usize {
        self.extents().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn strides(&self) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.dim());
        let mut acc = 1usize;
        for k in 0..self.dim() {
            s.push(acc);
            acc *= self.extent(k);
        }
        s
    }

    pub fn contains(&self, c: &Coord) -> bool {
        c.dim() == self.dim() && (0..self.dim()).all(|k| self.lo[k] <= c[k] && c[k] <= self.hi[k])
    }

    pub fn contains_block(&self, other: &Block) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    pub fn index_of(&self, c: &Coord) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let mut idx = 0usize;
        let mut stride = 1usize;
        for k in 0..self.dim() {
            idx += (c[k] - self.lo[k]) as usize * stride;
            stride *= self.extent(k);
        }
        Some(idx)
    }

    pub fn coord_of(&self, mut idx: usize) -> Coord {
        let mut c = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let e = self.extent(k);
            c.push(self.lo[k] + (idx % e) as i64);
            idx /= e;
        }
        Coord(c)
    }

    pub fn translate(&self, offset: &Coord) -> Block {
        Block {
            lo: self.lo.add(offset),
            hi: self.hi.add(offset),
        }
    }

    /// `[lo - m·1, hi + m·1]`.
    pub fn inflate(&self, m: u64) -> Block {
        let m = m as i64;
        Block {
            lo: Coord(self.lo.0.iter().map(|a| a - m).collect()),
            hi: Coord(self.hi.0.iter().map(|a| a + m).collect()),
        }
    }

    /// Inflate only along the listed axes.
    pub fn inflate_axes(&self, m: u64, axes: &[usize]) -> Block {
        let mut b = self.clone();
        for &k in axes {
            b.lo.0[k] -= m as i64;
            b.hi.0[k] += m as i64;
        }
        b
    }

    /// Smallest block containing both.
    pub fn hull(&self, other: &Block) -> Block {
        Block {
            lo: Coord(
                (0..self.dim())
                    .map(|k| self.lo[k].min(other.lo[k]))
                    .collect(),
            ),
            hi: Coord(
                (0..self.dim())
                    .map(|k| self.hi[k].max(other.hi[k]))
                    .collect(),
            ),
        }
    }

    pub fn intersects(&self, other: &Block) -> bool {
        (0..self.dim()).all(|k| self.lo[k] <= other.hi[k] && other.lo[k] <= self.hi[k])
    }

    /// Drop one axis, giving the cross-section block in the remaining axes.
    pub fn without_axis(&self, axis: usize) -> Option<Block> {
        if self.dim() < 2 {
            return None;
        }
        let keep = |c: &Coord| {
            Coord(
                c.0.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != axis)
                    .map(|(_, &a)| a)
                    .collect(),
            )
        };
        Some(Block {
            lo: keep(&self.lo),
            hi: keep(&self.hi),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.len()).map(move |i| self.coord_of(i))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// L∞ distance between the closest pair of points of the two blocks.
pub fn block_distance(b1: &Block, b2: &Block) -> Result<u64> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch {
            expected: b1.dim(),
            found: b2.dim(),
        });
    }
    Ok((0..b1.dim())
        .map(|k| {
            let gap = (b2.lo[k] - b1.hi[k]).max(b1.lo[k] - b2.hi[k]).max(0);
            gap as u64
        })
        .max()
        .unwrap_or(0))
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub(crate) fn integer_determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&a| a as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Whether `generators ∪ complement` is a basis of `Z^d`, i.e. the square
/// matrix they form has determinant ±1.
pub fn validate_complement(generators: &[Coord], complement: &[Coord]) -> bool {
    let Some(d) = generators.first().or(complement.first()).map(Coord::dim) else {
        return false;
    };
    if generators.len() + complement.len() != d
        || generators.iter().chain(complement).any(|c| c.dim() != d)
    {
        return false;
    }
    let rows: Vec<Vec<i64>> = generators
        .iter()
        .chain(complement)
        .map(|c| c.0.clone())
        .collect();
    integer_determinant(&rows).abs() == 1
}

/// Integer inverse of a unimodular matrix via the adjugate.
fn unimodular_inverse(rows: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = rows.len();
    let det = integer_determinant(rows);
    if det.abs() != 1 {
        return None;
    }
    let minor = |skip_r: usize, skip_c: usize| -> Vec<Vec<i64>> {
        rows.iter()
            .enumerate()
            .filter(|(r, _)| *r != skip_r)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != skip_c)
                    .map(|(_, &a)| a)
                    .collect()
            })
            .collect()
    };
    let mut inv = vec![vec![0i64; n]; n];
    for (i, inv_row) in inv.iter_mut().enumerate() {
        for (j, entry) in inv_row.iter_mut().enumerate() {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let cof = if n == 1 {
                1
            } else {
                sign * integer_determinant(&minor(j, i))
            };
            *entry = i64::try_from(cof * det).ok()?;
        }
    }
    Some(inv)
}

/// An `r`-dimensional sublattice `L = span_Z(U)` together with a complement
/// `V` such that `U ∪ V` is a basis of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sublattice {
    generators: Vec<Coord>,
    complement: Vec<Coord>,
    /// Inverse of the basis matrix whose rows are `U` then `V`.
    #[serde(skip)]
    inverse: Vec<Vec<i64>>,
}

impl Sublattice {
    pub fn new(generators: Vec<Coord>, complement: Vec<Coord>) -> Result<Self> {
        let d = generators
            .first()
            .map(Coord::dim)
            .ok_or_else(|| Error::InvalidSublattice("no generators".into()))?;
        if generators.len() >= d {
            return Err(Error::InvalidSublattice(format!(
                "rank {} must be below dimension {d}",
                generators.len()
            )));
        }
        if let Some(bad) = generators.iter().chain(&complement).find(|c| c.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        if !validate_complement(&generators, &complement) {
            return Err(Error::InvalidSublattice(
                "generators and complement do not form a basis of Z^d".into(),
            ));
        }
        let rows: Vec<Vec<i64>> = generators
            .iter()
            .chain(&complement)
            .map(|c| c.0.clone())
            .collect();
        let inverse = unimodular_inverse(&rows)
            .ok_or_else(|| Error::InvalidSublattice("basis is not unimodular".into()))?;
        Ok(Sublattice {
            generators,
            complement,
            inverse,
        })
    }

    /// Build from generators alone, completing them to a basis of `Z^d` with a
    /// column Hermite reduction. Fails if the generators are dependent or span
    /// a non-saturated subgroup (e.g. `⟨(2,0)⟩`).
    pub fn from_generators(generators: Vec<Coord>) -> Result<Self> {
        let d = generators
            .first()
            .map(Coord::dim)
            .ok_or_else(|| Error::InvalidSublattice("no generators".into()))?;
        let r = generators.len();
        if r >= d || generators.iter().any(|g| g.dim() != d) {
            return Err(Error::InvalidSublattice(
                "need 1 ≤ r < d generators of equal dimension".into(),
            ));
        }
        let mut u: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| g.0.iter().map(|&a| a as i128).collect())
            .collect();
        // Row operations on q_inv mirror the column operations applied to u,
        // so that u = [B | 0] · q_inv holds throughout.
        let mut q_inv: Vec<Vec<i128>> = (0..d)
            .map(|i| (0..d).map(|j| i128::from(i == j)).collect())
            .collect();
        for i in 0..r {
            loop {
                let pivot = (i..d)
                    .filter(|&j| u[i][j] != 0)
                    .min_by_key(|&j| u[i][j].abs());
                let Some(p) = pivot else {
                    return Err(Error::InvalidSublattice(
                        "generators are linearly dependent".into(),
                    ));
                };
                if p != i {
                    for row in u.iter_mut() {
                        row.swap(i, p);
                    }
                    q_inv.swap(i, p);
                }
                let mut done = true;
                for j in i + 1..d {
                    if u[i][j] != 0 {
                        let q = u[i][j].div_euclid(u[i][i]);
                        for row in u.iter_mut() {
                            row[j] -= q * row[i];
                        }
                        for c in 0..d {
                            let add = q * q_inv[j][c];
                            q_inv[i][c] += add;
                        }
                        if u[i][j] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if u[i][i].abs() != 1 {
                return Err(Error::InvalidSublattice(
                    "generators span a non-saturated subgroup".into(),
                ));
            }
        }
        let complement = q_inv[r..]
            .iter()
            .map(|row| Coord(row.iter().map(|&a| a as i64).collect()))
            .collect();
        Sublattice::new(generators, complement)
    }

    /// `⟨e_{a+1} : a in axes⟩` with the remaining standard vectors as complement.
    pub fn coordinate(d: usize, axes: &[usize]) -> Result<Self> {
        let generators = axes.iter().map(|&a| Coord::unit(d, a)).collect();
        let complement = (0..d)
            .filter(|k| !axes.contains(k))
            .map(|k| Coord::unit(d, k))
            .collect();
        Sublattice::new(generators, complement)
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Coord] {
        &self.generators
    }

    pub fn complement(&self) -> &[Coord] {
        &self.complement
    }

    pub fn validate_complement(&self) -> bool {
        validate_complement(&self.generators, &self.complement)
    }

    /// Coefficients of `p` in the basis `U ∪ V`: `(u-part, v-part)`.
    pub fn decompose(&self, p: &Coord) -> (Vec<i64>, Vec<i64>) {
        let d = self.dim();
        let coeffs: Vec<i64> = (0..d)
            .map(|j| (0..d).map(|i| p[i] * self.inverse[i][j]).sum())
            .collect();
        let (u, v) = coeffs.split_at(self.rank());
        (u.to_vec(), v.to_vec())
    }

    pub fn contains(&self, p: &Coord) -> bool {
        self.decompose(p).1.iter().all(|&c| c == 0)
    }

    pub fn combine(&self, coeffs: &[i64]) -> Coord {
        combine(&self.generators, coeffs, self.dim())
    }

    pub fn combine_complement(&self, coeffs: &[i64]) -> Coord {
        combine(&self.complement, coeffs, self.dim())
    }

    /// Interval of possible coefficient values for basis vector `j` over a window.
    fn coefficient_range(&self, j: usize, window: &Block) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = 0;
        for i in 0..self.dim() {
            let m = self.inverse[i][j];
            let (a, b) = (window.lo()[i] * m, window.hi()[i] * m);
            lo += a.min(b);
            hi += a.max(b);
        }
        (lo, hi)
    }
}

fn combine(vectors: &[Coord], coeffs: &[i64], d: usize) -> Coord {
    let mut out = vec![0i64; d];
    for (v, &c) in vectors.iter().zip(coeffs) {
        for k in 0..d {
            out[k] += c * v[k];
        }
    }
    Coord(out)
}

/// Points of `L` inside `window`, listed in lexicographic order of their
/// generator coefficients.
pub fn sublattice_points(l: &Sublattice, window: &Block) -> Result<Vec<Coord>> {
    if window.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: window.dim(),
        });
    }
    let ranges: Vec<(i64, i64)> = (0..l.rank())
        .map(|j| l.coefficient_range(j, window))
        .collect();
    let mut out = Vec::new();
    let mut coeffs: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let p = l.combine(&coeffs);
        if window.contains(&p) {
            out.push(p);
        }
        // odometer, last coefficient fastest
        let mut k = coeffs.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if coeffs[k] < ranges[k].1 {
                coeffs[k] += 1;
                for (j, c) in coeffs.iter_mut().enumerate().skip(k + 1) {
                    *c = ranges[j].0;
                }
                break;
            }
        }
    }
}
