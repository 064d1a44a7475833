//! The wire shifts: `W`, its blank-split variants `W̃_k`, and the
//! three-dimensional electrical shift `W^el`.
//!
//! Every symbol is described by which of its four edges carries a wire. Two
//! cells may be horizontal neighbours iff the right edge of the left cell
//! matches the left edge of the right cell, and likewise top/bottom for
//! vertical neighbours, so wires never end.

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};
use crate::sft::{AxisRule, Pattern, SftDefinition, Symbol, SymbolTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeProfile {
    pub left: bool,
    pub right: bool,
    pub top: bool,
    pub bottom: bool,
}

impl EdgeProfile {
    pub const BLANK: EdgeProfile = EdgeProfile::new(false, false, false, false);

    pub const fn new(left: bool, right: bool, top: bool, bottom: bool) -> Self {
        EdgeProfile {
            left,
            right,
            top,
            bottom,
        }
    }

    pub fn is_blank(&self) -> bool {
        *self == EdgeProfile::BLANK
    }

    /// Quarter turn clockwise: the wire on the left edge ends up on top.
    pub fn rotated(&self) -> EdgeProfile {
        EdgeProfile {
            top: self.left,
            right: self.top,
            bottom: self.right,
            left: self.bottom,
        }
    }

    /// `(low, high)` faces along axis 0 (left/right) or axis 1 (bottom/top).
    pub fn faces(&self, axis: usize) -> (bool, bool) {
        match axis {
            0 => (self.left, self.right),
            _ => (self.bottom, self.top),
        }
    }

    pub fn class(&self) -> WireClass {
        match (self.left, self.right, self.top, self.bottom) {
            (false, false, false, false) => WireClass::Blank,
            (true, true, false, false) => WireClass::StraightEw,
            (false, false, true, true) => WireClass::StraightNs,
            _ => WireClass::Junction,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireClass {
    Blank,
    StraightEw,
    StraightNs,
    Junction,
}

/// Edge profiles of the seven `W` symbols, numbered as in the original
/// alphabet: blank, the two straight wires, and the four T-junctions.
pub const W_PROFILES: [(u8, EdgeProfile); 7] = [
    (1, EdgeProfile::new(false, false, false, false)),
    (2, EdgeProfile::new(true, true, false, false)),
    (3, EdgeProfile::new(true, true, true, false)),
    (4, EdgeProfile::new(true, true, false, true)),
    (5, EdgeProfile::new(false, false, true, true)),
    (6, EdgeProfile::new(false, true, true, true)),
    (7, EdgeProfile::new(true, false, true, true)),
];

/// Number in `1..=7` of the `W` symbol with the given profile.
pub fn wire_number(p: &EdgeProfile) -> Option<u8> {
    W_PROFILES.iter().find(|(_, q)| q == p).map(|(n, _)| *n)
}

/// Quarter-turn relabelling of the `W` alphabet, numbers `1..=7`.
///
/// The turn is clockwise in the usual picture with `e2` pointing up: a
/// horizontal pair `(a, b)` becomes the vertical pair with `rotate(b)` below
/// `rotate(a)`.
pub fn rotate_symbol(s: u8) -> Result<u8> {
    let p = W_PROFILES
        .iter()
        .find(|(n, _)| *n == s)
        .map(|(_, p)| *p)
        .ok_or(Error::SymbolOutOfRange {
            index: s as usize,
            size: 7,
        })?;
    Ok(wire_number(&p.rotated()).expect("profiles closed under rotation"))
}

/// A built wire shift together with its edge-profile bookkeeping.
#[derive(Clone, Debug)]
pub struct WireShift {
    sft: SftDefinition,
    k: usize,
    electrical: bool,
    profiles: Vec<EdgeProfile>,
}

impl WireShift {
    pub fn sft(&self) -> &SftDefinition {
        &self.sft
    }

    pub fn into_sft(self) -> SftDefinition {
        self.sft
    }

    /// Number of blank copies.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_electrical(&self) -> bool {
        self.electrical
    }

    /// Electrical variants other than the canonical `k = 2` are experiments.
    pub fn is_experimental(&self) -> bool {
        self.electrical && self.k != 2
    }

    pub fn profile(&self, s: Symbol) -> EdgeProfile {
        self.profiles[s as usize]
    }

    pub fn class(&self, s: Symbol) -> WireClass {
        self.profiles[s as usize].class()
    }

    pub fn is_blank(&self, s: Symbol) -> bool {
        (s as usize) < self.k
    }

    /// Blank copies occupy symbols `0..k`.
    pub fn blanks(&self) -> impl Iterator<Item = Symbol> {
        0..self.k as Symbol
    }

    pub fn blank(&self) -> Symbol {
        0
    }

    /// Symbol index of wire symbol number `n` in `1..=7`; `1` gives the first blank.
    pub fn wire(&self, n: u8) -> Symbol {
        assert!((1..=7).contains(&n), "wire symbols are numbered 1..=7");
        if n == 1 {
            0
        } else {
            (self.k + n as usize - 2) as Symbol
        }
    }

    /// `W` number of a symbol; every blank copy reports `1`.
    pub fn number(&self, s: Symbol) -> u8 {
        if self.is_blank(s) {
            1
        } else {
            (s as usize + 2 - self.k) as u8
        }
    }

    /// Symbol with the given profile; blank profiles give the first blank.
    pub fn with_profile(&self, p: &EdgeProfile) -> Option<Symbol> {
        wire_number(p).map(|n| self.wire(n))
    }

    /// Quarter turn clockwise (blanks fixed).
    pub fn rotate(&self, s: Symbol) -> Symbol {
        if self.is_blank(s) {
            s
        } else {
            self.wire(rotate_symbol(self.number(s)).expect("valid number"))
        }
    }

    /// Rotate a planar pattern by a clockwise quarter turn about the origin,
    /// `(x, y) -> (y, -x)`, relabelling symbols to match.
    pub fn rotate_pattern(&self, p: &Pattern) -> Result<Pattern> {
        if p.block().dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.block().dim(),
            });
        }
        let map = |c: &Coord| Coord::from([c[1], -c[0]]);
        let b = p.block();
        let nb = Block::new(
            Coord::from([b.lo()[1], -b.hi()[0]]),
            Coord::from([b.hi()[1], -b.lo()[0]]),
        )?;
        let mut out = Pattern::filled(nb, 0);
        for (c, &s) in b.iter().zip(p.cells()) {
            out.set(&map(&c), self.rotate(s))?;
        }
        Ok(out)
    }
}

fn planar_rules(profiles: &[EdgeProfile]) -> [AxisRule; 2] {
    let n = profiles.len();
    let horizontal = AxisRule::from_fn(n, |a, b| profiles[a as usize].right == profiles[b as usize].left);
    let vertical = AxisRule::from_fn(n, |a, b| profiles[a as usize].top == profiles[b as usize].bottom);
    [horizontal, vertical]
}

fn wire_alphabet(k: usize) -> (Vec<String>, Vec<EdgeProfile>) {
    let mut names = Vec::with_capacity(k + 6);
    let mut profiles = Vec::with_capacity(k + 6);
    if k == 1 {
        names.push("1".to_string());
        profiles.push(EdgeProfile::BLANK);
    } else {
        for i in 1..=k {
            names.push(format!("1_{i}"));
            profiles.push(EdgeProfile::BLANK);
        }
    }
    for (n, p) in &W_PROFILES[1..] {
        names.push(n.to_string());
        profiles.push(*p);
    }
    (names, profiles)
}

/// `W̃_k`: the wire shift with `k` interchangeable blanks (`k = 1` is `W`).
pub fn build_wire_shift(k: usize) -> Result<WireShift> {
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one blank (k >= 1)".into()));
    }
    let (names, profiles) = wire_alphabet(k);
    let symbols = SymbolTable::new(names)?;
    let name = if k == 1 {
        "wire_W".to_string()
    } else {
        format!("wire_Wk?k={k}")
    };
    let sft = SftDefinition::new(name, symbols, planar_rules(&profiles).to_vec())?
        .with_strongly_essential(true)?;
    Ok(WireShift {
        sft,
        k,
        electrical: false,
        profiles,
    })
}

/// `W^el`: layers of `W̃_2` stacked along `e3`, where a straight wire may only
/// sit on a blank or cross the perpendicular straight wire, and junctions see
/// blanks above and below.
pub fn build_electrical_shift() -> WireShift {
    build_electrical_variant(2).expect("canonical electrical shift")
}

/// The electrical construction over `W̃_k`; only `k = 2` is the canonical shift.
pub fn build_electrical_variant(k: usize) -> Result<WireShift> {
    let planar = build_wire_shift(k)?;
    let ew = planar.wire(2);
    let ns = planar.wire(5);
    let n = planar.sft.alphabet_size();
    let stack = AxisRule::from_fn(n, |a, b| {
        planar.is_blank(a) || planar.is_blank(b) || (a == ew && b == ns) || (a == ns && b == ew)
    });
    let mut rules = planar.sft.rules().to_vec();
    rules.push(stack);
    let name = if k == 2 {
        "wire_Wel".to_string()
    } else {
        format!("wire_Wel?k={k}")
    };
    let sft = SftDefinition::new(name, planar.sft.symbols().clone(), rules)?.with_strongly_essential(true)?;
    Ok(WireShift {
        sft,
        k,
        electrical: true,
        profiles: planar.profiles,
    })
}

/// Resolve a built-in shift name: `wire_W`, `wire_Wk?k=K`, `wire_Wel`.
pub fn builtin(name: &str) -> Result<WireShift> {
    match name {
        "wire_W" => build_wire_shift(1),
        "wire_Wel" => Ok(build_electrical_shift()),
        _ => {
            let k = name
                .strip_prefix("wire_Wk?k=")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::Schema(format!("unknown built-in shift {name:?}")))?;
            build_wire_shift(k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(w: &WireShift, label: &str) -> Symbol {
        w.sft().symbols().lookup(label).unwrap()
    }

    #[test]
    fn alphabets() {
        assert_eq!(build_wire_shift(1).unwrap().sft().alphabet_size(), 7);
        let w2 = build_wire_shift(2).unwrap();
        assert_eq!(
            w2.sft().symbols().names(),
            &["1_1", "1_2", "2", "3", "4", "5", "6", "7"]
        );
        assert_eq!(build_wire_shift(3).unwrap().sft().alphabet_size(), 9);
        assert!(build_wire_shift(0).is_err());
    }

    #[test]
    fn horizontal_examples() {
        let w = build_wire_shift(1).unwrap();
        assert!(w.sft().allows(0, sym(&w, "2"), sym(&w, "2")));
        assert!(!w.sft().allows(0, sym(&w, "2"), sym(&w, "1")));
        // blank, 5 and 7 have no right wire; only 1, 5, 6 lack a left wire
        let no_right = ["1", "5", "7"].map(|l| sym(&w, l));
        for a in no_right {
            let allowed: Vec<&str> = (0..7)
                .filter(|&b| w.sft().allows(0, a, b))
                .map(|b| w.sft().symbols().name(b))
                .collect();
            assert_eq!(allowed, ["1", "5", "6"]);
        }
        // wires present on the lower edge: 4, 5, 6, 7
        let lower: Vec<&str> = (0..7)
            .filter(|&b| !w.sft().allows(1, 0, b))
            .map(|b| w.sft().symbols().name(b))
            .collect();
        assert_eq!(lower, ["4", "5", "6", "7"]);
    }

    #[test]
    fn electrical_stack_table() {
        let e = build_electrical_shift();
        // rows: lower symbol, columns: upper symbol, order 1_1 1_2 2 3 4 5 6 7
        let table: [[u8; 8]; 8] = [
            [1, 1, 1, 1, 1, 1, 1, 1],
            [1, 1, 1, 1, 1, 1, 1, 1],
            [1, 1, 0, 0, 0, 1, 0, 0],
            [1, 1, 0, 0, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0, 0, 0],
            [1, 1, 1, 0, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0, 0, 0],
        ];
        for a in 0..8u8 {
            for b in 0..8u8 {
                assert_eq!(e.sft().allows(2, a, b), table[a as usize][b as usize] == 1, "{a} {b}");
            }
        }
        assert_eq!(e.sft().rule(2).pair_count(), 30);
        assert!(e.sft().allows(2, sym(&e, "1_1"), sym(&e, "7")));
        assert!(e.sft().allows(2, sym(&e, "2"), sym(&e, "5")));
        assert!(!e.sft().allows(2, sym(&e, "2"), sym(&e, "2")));
    }

    #[test]
    fn electrical_layers_are_w2() {
        let e = build_electrical_shift();
        let w2 = build_wire_shift(2).unwrap();
        assert_eq!(e.sft().rule(0), w2.sft().rule(0));
        assert_eq!(e.sft().rule(1), w2.sft().rule(1));
        assert!(!e.is_experimental());
        assert!(build_electrical_variant(3).unwrap().is_experimental());
    }

    #[test]
    fn rotation() {
        assert_eq!(rotate_symbol(1).unwrap(), 1);
        assert_eq!(rotate_symbol(2).unwrap(), 5);
        let expected = [(1, 1), (2, 5), (5, 2), (3, 6), (6, 4), (4, 7), (7, 3)];
        for (a, b) in expected {
            assert_eq!(rotate_symbol(a).unwrap(), b);
        }
        for s in 1..=7 {
            let mut t = s;
            for _ in 0..4 {
                t = rotate_symbol(t).unwrap();
            }
            assert_eq!(t, s);
        }
        assert!(rotate_symbol(8).is_err());
    }

    #[test]
    fn rotation_equivariance() {
        let w = build_wire_shift(1).unwrap();
        let x = w.sft();
        for a in 0..7 {
            for b in 0..7 {
                let (ra, rb) = (w.rotate(a), w.rotate(b));
                assert_eq!(x.allows(0, a, b), x.allows(1, rb, ra));
                assert_eq!(x.allows(1, a, b), x.allows(0, ra, rb));
            }
        }
    }

    #[test]
    fn blank_permutations_are_automorphisms() {
        let w = build_wire_shift(3).unwrap();
        let perms: [[Symbol; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let full: Vec<Symbol> = p.iter().copied().chain(3..9).collect();
            for axis in 0..2 {
                assert_eq!(&w.sft().rule(axis).permuted(&full), w.sft().rule(axis));
            }
        }
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("wire_W").unwrap().k(), 1);
        assert_eq!(builtin("wire_Wk?k=4").unwrap().sft().alphabet_size(), 10);
        assert_eq!(builtin("wire_Wel").unwrap().sft().dim(), 3);
        assert!(builtin("wire_X").is_err());
    }
}
