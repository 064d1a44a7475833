//! Wire frames around rectangular patterns.
//!
//! A planar pattern `P` on `B = [u, v]` is surrounded by two infinite
//! horizontal wires on the rows `u_2 - 1` and `v_2 + 1`, joined by vertical
//! wire segments on the columns `u_1 - 1` and `v_1 + 1`. Wherever a boundary
//! cell of `P` has a wire on its outer edge, the adjacent frame cell gets a
//! stub in that direction (symbols 3, 4, 6, 7 instead of 2 or 5). Everything
//! else is blank. Since the alphabet has no corner symbols the frame cannot
//! close into a loop; the straight lines simply leave the window.

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};
use crate::sft::{is_locally_valid, Pattern, Symbol};
use crate::wire::{EdgeProfile, WireShift};

/// Direction of the two infinite wires of a frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Lines along `e1`, for separating patterns along `e2`.
    Horizontal,
    /// Lines along `e2`, for separating patterns along `e1`.
    Vertical,
}

fn rotate_block(b: &Block) -> Block {
    Block::new(
        Coord::from([b.lo()[1], -b.hi()[0]]),
        Coord::from([b.hi()[1], -b.lo()[0]]),
    )
    .expect("nonempty")
}

fn rotate_times(w: &WireShift, p: &Pattern, times: usize) -> Result<Pattern> {
    let mut q = p.clone();
    for _ in 0..times {
        q = w.rotate_pattern(&q)?;
    }
    Ok(q)
}

fn rotate_block_times(b: &Block, times: usize) -> Block {
    let mut q = b.clone();
    for _ in 0..times {
        q = rotate_block(&q);
    }
    q
}

/// Edge profile of a frame cell at `c` around `p` (horizontal orientation),
/// or `None` inside `p`'s block.
fn frame_profile(w: &WireShift, p: &Pattern, c: &Coord) -> Option<EdgeProfile> {
    let b = p.block();
    if b.contains(c) {
        return None;
    }
    let (u1, u2, v1, v2) = (b.lo()[0], b.lo()[1], b.hi()[0], b.hi()[1]);
    let (x, y) = (c[0], c[1]);
    let at = |x: i64, y: i64| w.profile(p.get(&Coord::from([x, y])).expect("inside"));
    let side = x == u1 - 1 || x == v1 + 1;
    let inner_x = (u1..=v1).contains(&x);
    let mut e = EdgeProfile::BLANK;
    if y == u2 - 1 || y == v2 + 1 {
        e.left = true;
        e.right = true;
        let toward = if y == u2 - 1 {
            side || (inner_x && at(x, u2).bottom)
        } else {
            side || (inner_x && at(x, v2).top)
        };
        if y == u2 - 1 {
            e.top = toward;
        } else {
            e.bottom = toward;
        }
    } else if (u2..=v2).contains(&y) && side {
        e.top = true;
        e.bottom = true;
        if x == u1 - 1 {
            e.right = at(u1, y).left;
        } else {
            e.left = at(v1, y).right;
        }
    }
    Some(e)
}

/// Frame `p` inside `window` with horizontal lines. Requires the window to
/// contain the block inflated by one.
fn frame_horizontal(w: &WireShift, p: &Pattern, window: &Block) -> Result<Pattern> {
    let cells = window
        .iter()
        .map(|c| match frame_profile(w, p, &c) {
            None => Ok(p.get(&c).expect("inside")),
            Some(e) => w
                .with_profile(&e)
                .ok_or_else(|| Error::InvalidArgument(format!("no wire symbol for edges {e:?}"))),
        })
        .collect::<Result<Vec<Symbol>>>()?;
    Pattern::new(window.clone(), cells)
}

/// Frame a planar pattern inside `window` (which must contain the block
/// inflated by one) with the given orientation.
pub fn frame_in_window(w: &WireShift, p: &Pattern, window: &Block, orientation: Orientation) -> Result<Pattern> {
    if p.block().dim() != 2 || window.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.block().dim().max(window.dim()),
        });
    }
    if !window.contains_block(&p.block().inflate(1)) {
        return Err(Error::NotContained {
            inner: p.block().inflate(1).to_string(),
            outer: window.to_string(),
        });
    }
    match orientation {
        Orientation::Horizontal => frame_horizontal(w, p, window),
        Orientation::Vertical => {
            // rotate so that vertical lines become horizontal, then undo
            let rp = rotate_times(w, p, 1)?;
            let rw = rotate_block_times(window, 1);
            let framed = frame_horizontal(w, &rp, &rw)?;
            rotate_times(w, &framed, 3)
        }
    }
}

fn require_valid(w: &WireShift, p: &Pattern) -> Result<()> {
    if !is_locally_valid(w.sft(), p)? {
        return Err(Error::NotLocallyValid);
    }
    Ok(())
}

/// Extend a locally valid planar wire pattern to its block inflated by
/// `margin >= 1` using a horizontal frame.
pub fn extend_with_wire_frame(w: &WireShift, p: &Pattern, margin: u64) -> Result<Pattern> {
    if w.is_electrical() {
        return Err(Error::InvalidArgument("use extend_electrical for the 3D shift".into()));
    }
    if margin < 1 {
        return Err(Error::InvalidArgument("a frame needs margin at least 1".into()));
    }
    require_valid(w, p)?;
    frame_in_window(w, p, &p.block().inflate(margin), Orientation::Horizontal)
}

/// Grow a planar pattern by one cell on every side: wires leaving the block
/// continue straight (2 or 5), everything else including the corners is
/// blank.
pub fn inflate_with_wires(w: &WireShift, p: &Pattern) -> Result<Pattern> {
    let b = p.block();
    let big = b.inflate(1);
    let (u1, u2, v1, v2) = (b.lo()[0], b.lo()[1], b.hi()[0], b.hi()[1]);
    let mut out = Pattern::filled(big.clone(), w.blank());
    p.paste_into(&mut out);
    let at = |x: i64, y: i64| w.profile(p.get(&Coord::from([x, y])).expect("inside"));
    for y in u2..=v2 {
        if at(u1, y).left {
            out.set(&Coord::from([u1 - 1, y]), w.wire(2))?;
        }
        if at(v1, y).right {
            out.set(&Coord::from([v1 + 1, y]), w.wire(2))?;
        }
    }
    for x in u1..=v1 {
        if at(x, u2).bottom {
            out.set(&Coord::from([x, u2 - 1]), w.wire(5))?;
        }
        if at(x, v2).top {
            out.set(&Coord::from([x, v2 + 1]), w.wire(5))?;
        }
    }
    Ok(out)
}

fn layer(p: &Pattern, z: i64) -> Pattern {
    let b = p.block();
    let planar = Block::new(
        Coord::from([b.lo()[0], b.lo()[1]]),
        Coord::from([b.hi()[0], b.hi()[1]]),
    )
    .expect("nonempty");
    let cells = planar
        .iter()
        .map(|c| p.get(&Coord::from([c[0], c[1], z])).expect("inside"))
        .collect();
    Pattern::new(planar, cells).expect("sized")
}

/// Frame the layers of a 3D pattern inside a 3D window: layers with even
/// `e3` coordinate are framed directly, odd layers are first grown by one
/// cell with [`inflate_with_wires`]. Cells outside the pattern's layers stay
/// blank. The planar part of the window must contain the block inflated
/// by two.
pub fn frame_layers_in_window(
    w: &WireShift,
    p: &Pattern,
    window: &Block,
    orientation: Orientation,
) -> Result<Pattern> {
    let b = p.block();
    if b.dim() != 3 || window.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: b.dim().max(window.dim()),
        });
    }
    if !window.contains_block(b) {
        return Err(Error::NotContained {
            inner: b.to_string(),
            outer: window.to_string(),
        });
    }
    let plane = Block::new(
        Coord::from([window.lo()[0], window.lo()[1]]),
        Coord::from([window.hi()[0], window.hi()[1]]),
    )?;
    let mut out = Pattern::filled(window.clone(), w.blank());
    for z in b.lo()[2]..=b.hi()[2] {
        let l = layer(p, z);
        let framed = if z.rem_euclid(2) == 0 {
            frame_in_window(w, &l, &plane, orientation)?
        } else {
            let grown = inflate_with_wires(w, &l)?;
            frame_in_window(w, &grown, &plane, orientation)?
        };
        for (c, &s) in plane.iter().zip(framed.cells()) {
            out.set(&Coord::from([c[0], c[1], z]), s)?;
        }
    }
    Ok(out)
}

/// Extend a locally valid `W^el` pattern to its block inflated by
/// `margin >= 2` on every axis.
pub fn extend_electrical(w: &WireShift, p: &Pattern, margin: u64) -> Result<Pattern> {
    if !w.is_electrical() {
        return Err(Error::InvalidArgument("extend_electrical needs the 3D shift".into()));
    }
    if margin < 2 {
        return Err(Error::InvalidArgument("electrical frames need margin at least 2".into()));
    }
    require_valid(w, p)?;
    frame_layers_in_window(w, p, &p.block().inflate(margin), Orientation::Horizontal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::all_patterns;
    use crate::wire::{build_electrical_shift, build_wire_shift};

    fn check(w: &WireShift, p: &Pattern, out: &Pattern) {
        assert!(is_locally_valid(w.sft(), out).unwrap());
        assert_eq!(&out.restrict(p.block()).unwrap(), p);
    }

    #[test]
    fn blank_gets_plain_lines() {
        let w = build_wire_shift(1).unwrap();
        let p = Pattern::single(Coord::from([0, 0]), w.blank());
        let out = extend_with_wire_frame(&w, &p, 2).unwrap();
        check(&w, &p, &out);
        let num = |x: i64, y: i64| w.number(out.get(&Coord::from([x, y])).unwrap());
        assert_eq!(num(-1, -1), 3);
        assert_eq!(num(1, -1), 3);
        assert_eq!(num(-1, 1), 4);
        assert_eq!(num(0, -1), 2);
        assert_eq!(num(-2, 1), 2);
        assert_eq!(num(-1, 0), 5);
        assert_eq!(num(0, 2), 1);
    }

    #[test]
    fn horizontal_wire_gets_stubs() {
        let w = build_wire_shift(1).unwrap();
        let p = Pattern::single(Coord::from([0, 0]), w.wire(2));
        let out = extend_with_wire_frame(&w, &p, 2).unwrap();
        check(&w, &p, &out);
        assert_eq!(w.number(out.get(&Coord::from([-1, 0])).unwrap()), 6);
        assert_eq!(w.number(out.get(&Coord::from([1, 0])).unwrap()), 7);
    }

    #[test]
    fn all_2x2_patterns_extend_both_orientations() {
        let w = build_wire_shift(1).unwrap();
        let b = Block::from_extents(&[2, 2]).unwrap();
        for p in all_patterns(w.sft(), &b).unwrap() {
            let out = extend_with_wire_frame(&w, &p, 2).unwrap();
            check(&w, &p, &out);
            let v = frame_in_window(&w, &p, &b.inflate(2), Orientation::Vertical).unwrap();
            check(&w, &p, &v);
        }
    }

    #[test]
    fn invalid_input_is_rejected() {
        let w = build_wire_shift(1).unwrap();
        let p = Pattern::new(Block::from_extents(&[2, 1]).unwrap(), vec![w.wire(2), w.blank()]).unwrap();
        assert!(matches!(extend_with_wire_frame(&w, &p, 2), Err(Error::NotLocallyValid)));
    }

    #[test]
    fn electrical_single_cells() {
        let e = build_electrical_shift();
        let p = Pattern::single(Coord::from([0, 0, 0]), e.blank());
        let out = extend_electrical(&e, &p, 2).unwrap();
        assert!(is_locally_valid(e.sft(), &out).unwrap());
        let stack = Pattern::new(
            Block::from_extents(&[1, 1, 2]).unwrap(),
            vec![e.wire(2), e.wire(5)],
        )
        .unwrap();
        let out = extend_electrical(&e, &stack, 3).unwrap();
        check(&e, &stack, &out);
    }

    #[test]
    fn inflation_continues_wires() {
        let w = build_wire_shift(2).unwrap();
        let p = Pattern::single(Coord::from([0, 0]), w.wire(3));
        let g = inflate_with_wires(&w, &p).unwrap();
        assert!(is_locally_valid(w.sft(), &g).unwrap());
        assert_eq!(g.get(&Coord::from([-1, 0])), Some(w.wire(2)));
        assert_eq!(g.get(&Coord::from([0, 1])), Some(w.wire(5)));
        assert_eq!(g.get(&Coord::from([0, -1])), Some(w.blank()));
    }
}
