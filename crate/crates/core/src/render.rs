//! Static ASCII and SVG renders of patterns.
//!
//! Wire symbols are drawn from their edge profiles: every active edge is a
//! stroke from the cell centre to that edge. Blanks show their copy index.
//! Three-dimensional patterns are drawn one `e3` layer per panel, side by
//! side, lowest layer first. In the electrical shift a straight wire lying on
//! a perpendicular straight wire in the next layer is marked as a crossing.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};
use crate::sft::{Pattern, Symbol, SymbolTable};
use crate::wire::{EdgeProfile, WireShift};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

/// How to draw the cells of one shift.
#[derive(Clone, Copy, Debug)]
pub enum Style<'a> {
    /// Symbol labels in a grid.
    Labels(&'a SymbolTable),
    /// Wire strokes from edge profiles.
    Wires(&'a WireShift),
}

impl Style<'_> {
    fn symbols(&self) -> &SymbolTable {
        match self {
            Style::Labels(t) => t,
            Style::Wires(w) => w.sft().symbols(),
        }
    }
}

/// Planar panels of a 2D or 3D pattern: `(z, panel block)` pairs.
fn panels(p: &Pattern) -> Result<Vec<(Option<i64>, Block)>> {
    let b = p.block();
    match b.dim() {
        1 => Ok(vec![(None, b.clone())]),
        2 => Ok(vec![(None, b.clone())]),
        3 => Ok((b.lo()[2]..=b.hi()[2])
            .map(|z| {
                let lo = Coord::new(vec![b.lo()[0], b.lo()[1], z]);
                let hi = Coord::new(vec![b.hi()[0], b.hi()[1], z]);
                (Some(z), Block::new(lo, hi).expect("layer of a block"))
            })
            .collect()),
        d => Err(Error::InvalidArgument(format!("cannot render dimension {d}"))),
    }
}

/// Cell at column `x`, row `y` of a panel (rows counted from the top).
fn cell_at(p: &Pattern, panel: &Block, z: Option<i64>, x: usize, y: usize) -> (Coord, Symbol) {
    let lo = panel.lo();
    let c = match (panel.dim(), z) {
        (1, _) => Coord::new(vec![lo[0] + x as i64]),
        (_, None) => Coord::new(vec![lo[0] + x as i64, panel.hi()[1] - y as i64]),
        (_, Some(z)) => Coord::new(vec![lo[0] + x as i64, panel.hi()[1] - y as i64, z]),
    };
    let s = p.get(&c).expect("cell inside the pattern");
    (c, s)
}

fn panel_size(panel: &Block) -> (usize, usize) {
    let h = if panel.dim() == 1 { 1 } else { panel.extent(1) };
    (panel.extent(0), h)
}

/// Whether the straight wire at `c` sits on a perpendicular straight wire in
/// an adjacent layer.
fn crosses(w: &WireShift, p: &Pattern, c: &Coord) -> bool {
    if !w.is_electrical() {
        return false;
    }
    let s = p.get(c).expect("cell inside the pattern");
    let (ew, ns) = (w.wire(2), w.wire(5));
    let other = if s == ew {
        ns
    } else if s == ns {
        ew
    } else {
        return false;
    };
    [-1i64, 1].iter().any(|dz| {
        let n = Coord::new(vec![c[0], c[1], c[2] + dz]);
        p.get(&n) == Some(other)
    })
}

fn blank_index(w: &WireShift, s: Symbol) -> usize {
    w.blanks().position(|b| b == s).expect("blank symbol") + 1
}

/// Three text rows for one wire cell.
fn ascii_wire_cell(w: &WireShift, s: Symbol, crossing: bool) -> [String; 3] {
    let pr: EdgeProfile = w.profile(s);
    if pr.is_blank() {
        let mark = if w.k() == 1 {
            ".".to_string()
        } else {
            std::char::from_digit(blank_index(w, s) as u32, 36)
                .map(String::from)
                .unwrap_or_else(|| "?".into())
        };
        return ["   ".into(), format!(" {mark} "), "   ".into()];
    }
    let centre = if crossing {
        '#'
    } else if (pr.left || pr.right) && (pr.top || pr.bottom) {
        '+'
    } else if pr.left || pr.right {
        '-'
    } else {
        '|'
    };
    let h = |on: bool| if on { '-' } else { ' ' };
    let v = |on: bool| if on { '|' } else { ' ' };
    [
        format!(" {} ", v(pr.top)),
        format!("{}{}{}", h(pr.left), centre, h(pr.right)),
        format!(" {} ", v(pr.bottom)),
    ]
}

fn panel_title(z: Option<i64>) -> String {
    z.map(|z| format!("z = {z}")).unwrap_or_default()
}

/// Text render; panels of a 3D pattern are separated by ` | `.
pub fn render_ascii(p: &Pattern, style: Style<'_>) -> Result<String> {
    let panels = panels(p)?;
    let mut columns: Vec<Vec<String>> = Vec::new();
    for (z, panel) in &panels {
        let (wd, ht) = panel_size(panel);
        let mut lines = Vec::new();
        match style {
            Style::Labels(t) => {
                let width = (0..ht)
                    .flat_map(|y| (0..wd).map(move |x| (x, y)))
                    .map(|(x, y)| t.name(cell_at(p, panel, *z, x, y).1).len())
                    .max()
                    .unwrap_or(1);
                for y in 0..ht {
                    let row: Vec<String> = (0..wd)
                        .map(|x| format!("{:>width$}", t.name(cell_at(p, panel, *z, x, y).1)))
                        .collect();
                    lines.push(row.join(" "));
                }
            }
            Style::Wires(w) => {
                for y in 0..ht {
                    let mut rows = [String::new(), String::new(), String::new()];
                    for x in 0..wd {
                        let (c, s) = cell_at(p, panel, *z, x, y);
                        let cell = ascii_wire_cell(w, s, z.is_some() && crosses(w, p, &c));
                        for (r, part) in rows.iter_mut().zip(cell) {
                            r.push_str(&part);
                        }
                    }
                    lines.extend(rows);
                }
            }
        }
        let title = panel_title(*z);
        if !title.is_empty() {
            lines.insert(0, title);
        }
        columns.push(lines);
    }
    let height = columns.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| c.iter().map(|l| l.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for i in 0..height {
        let parts: Vec<String> = columns
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{:<w$}", c.get(i).map(String::as_str).unwrap_or("")))
            .collect();
        out.push_str(parts.join(" | ").trim_end());
        out.push('\n');
    }
    Ok(out)
}

const CELL: usize = 24;
const PANEL_GAP: usize = 24;
const TITLE: usize = 18;
const BLANK_FILLS: [&str; 6] = ["#f4f4f4", "#dde8f4", "#f4e6d8", "#e2f0dc", "#eee0f2", "#f2f0d6"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG document with one panel per layer.
pub fn render_svg(p: &Pattern, style: Style<'_>) -> Result<String> {
    let panels = panels(p)?;
    let titled = panels.iter().any(|(z, _)| z.is_some());
    let top = if titled { TITLE } else { 0 };
    let sizes: Vec<(usize, usize)> = panels.iter().map(|(_, b)| panel_size(b)).collect();
    let width = sizes.iter().map(|s| s.0 * CELL).sum::<usize>() + PANEL_GAP * (panels.len() - 1);
    let height = top + sizes.iter().map(|s| s.1 * CELL).max().unwrap_or(0);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    let mut x0 = 0;
    for ((z, panel), &(wd, ht)) in panels.iter().zip(&sizes) {
        if let Some(z) = z {
            writeln!(out, r#"<text x="{x0}" y="{}" font-family="monospace" font-size="12">z = {z}</text>"#, TITLE - 5).unwrap();
        }
        for y in 0..ht {
            for x in 0..wd {
                let (c, s) = cell_at(p, panel, *z, x, y);
                let (cx, cy) = (x0 + x * CELL, top + y * CELL);
                let (mx, my) = (cx + CELL / 2, cy + CELL / 2);
                let fill = match style {
                    Style::Wires(w) if w.is_blank(s) => BLANK_FILLS[(blank_index(w, s) - 1) % BLANK_FILLS.len()],
                    _ => "#ffffff",
                };
                writeln!(
                    out,
                    r##"<rect x="{cx}" y="{cy}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#bbbbbb" stroke-width="0.5"/>"##
                )
                .unwrap();
                match style {
                    Style::Wires(w) if !w.is_blank(s) => {
                        let pr = w.profile(s);
                        let ends = [
                            (pr.left, cx, my),
                            (pr.right, cx + CELL, my),
                            (pr.top, mx, cy),
                            (pr.bottom, mx, cy + CELL),
                        ];
                        for (on, ex, ey) in ends {
                            if on {
                                writeln!(
                                    out,
                                    r##"<line x1="{mx}" y1="{my}" x2="{ex}" y2="{ey}" stroke="#202020" stroke-width="3" stroke-linecap="round"/>"##
                                )
                                .unwrap();
                            }
                        }
                        if z.is_some() && crosses(w, p, &c) {
                            writeln!(out, r##"<circle cx="{mx}" cy="{my}" r="4" fill="#c03030"/>"##).unwrap();
                        }
                    }
                    _ => {
                        writeln!(
                            out,
                            r#"<text x="{mx}" y="{}" font-family="monospace" font-size="10" text-anchor="middle">{}</text>"#,
                            my + 4,
                            escape(style.symbols().name(s))
                        )
                        .unwrap();
                    }
                }
            }
        }
        x0 += wd * CELL + PANEL_GAP;
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render(p: &Pattern, style: Style<'_>, format: RenderFormat) -> Result<String> {
    match format {
        RenderFormat::Ascii => render_ascii(p, style),
        RenderFormat::Svg => render_svg(p, style),
    }
}
