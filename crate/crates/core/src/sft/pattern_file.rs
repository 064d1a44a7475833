//! Plain text pattern grids.
//!
//! ```text
//! dim 2
//! extents 3 2
//! origin 0 0
//! 5 1 1
//! 3 2 2
//! ```
//!
//! Rows are listed top first (highest `e2` coordinate), each row left to
//! right. Three-dimensional patterns list one grid per `e3` layer, lowest
//! layer first, separated by blank lines. `origin` is optional and `#` starts
//! a comment.

use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};

use super::pattern::Pattern;
use super::symbols::SymbolTable;

fn bad(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn header<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<Vec<i64>> {
    let line = lines.next().ok_or_else(|| bad(format!("missing `{key}` line")))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(key) {
        return Err(bad(format!("expected `{key}` line, found {line:?}")));
    }
    parts
        .map(|t| t.parse::<i64>().map_err(|_| bad(format!("bad number {t:?} in `{key}`"))))
        .collect()
}

pub fn parse_pattern(text: &str, symbols: &SymbolTable) -> Result<Pattern> {
    let stripped: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .collect();
    let mut meta = stripped.iter().copied().filter(|l| !l.is_empty());
    let dim = header(&mut meta, "dim")?;
    let d = match dim.as_slice() {
        [d @ 1..=3] => *d as usize,
        _ => return Err(bad("`dim` must be 1, 2 or 3")),
    };
    let extents = header(&mut meta, "extents")?;
    if extents.len() != d || extents.iter().any(|&e| e < 1) {
        return Err(bad(format!("`extents` needs {d} positive integers")));
    }
    let extents: Vec<usize> = extents.iter().map(|&e| e as usize).collect();

    // Skip the header lines, remembering whether an origin was given.
    let mut body = stripped.iter().copied().skip_while(|l| l.is_empty());
    body.next();
    let mut body = body.skip_while(|l| l.is_empty());
    body.next();
    let mut body: Vec<&str> = body.collect();
    let mut origin = Coord::zeros(d);
    if let Some(first) = body.iter().position(|l| !l.is_empty()) {
        if body[first].starts_with("origin") {
            let o = header(&mut std::iter::once(body[first]), "origin")?;
            if o.len() != d {
                return Err(bad(format!("`origin` needs {d} integers")));
            }
            origin = Coord::new(o);
            body.remove(first);
        }
    }

    // Group non-empty lines into layers separated by blank lines.
    let mut layers: Vec<Vec<&str>> = Vec::new();
    let mut current = Vec::new();
    for l in body {
        if l.is_empty() {
            if !current.is_empty() {
                layers.push(std::mem::take(&mut current));
            }
        } else {
            current.push(l);
        }
    }
    if !current.is_empty() {
        layers.push(current);
    }
    let (nx, ny, nz) = (
        extents[0],
        extents.get(1).copied().unwrap_or(1),
        extents.get(2).copied().unwrap_or(1),
    );
    if d < 3 && layers.len() > 1 {
        layers = vec![layers.concat()];
    }
    if layers.len() != nz {
        return Err(bad(format!("expected {nz} layers, found {}", layers.len())));
    }
    let block = Block::with_origin(origin, &extents)?;
    let mut cells = vec![0; nx * ny * nz];
    for (z, rows) in layers.iter().enumerate() {
        if rows.len() != ny {
            return Err(bad(format!("expected {ny} rows per layer, found {}", rows.len())));
        }
        for (r, row) in rows.iter().enumerate() {
            let y = ny - 1 - r;
            let tokens: Vec<&str> = row.split_whitespace().collect();
            if tokens.len() != nx {
                return Err(bad(format!("expected {nx} symbols per row, found {}", tokens.len())));
            }
            for (x, t) in tokens.iter().enumerate() {
                let s = symbols
                    .lookup(t)
                    .ok_or_else(|| bad(format!("unknown symbol {t:?}")))?;
                cells[x + nx * (y + ny * z)] = s;
            }
        }
    }
    Pattern::new(block, cells)
}

pub fn format_pattern(p: &Pattern, symbols: &SymbolTable) -> Result<String> {
    let b = p.block();
    let d = b.dim();
    if d > 3 {
        return Err(Error::InvalidArgument("pattern files hold at most 3 dimensions".into()));
    }
    let ext = b.extents();
    let (nx, ny, nz) = (ext[0], ext.get(1).copied().unwrap_or(1), ext.get(2).copied().unwrap_or(1));
    let width = symbols.names().iter().map(String::len).max().unwrap_or(1);
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!(
        "dim {d}\nextents {}\norigin {}\n",
        join(&ext),
        b.lo().components().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    );
    for z in 0..nz {
        if z > 0 {
            out.push('\n');
        }
        for y in (0..ny).rev() {
            let row: Vec<String> = (0..nx)
                .map(|x| format!("{:<width$}", symbols.name(p.cells()[x + nx * (y + ny * z)])))
                .collect();
            out.push_str(row.join(" ").trim_end());
            out.push('\n');
        }
    }
    Ok(out)
}
