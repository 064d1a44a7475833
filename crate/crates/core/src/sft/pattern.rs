use crate::error::{Error, Result};
use crate::lattice::{Block, Coord};

use super::symbols::Symbol;

/// Total assignment of symbols to the cells of a block, stored in block index
/// order (axis 0 fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    block: Block,
    cells: Vec<Symbol>,
}

impl Pattern {
    pub fn new(block: Block, cells: Vec<Symbol>) -> Result<Self> {
        let v = block.volume()?;
        if v != cells.len() as u64 {
            return Err(Error::InvalidBlock(format!(
                "block {block} has {v} cells but {} symbols were given",
                cells.len()
            )));
        }
        Ok(Pattern { block, cells })
    }

    pub fn filled(block: Block, s: Symbol) -> Self {
        let n = block.len();
        Pattern {
            block,
            cells: vec![s; n],
        }
    }

    pub fn single(at: Coord, s: Symbol) -> Self {
        Pattern {
            block: Block::singleton(at),
            cells: vec![s],
        }
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Symbol> {
        self.cells
    }

    pub fn get(&self, c: &Coord) -> Option<Symbol> {
        self.block.index_of(c).map(|i| self.cells[i])
    }

    pub fn set(&mut self, c: &Coord, s: Symbol) -> Result<()> {
        let i = self.block.index_of(c).ok_or_else(|| Error::NotContained {
            inner: c.to_string(),
            outer: self.block.to_string(),
        })?;
        self.cells[i] = s;
        Ok(())
    }

    /// Restriction to a sub-block.
    pub fn restrict(&self, sub: &Block) -> Result<Pattern> {
        if !self.block.contains_block(sub) {
            return Err(Error::NotContained {
                inner: sub.to_string(),
                outer: self.block.to_string(),
            });
        }
        let cells = sub
            .iter()
            .map(|c| self.cells[self.block.index_of(&c).expect("contained")])
            .collect();
        Ok(Pattern {
            block: sub.clone(),
            cells,
        })
    }

    pub fn translate(&self, offset: &Coord) -> Pattern {
        Pattern {
            block: self.block.translate(offset),
            cells: self.cells.clone(),
        }
    }

    /// Copy this pattern's cells into `target` where the blocks overlap.
    pub fn paste_into(&self, target: &mut Pattern) {
        for (i, c) in self.block.iter().enumerate() {
            if let Some(j) = target.block.index_of(&c) {
                target.cells[j] = self.cells[i];
            }
        }
    }

    /// Whether `self` agrees with `other` on every cell of `other`'s block.
    pub fn agrees_with(&self, other: &Pattern) -> bool {
        other
            .block
            .iter()
            .zip(&other.cells)
            .all(|(c, &s)| self.get(&c) == Some(s))
    }
}
