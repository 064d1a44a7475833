//! Toolkit for nearest-neighbour multidimensional shifts of finite type and
//! the wire shift family: exact pattern counting, strip transfer operators
//! and entropy bounds, constructive mixing witnesses, and structural checks
//! such as periodic points and degeneracy along sublattices.

pub mod claims;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod mixing;
pub mod render;
pub mod report;
pub mod sft;
pub mod structure;
pub mod transfer;
pub mod wire;

pub use error::{Error, Result};
