//! Nearest-neighbour shifts of finite type: definitions, local validity,
//! enumeration, completion search and file formats.

mod definition;
mod document;
mod enumerate;
mod pattern;
mod pattern_file;
mod rule;
pub mod search;
mod symbols;

pub use definition::{is_locally_valid, SftDefinition};
pub use document::{load_sft, load_sft_file, save_sft, DEFINITION_SCHEMA};
pub use enumerate::{
    all_patterns, count_patterns, count_patterns_backtracking, count_patterns_with_cap,
    enumerate_patterns, for_each_pattern, PatternEnumeration, PatternIter, DEFAULT_FRONTIER_CAP,
};
pub use pattern::Pattern;
pub use pattern_file::{format_pattern, parse_pattern};
pub use rule::AxisRule;
pub use search::{extend_to_window, CompletionProblem, SearchBudget, SearchOutcome};
pub(crate) use symbols::members;
pub use symbols::{Symbol, SymbolSet, SymbolTable, MAX_SYMBOLS};
