//! Strip transfer operators, Perron values and entropy bounds.

mod bounds;
mod corner;
mod operator;
mod perron;
mod projection;

pub use bounds::{entropy_bounds, EntropyBound, EntropyUnit, StripMethod};
pub use corner::{corner_choice_profile, corner_entropy_upper_bound, CornerProfile, CornerRecord};
pub use operator::{TransferOperator, DEFAULT_STATE_CAP};
pub use perron::{perron_eigenvalue, PerronEstimate, PerronOptions};
pub use projection::{
    count_line_words, projectional_entropy_1d, ProjectionEstimate, ProjectionMethod, ProjectionOptions,
};
