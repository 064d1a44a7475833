//! Fixed and periodic points, finite-window projections onto sublattices,
//! degeneracy witnesses and full-entropy subsystems.

mod degeneracy;
mod periodic;
mod probe;
mod projection;
mod subsystem;

pub use degeneracy::{
    degeneracy_witness, verify_degeneracy_witness, DegeneracyReport, DegeneracyVerdict, DEGENERACY_COMBINATION_CAP,
};
pub use periodic::{count_periodic_points, fixed_points, PeriodSpec, PERIODIC_NODE_CAP, PERIODIC_VOLUME_CAP};
pub use probe::{diagonal_blank_probe, DiagonalProbe};
pub use projection::{bounding_block, project_language, ProjectedLanguage, PROJECTION_CAP};
pub use subsystem::{full_entropy_subsystem_check, SubsystemConclusion, SubsystemReport};
