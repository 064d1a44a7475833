//! Extendibility and gluing witnesses for the wire shifts, finite-window
//! gluing and filling checks for general shifts, and the exact pattern-count
//! bound for full shifts.

mod filling;
mod frame;
mod gluing;
mod pattern_bound;

pub use filling::{check_ufp, fill, FillingCertificate, FillingRecord, FillingSearch};
pub use frame::{
    extend_electrical, extend_with_wire_frame, frame_in_window, frame_layers_in_window, inflate_with_wires,
    Orientation,
};
pub use gluing::{
    check_block_gluing, check_cube_gluing, check_frame_gluing, check_frame_gluing_sampled, glue_by_search, glue_with_frames,
    offsets_at_distance, CertificateMode, GluingCertificate, GluingRecord, GluingSearch, Verdict,
};
pub use pattern_bound::{count_avoiding, verify_pattern_bound, PatternBoundReport, AVOIDANCE_STATE_CAP};
