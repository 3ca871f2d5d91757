//! Marker words: randomized search with exhaustive certification, the Hamming marker
//! interaction `Φ^(k)`, its cocycle `ψ_k`, and sampled checks of their properties.

pub mod checks;
pub mod error;
pub mod marker;
pub mod params;
pub mod report;
pub mod search;
pub mod verify;
pub mod word;

pub use checks::{
    check_ci1, check_safe_interval, check_safe_tapes, single_site_psi, sullivan_sample, Ci1Report,
    SafeIntervalReport, SullivanSample, SULLIVAN_BOUND,
};
pub use error::{MarkerError, Result};
pub use marker::{
    marker_interaction, marker_interaction_site_indexed, marker_pair, phi_at, phi_word, psi_k, MarkerCocycle,
};
pub use params::{Certificate, MarkerData, MarkerParams};
pub use report::{nonsurjectivity_report, report_row, ReportBudget, ReportRow};
pub use search::{find_threshold, search_markers, DEFAULT_SHAPE_BUDGET};
pub use verify::{condition_a, condition_b, delta_count, interval_extreme, verify_markers};
pub use word::{Tape, Word};
