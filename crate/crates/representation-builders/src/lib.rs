//! Builders that turn cocycles into interactions: exact and approximate extensions on finite
//! windows, and shift-invariant averages over boxes using a fill map.

pub mod error;
pub mod fill;
pub mod kozlov;
pub mod potential;
pub mod sullivan;
pub mod windowed;

pub use error::{BuildError, Result};
pub use fill::{build_fill, check_fill_locality, is_separated, separated_partition, FillContext, LocalityReport};
pub use kozlov::{
    certify, continuity_set, epsilon_schedule, kozlov_approx, kozlov_chain, kozlov_norm_summable,
    kozlov_partial, max_over_pairs, ApproxExtension, ApproxReport, Certificate, ChainStep, KozlovChain,
    NormSummable, PartialExtension,
};
pub use potential::Potential;
pub use sullivan::{sullivan_interaction, sullivan_sweep, SweepBudget, SweepRow};
pub use windowed::WindowedSpace;
