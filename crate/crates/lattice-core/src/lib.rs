//! Lattice geometry and configuration spaces over Z^d (d = 1, 2): sites, shapes, patterns,
//! periodic-plus-patch configurations, spaces given by forbidden patterns, and window-bounded
//! checkers for the topological Markov, pivot, safe-symbol and single-site-fill properties.

pub mod checks;
pub mod config;
pub mod config_file;
pub mod enumerate;
pub mod error;
pub mod pattern;
pub mod shape;
pub mod sft;
pub mod site;

pub use checks::{
    block_path, check_tmp_window, derive_sft_from_tmp_safe, fill_single_site, memory_set,
    pivot_path, replay, zeta, zeta_symbol, DeriveError, MoveOrder, TmpCheck,
};
pub use config_file::{config_from_json, config_to_json};
pub use config::{disagreement_in, AsymptoticPair, Configuration, Overlay, Shifted, View};
pub use enumerate::{language, ContainChecks, Enumerator};
pub use error::{LatticeError, Result};
pub use pattern::Pattern;
pub use shape::Shape;
pub use sft::{Asserted, SftSpace};
pub use site::Site;

/// Default cap on search nodes for exhaustive enumerations.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// `local_admissible` as a free function.
pub fn local_admissible(p: &Pattern, sft: &SftSpace) -> Result<bool> {
    sft.local_admissible(p)
}
