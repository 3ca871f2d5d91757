//! Cocycles on asymptotic pairs of a configuration space: interactions and their cocycles,
//! Gibbs specifications, and the NS, VS and Sullivan norms.

pub mod cocycle;
pub mod dual;
pub mod error;
pub mod interaction;
pub mod norms;
pub mod random;
pub mod spec;

pub use cocycle::{
    eval_configs, eval_pair, near, Cocycle, Combination, GeneratorCocycle, GeneratorFn, Patched,
    PatternCount, ZeroCocycle,
};
pub use dual::{dual_ns_norm, ShapeBudget};
pub use error::{CocycleError, Result};
pub use interaction::{decode_word, encode_word, Entry, Interaction, Mode};
pub use norms::{norm_ns, norm_sullivan, norm_vs, Bound, NormReport, SullivanMethod};
pub use random::WindowSampler;
pub use spec::{cocycle_from_spec, GibbsSpec, Kernel, Specification};
