//! Example spaces and cocycles: hard-core, colorings, sunny-side-up and full shifts; the
//! height cocycle on 3-colorings of Z²; and rigid 4- and 5-colorings.

pub mod error;
pub mod heights;
pub mod rigid;
pub mod spaces;

pub use error::{Result, ZooError};
pub use heights::{
    diamond_pair, height_cocycle, height_table, l1_ball_count, lift_heights, lift_view, pyramid_sum,
    DiamondPair, HeightCocycle, HeightLift, HeightRow,
};
pub use rigid::{rigid_coloring, rigid_coloring_witness, RigidReport};
pub use spaces::{builtin_space, coloring, full, hardcore, sunny};
