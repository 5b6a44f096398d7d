//! Conditionally exactly solvable SUSY partners of the linear and radial
//! harmonic oscillator.

pub mod cli;
pub mod error;
pub mod families;
pub mod ladder_algebra;
pub mod numerics;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use families::{CesSystem, Family, FamilySpec};
