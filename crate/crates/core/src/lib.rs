//! Intersecting uniform set families with a prescribed shadow degree:
//! family primitives, named constructions, exact search, exact bounds and
//! executable checks of the constructive proof steps.

pub mod bounds;
pub mod constructions;
mod error;
pub mod family;
pub mod format;
pub mod permutations;
pub mod proofcheck;
pub mod search;

pub use error::{Error, Result};
pub use family::{GroundSetParams, KSet, SetFamily, SunflowerWitness, MAX_N};
pub use format::{parse_family, write_family};
