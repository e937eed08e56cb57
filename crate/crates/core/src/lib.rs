//! Computation engine for ramification filtrations, Herbrand functions and
//! slope decompositions of representations of Galois groups of local fields
//! of positive characteristic.

pub mod checks;
pub mod corpus;
pub mod cyclo;
pub mod error;
pub mod extensions;
pub mod field;
pub mod group;
pub mod nearby;
pub mod numerics;
pub mod precision;
pub mod ramification;
pub mod reps;
pub mod series;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
