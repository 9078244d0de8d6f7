//! Crossed bimodules, butterflies between them, and the induced
//! categorical-ring structures over finite Z-algebras.
//!
//! Everything is exact integer arithmetic on finite presentations: groups
//! are moduli vectors, maps are integer matrices, rings and bimodules are
//! structure-constant tables extended bilinearly. All values are immutable
//! after construction and all operations are pure.

pub mod algebra;
pub mod butterfly;
pub mod catring;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod census;
pub mod cocycle;
pub mod report;
pub mod torsor;
pub mod zmod;

pub use error::{Error, Result, DEFAULT_BOUND};
pub use report::{Report, Violation};
