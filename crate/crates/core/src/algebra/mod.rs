//! Finite unital rings, bimodules, ring homomorphisms, ideals, and algebra
//! extensions given by structure-constant tables on generators.

pub mod bimodule;
pub mod extension;
pub mod hom;
pub mod ring;

pub use bimodule::{BilinearMap, Bimodule};
pub use extension::{ideal_generated, mod4_extension, AlgExtension, SplitMode};
pub use hom::{restrict_bimodule, RingHom};
pub use ring::{product_ring, quotient_ring, square_zero_extension, subring, FinRing};
