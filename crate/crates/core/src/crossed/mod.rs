//! Crossed bimodules, their strict morphisms and homotopies, and the
//! truncation constructions from chain DGAs and simplicial rings.

pub mod dga;
pub mod moore;
pub mod morphism;
pub mod xbm;

pub use dga::{dga_from_crossed, dga_two_term, truncate_dga, ChainDga};
pub use moore::{truncate_moore, TruncatedSimplicialRing};
pub use morphism::{
    enumerate_morphisms, find_crossed_isos, hochschild_delta, hom_groupoid, induced_pi0,
    induced_pi1, HomGroupoid, Homotopy, XbmMorphism,
};
pub use xbm::{crossed_extension, from_ring, CrossedBimodule, CrossedExtension};
