//! Exact linear algebra over finite abelian groups: the computational
//! substrate for everything else in the crate.

pub mod group;
pub mod hom;
pub mod snf;

pub use group::{Element, FinAbGroup};
pub use hom::{
    canonicalize, direct_sum, groups_isomorphic, hom_enumerate, is_exact, pair, pullback,
    quotient, subgroup, DirectSum, GroupHom, Pullback,
};
pub use snf::{smith_normal_form, IntMat, Snf};
