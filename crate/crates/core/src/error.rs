use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("enumeration bound exceeded: {candidates} candidates > bound {bound}")]
    BoundExceeded { candidates: u128, bound: u64 },

    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("arrows not composable: {0}")]
    NotComposable(String),

    #[error("middle crossed bimodules differ: {0}")]
    MiddleMismatch(String),

    #[error("objects live over different parents: {0}")]
    MismatchedParent(String),

    #[error("cocycles live over different covers: {0}")]
    MismatchedCover(String),

    #[error("invalid DGA: {0}")]
    InvalidDga(String),

    #[error("invalid simplicial ring: {0}")]
    InvalidSimplicial(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on exhaustive searches (pairs scanned, candidate maps, ...).
pub const DEFAULT_BOUND: u64 = 1 << 16;

pub fn check_bound(candidates: u128, bound: u64) -> Result<()> {
    if candidates > bound as u128 {
        Err(Error::BoundExceeded { candidates, bound })
    } else {
        Ok(())
    }
}
