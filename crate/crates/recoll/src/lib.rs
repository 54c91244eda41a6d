//! Finitely presented functors over finite-dimensional algebras.
//!
//! Algebras are given by quivers with admissible relations over a prime field.
//! On top of exact linear algebra the crate builds the module category, the
//! endomorphism algebra of the radical-layer generator `⊕ Λ/J^i`, categories of
//! finitely presented contravariant and covariant functors on `add(gen)`, the
//! functors relating them to modules, and bounded complexes over both sides.
//! Every structural claim is checked numerically by the `verify` suites.

pub mod aalgebra;
pub mod algebra;
pub mod cofun;
pub mod corpus;
pub mod derived;
pub mod exactla;
pub mod fpfun;
pub mod io;
pub mod modcat;
pub mod report;
pub mod subcat;
pub mod verify;

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
