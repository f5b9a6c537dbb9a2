//! Exact-arithmetic workbench for the dihedral Calogero-Moser singularities.
//!
//! Everything here is computed over exact fields (rationals, cyclotomic
//! fields, quadratic extensions); no floating point is used anywhere.
//! The crate is organised around a small exact-computation kernel
//! ([`scalar`], [`poly`], [`series`], [`matrix`], [`groebner`]) and a set of
//! verification suites that certify the algebraic identities defining the
//! quotient variety, its Poisson deformation, the blowup charts, the
//! associated quiver-variety combinatorics and the Slodowy-slice model.

pub mod dihedral;
pub mod groebner;
pub mod hilbert;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod quiver;
pub mod report;
pub mod scalar;
pub mod series;
pub mod sl2rep;
pub mod slodowy;
pub mod varieties;

pub use report::{CheckResult, Status, VerificationReport};

use thiserror::Error;

/// Errors surfaced by the exact kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unbound variable `{0}` in substitution")]
    UnboundVariable(String),
    #[error("coefficient-field mismatch: {0}")]
    FieldMismatch(String),
    #[error("variable table mismatch: {0}")]
    VarMismatch(String),
    #[error("budget exceeded in {0}")]
    BudgetExceeded(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
