//! Exact linear algebra and verification tools for graded spin chains with
//! length-changing supersymmetry.
//!
//! The crate builds supersymmetry generators that map a periodic chain of
//! length `L` to one of length `L + 1`, together with the Hamiltonians,
//! R-matrices and transfer matrices they interlace. Everything desk-scale is
//! done in exact rational arithmetic; floating point enters only for spectra
//! and for explicitly deformed models.

pub mod error;
pub mod graded;
pub mod chain;
pub mod classifier;
pub mod rep;
pub mod rmatrix;
pub mod scalar;
pub mod spectrum;
pub mod supercharge;
pub mod verify;

pub use error::Error;
pub use graded::{BilinearForm, GradedOperator, GradedSpace, Parity, Poly, PolyOperator, Vector};
pub use scalar::{Mode, Scalar, FLOAT_ZERO_TOL};
