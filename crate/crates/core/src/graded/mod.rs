//! Graded vector spaces, sign-aware sparse operators and polynomial
//! operators over them.

pub mod form;
pub mod linsolve;
pub mod op;
pub mod poly;
pub mod space;

pub use form::BilinearForm;
pub use op::{GradedOperator, Vector};
pub use poly::{Poly, PolyOperator, PolyVector};
pub use space::{decode_multi, encode_multi, GradedSpace, Parity};
