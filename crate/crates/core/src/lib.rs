//! Exact rational six-vertex partition functions.
//!
//! Every quantity is computed two ways: by direct contraction of the
//! R-matrix products that define it ([`contraction`]) and by closed formulas
//! ([`closed_forms`], [`efp`]). Both use exact rationals throughout, so the
//! identities between them are checked with structural equality.

pub mod closed_forms;
pub mod contraction;
pub mod efp;
pub mod error;
mod fraction_free;
pub mod linalg;
pub mod sampler;
pub mod scalar;
pub mod verify;
pub mod vertex;

pub use contraction::{ModelParams, StateVector};
pub use efp::EfpParams;
pub use error::{Error, Result};
pub use scalar::{format_rational, parse_rational, Rational};
pub use vertex::{BoundaryVector, BoundaryVectors, RMatrix, Side};
