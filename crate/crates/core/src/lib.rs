//! Exact construction and verification of symmetry breaking differential
//! operators from 1-forms on `R^3` to line bundles `C_m` on `R^2`, for the
//! conformal pair `(O(4,1), O(3,1))`.
//!
//! The pipeline follows the F-method: equivariant polynomial triples are
//! built from one-variable data, the resulting F-system is reduced to six
//! ODEs, and solutions are turned back into differential operators.

pub mod diffops;
pub mod error;
pub mod exact_arith;
pub mod fsystem;
pub mod gegenbauer;
pub mod identities;
pub mod linalg;
pub mod poly;
pub mod solver;

pub use error::{Error, Result};
pub use exact_arith::{GaussianRational, Rational, GR};
