//! Exact engine for conformally invariant higher spin operators in Clifford analysis.
//!
//! Everything here is computed over the Gaussian rationals; floating point is
//! confined to the verify crate.

pub mod clifford;
pub mod conformal;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod radial;
pub mod samples;
pub mod scalar;
pub mod spaces;
pub mod steinweiss;

pub use error::{Error, Result};
