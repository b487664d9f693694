//! Exact and numeric engine for determinantal and Pfaffian point processes on
//! finite sets.

pub mod abstract_points;
pub mod error;
pub mod eynard_mehta;
pub mod json;
pub mod linalg;
pub mod oracle;
pub mod point_process;
pub mod random;
pub mod scalar;
pub mod schur_process;
pub mod suites;
pub mod symfunc;

pub use error::{Error, Result};
pub use scalar::{Scalar, C, Q};
