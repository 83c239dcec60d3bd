//! Radon transform on real, complex and quaternionic Grassmannians.

// `!(x > lo)` is used on purpose so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod cone;
pub mod error;
pub mod geometry;
pub mod radon;
pub mod random;
pub mod suite;

pub use algebra::{FieldTag, HermMatrix, Mat, MatK, Quaternion, Scalar};
pub use num_complex::Complex64;
pub use error::{Error, Result};
