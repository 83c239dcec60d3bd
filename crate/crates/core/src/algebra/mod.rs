//! Scalars and matrices over ℝ, ℂ, ℍ and the spectral theory of
//! self-adjoint matrices.

pub mod herm;
pub mod jacobi;
pub mod mat;
pub mod scalar;

pub use herm::{
    complex_embed, complex_unembed, delta_det, delta_det_of, eig_herm, eigenvalues, inv_sqrt_pd, inverse_pd,
    polar_decompose, spectral_map, sqrt_psd, HermEigen, HermMatrix,
};
pub use mat::{Mat, MatK};
pub use scalar::{FieldTag, Quaternion, Scalar};
