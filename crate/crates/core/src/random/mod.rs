//! Seeded sampling of Haar unitaries, Stiefel frames and interval points,
//! and the Monte Carlo expectation engine.

pub mod beta;
pub mod cone_samplers;
pub mod haar;
pub mod mc;
pub mod rng;

pub use beta::{sample_matrix_beta, BetaMatrixSample, MatrixBetaSampler};
pub use cone_samplers::{BartlettSampler, IntervalBoxSampler};
pub use haar::{sample_haar_stiefel, sample_haar_unitary};
pub use mc::{mc_expect, mc_expect_vec, z_score, McConfig, McEstimate, McVecEstimate};
pub use rng::{derive_seed, parse_seed, stream_rng, McRng};
