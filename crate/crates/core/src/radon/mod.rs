//! The Radon transform on Grassmannians, the operators `𝓣_b` and `𝓦_b`,
//! the profile `Φ` and the rank-one inversion pipeline.

pub mod constants;
pub mod function;
pub mod inversion;
pub mod operators;
pub mod profile;
pub mod roundtrip;

pub use constants::{c1, c2, c3, c3_printed, c_eps};
pub use function::{FrameFn, Invariance, InvariantFunction};
pub use inversion::{invert_k1, InversionOptions, InversionResult};
pub use operators::{radon, t_op, w_op, Radon, TOperator, WOperator};
pub use profile::{phi_profile, profile_exponent, ProfileOptions, ProfileSamples};
pub use roundtrip::{round_trip_k1, RoundTripConfig, RoundTripReport, TestFunction};
