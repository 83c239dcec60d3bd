//! The symmetric cone Ω_k, its interval (0, I), Gindikin Gamma and Beta
//! functions, fractional integration and the Cayley operator Δ(∂).

pub mod cayley;
pub mod cone_samplers_ext;
pub mod frac_mc;
pub mod points;
pub mod gamma;
pub mod poly;
pub mod quad;
pub mod special;

pub use cayley::{cayley_calibrate, delta_polynomial, herm_coords, herm_from_coords, CayleyOperator};
pub use gamma::{
    beta_cone, c0, capelli_coefficient, cone_dim, frac_integral_power, gamma_cone, gamma_cone_complex, ln_gamma_cone,
    n_over_k,
};
pub use quad::{frac_integral_quad_k1, frac_integral_quad_k1_weighted, frac_integral_quad_k1_with, GaussJacobi};
pub use frac_mc::{frac_integral_mc, frac_integral_mc_with, FracIntegralSampler};
pub use points::{quad_rep, ConePoint, IntervalPoint};
