//! Cone layer against closed forms obtained independently: Gamma integrals
//! reduced by hand in coordinates, Euler's Beta integral and Cayley's
//! determinant identity.

use std::f64::consts::{PI, SQRT_2};

use grassmann_radon::cone::{
    beta_cone, capelli_coefficient, cayley_calibrate, delta_polynomial, frac_integral_mc, frac_integral_power,
    frac_integral_quad_k1, frac_integral_quad_k1_weighted, gamma_cone, n_over_k,
};
use grassmann_radon::algebra::{delta_det, HermMatrix};
use grassmann_radon::random::McConfig;
use grassmann_radon::{FieldTag, Quaternion};
use proptest::prelude::*;
use statrs::function::beta::beta;
use statrs::function::gamma::gamma;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    // 2x2 real: integrate b over (-sqrt(ac), sqrt(ac)), then a and c;
    // the trace-form measure contributes sqrt 2.
    #[test]
    fn real_rank_two_gamma_by_coordinates(lambda in 0.6..8.0f64) {
        let want = SQRT_2 * beta(0.5, lambda - 0.5) * gamma(lambda).powi(2);
        prop_assert!(rel(gamma_cone(FieldTag::Real, 2, lambda).unwrap(), want) < 1e-10);
    }

    // 2x2 complex: b ranges over a disc of radius sqrt(ac), measure factor 2.
    #[test]
    fn complex_rank_two_gamma_by_coordinates(lambda in 1.1..8.0f64) {
        let want = 2.0 * PI * gamma(lambda).powi(2) / (lambda - 1.0);
        prop_assert!(rel(gamma_cone(FieldTag::Complex, 2, lambda).unwrap(), want) < 1e-10);
    }

    #[test]
    fn rank_one_cone_functions_are_classical(lambda in 0.2..6.0f64, mu in 0.2..6.0f64) {
        for f in [FieldTag::Real, FieldTag::Complex, FieldTag::Quaternion] {
            prop_assert!(rel(gamma_cone(f, 1, lambda).unwrap(), gamma(lambda)) < 1e-10);
            prop_assert!(rel(beta_cone(f, 1, lambda, mu).unwrap(), beta(lambda, mu)) < 1e-10);
        }
    }

    // Euler: Gamma(lambda)^-1 int_0^s (s-t)^(lambda-1) t^mu dt = Gamma(mu+1)/Gamma(lambda+mu+1) s^(lambda+mu).
    #[test]
    fn rank_one_quadrature_of_powers(lambda in 0.3..4.0f64, mu in 0.0..4.0f64, s in 0.1..3.0f64) {
        let want = gamma(mu + 1.0) / gamma(lambda + mu + 1.0) * s.powf(lambda + mu);
        let weighted = frac_integral_quad_k1_weighted(|_| 1.0, lambda, mu, s, 32).unwrap();
        prop_assert!(rel(weighted, want) < 1e-10);
        let m = mu.round();
        let plain = frac_integral_quad_k1(|t| t.powi(m as i32), lambda, s).unwrap();
        let want_int = gamma(m + 1.0) / gamma(lambda + m + 1.0) * s.powf(lambda + m);
        prop_assert!(rel(plain, want_int) < 1e-10);
        let coef = frac_integral_power(FieldTag::Real, 1, lambda, mu + 1.0).unwrap();
        prop_assert!(rel(coef * s.powf(lambda + mu), want) < 1e-10);
    }

    #[test]
    fn power_coefficients_compose(lambda in 0.1..3.0f64, nu in 0.1..3.0f64, extra in 0.01..3.0f64) {
        for (f, k) in [(FieldTag::Real, 3), (FieldTag::Complex, 2), (FieldTag::Quaternion, 2)] {
            let mu = n_over_k(f, k) - 1.0 + extra;
            let two_steps = frac_integral_power(f, k, lambda, mu).unwrap() * frac_integral_power(f, k, nu, lambda + mu).unwrap();
            let one_step = frac_integral_power(f, k, lambda + nu, mu).unwrap();
            prop_assert!(rel(two_steps, one_step) < 1e-11);
        }
    }
}

/// Cayley: det(d) det^p = p (p + 1/2) det^(p-1) on real symmetric 2x2
/// (off-diagonal derivative halved), p (p + 1) det^(p-1) on complex 2x2.
#[test]
fn cayley_identity_on_determinant_powers() {
    for (field, shift) in [(FieldTag::Real, 0.5), (FieldTag::Complex, 1.0)] {
        let op = cayley_calibrate(field, 2).unwrap();
        let delta = delta_polynomial(field, 2);
        for p in 1..=4u32 {
            let lhs = op.apply_poly(&delta.pow(p));
            let c = p as f64 * (p as f64 + shift);
            assert!((capelli_coefficient(field, 2, p as f64, 1) - c).abs() < 1e-12);
            let rhs = delta.pow(p - 1).scale(c);
            let diff = lhs.sub(&rhs);
            let probe: Vec<f64> = (0..delta.nvars()).map(|i| 0.3 + 0.17 * i as f64).collect();
            assert!(diff.eval(&probe).abs() < 1e-9 * rhs.eval(&probe).abs().max(1.0), "{field:?} p={p}");
        }
    }
}

#[test]
fn monte_carlo_fractional_integral_of_a_constant() {
    let s = HermMatrix::<Quaternion>::diag(&[0.8, 0.5]);
    let lambda = 3.5;
    let nk = n_over_k(FieldTag::Quaternion, 2);
    let est = frac_integral_mc(|_| 1.0, lambda, &s, &McConfig::new(40_000, 11)).unwrap();
    let want = frac_integral_power(FieldTag::Quaternion, 2, lambda, nk).unwrap() * delta_det(&s).unwrap().powf(lambda);
    assert!(est.z_score(want).abs() < 4.0, "{} vs {want}", est.mean);
}
