//! Gindikin Gamma and Beta functions of the cone Ω_k and the closed-form
//! action of fractional integration and Δ(∂) on powers of Δ.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::special::{gamma, gamma_complex, is_gamma_pole, ln_gamma};
use crate::algebra::FieldTag;
use crate::error::{Error, Result};

/// Real dimension `N = k + (d/2) k (k − 1)` of the self-adjoint matrices.
pub fn cone_dim(field: FieldTag, k: usize) -> usize {
    k + field.d() * k * (k.saturating_sub(1)) / 2
}

/// `N / k = 1 + (d/2)(k − 1)`, the exponent of the invariant measure.
pub fn n_over_k(field: FieldTag, k: usize) -> f64 {
    1.0 + field.half_d() * (k as f64 - 1.0)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("rank k must be at least 1".into()));
    }
    Ok(())
}

fn check_poles(field: FieldTag, k: usize, lambda: f64) -> Result<()> {
    for j in 1..=k {
        let arg = lambda - field.half_d() * (j as f64 - 1.0);
        if is_gamma_pole(arg) {
            return Err(Error::Domain(format!(
                "Gamma_Omega({lambda}) has a pole: factor j={j} is Gamma({arg})"
            )));
        }
    }
    Ok(())
}

/// `Γ_Ω(λ) = (2π)^{(N−k)/2} ∏_{j=1}^{k} Γ(λ − (d/2)(j − 1))`.
pub fn gamma_cone(field: FieldTag, k: usize, lambda: f64) -> Result<f64> {
    check_k(k)?;
    check_poles(field, k, lambda)?;
    let n = cone_dim(field, k);
    let mut v = (2.0 * PI).powf((n - k) as f64 / 2.0);
    for j in 1..=k {
        v *= gamma(lambda - field.half_d() * (j as f64 - 1.0));
    }
    Ok(v)
}

/// `ln Γ_Ω(λ)` for `λ > (d/2)(k − 1)`, where every factor is positive.
pub fn ln_gamma_cone(field: FieldTag, k: usize, lambda: f64) -> Result<f64> {
    check_k(k)?;
    let lo = field.half_d() * (k as f64 - 1.0);
    if lambda <= lo {
        return Err(Error::Domain(format!("ln Gamma_Omega needs lambda > {lo}, got {lambda}")));
    }
    let n = cone_dim(field, k);
    let mut v = (n - k) as f64 / 2.0 * (2.0 * PI).ln();
    for j in 1..=k {
        v += ln_gamma(lambda - field.half_d() * (j as f64 - 1.0));
    }
    Ok(v)
}

/// Complex-argument variant of [`gamma_cone`].
pub fn gamma_cone_complex(field: FieldTag, k: usize, lambda: Complex64) -> Result<Complex64> {
    check_k(k)?;
    if lambda.im == 0.0 {
        check_poles(field, k, lambda.re)?;
    }
    let n = cone_dim(field, k);
    let mut v = Complex64::new((2.0 * PI).powf((n - k) as f64 / 2.0), 0.0);
    for j in 1..=k {
        v *= gamma_complex(lambda - field.half_d() * (j as f64 - 1.0));
    }
    Ok(v)
}

/// `B_Ω(λ, μ) = Γ_Ω(λ) Γ_Ω(μ) / Γ_Ω(λ + μ)`, defined for `λ, μ > N/k − 1`.
pub fn beta_cone(field: FieldTag, k: usize, lambda: f64, mu: f64) -> Result<f64> {
    check_k(k)?;
    let lo = n_over_k(field, k) - 1.0;
    if !(lambda > lo && mu > lo) {
        return Err(Error::Domain(format!("B_Omega({lambda}, {mu}) needs both arguments > N/k - 1 = {lo}")));
    }
    Ok((ln_gamma_cone(field, k, lambda)? + ln_gamma_cone(field, k, mu)? - ln_gamma_cone(field, k, lambda + mu)?).exp())
}

/// Coefficient `c` in `I^λ[Δ^{μ − N/k}] = c · Δ^{λ + μ − N/k}`, namely
/// `Γ_Ω(μ) / Γ_Ω(λ + μ)`. Requires `μ > N/k − 1`; on this power class the
/// formula is the analytic continuation in λ, so any λ for which
/// `Γ_Ω(λ + μ)` is finite is accepted.
pub fn frac_integral_power(field: FieldTag, k: usize, lambda: f64, mu: f64) -> Result<f64> {
    check_k(k)?;
    let lo = n_over_k(field, k) - 1.0;
    if !(mu > lo) {
        return Err(Error::Domain(format!(
            "fractional integral of a Delta power needs mu > N/k - 1 = {lo}, got {mu}"
        )));
    }
    if lambda + mu > lo {
        return Ok((ln_gamma_cone(field, k, mu)? - ln_gamma_cone(field, k, lambda + mu)?).exp());
    }
    Ok(gamma_cone(field, k, mu)? / gamma_cone(field, k, lambda + mu)?)
}

/// Coefficient of `Δ^{λ − m}` in `Δ(∂)^m Δ^λ`:
/// `∏_{i=0}^{m−1} ∏_{j=1}^{k} (λ − i + (d/2)(j − 1))`.
pub fn capelli_coefficient(field: FieldTag, k: usize, lambda: f64, m: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..m {
        for j in 1..=k {
            c *= lambda - i as f64 + field.half_d() * (j as f64 - 1.0);
        }
    }
    c
}

/// Polar-coordinate constant `C_0(n, k) = π^{dnk/2} / Γ_Ω(dn/2)` on `M_{n,k}`.
pub fn c0(field: FieldTag, n: usize, k: usize) -> Result<f64> {
    let d = field.d() as f64;
    let a = d * n as f64 / 2.0;
    Ok((d * (n * k) as f64 / 2.0 * PI.ln() - ln_gamma_cone(field, k, a)?).exp())
}
