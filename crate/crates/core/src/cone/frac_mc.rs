//! Monte Carlo fractional integration
//! `(I^λ f)(s) = Γ_Ω(λ)^{-1} ∫_0^s Δ(s − t)^{λ − N/k} f(t) dt`.
//!
//! The substitution `t = P(s^{1/2}) v` maps (0, I) onto (0, s) and turns
//! the integral into `Δ(s)^λ / Γ_Ω(λ) ∫_{(0,I)} Δ(I − v)^{λ − N/k} f(P(s^{1/2}) v) dv`;
//! `v` is drawn from a matrix Beta law and reweighted.

use super::cone_samplers_ext::{beta_proposal, Proposal};
use super::gamma::{ln_gamma_cone, n_over_k};
use super::points::quad_rep;
use crate::algebra::{delta_det, eigenvalues, sqrt_psd, HermMatrix, Scalar};
use crate::error::{Error, Result};
use crate::random::{mc_expect, McConfig, McEstimate, McRng};

/// Importance sampler for `t ↦ I^λ` at a fixed point `s`.
#[derive(Clone, Debug)]
pub struct FracIntegralSampler<S: Scalar> {
    pub lambda: f64,
    s_half: HermMatrix<S>,
    proposal: Proposal,
    nk: f64,
    ln_scale: f64,
}

impl<S: Scalar> FracIntegralSampler<S> {
    pub fn new(lambda: f64, s: &HermMatrix<S>) -> Result<Self> {
        let k = s.dim();
        let f = S::FIELD;
        let nk = n_over_k(f, k);
        if !(lambda > nk - 1.0) {
            return Err(Error::Domain(format!(
                "direct fractional integration needs lambda > N/k - 1 = {}, got {lambda}",
                nk - 1.0
            )));
        }
        let ev = eigenvalues(s)?;
        if !ev.iter().all(|&l| l > 0.0) {
            return Err(Error::Domain(format!("base point must be positive definite, eigenvalues {ev:?}")));
        }
        let ln_delta_s: f64 = ev.iter().map(|l| l.ln()).sum();
        let ln_scale = lambda * ln_delta_s - ln_gamma_cone(f, k, lambda)?;
        Ok(FracIntegralSampler { lambda, s_half: sqrt_psd(s)?, proposal: beta_proposal(f, k, lambda)?, nk, ln_scale })
    }

    /// One draw `t ∈ (0, s)` with weight `w` so that `E[w f(t)] = (I^λ f)(s)`.
    pub fn draw(&self, rng: &mut McRng) -> Result<(HermMatrix<S>, f64)> {
        let (v, ln_inv_q) = self.proposal.sample::<S>(rng)?;
        let ln_w = ln_inv_q + (self.lambda - self.nk) * delta_det(&v.complement())?.ln() + self.ln_scale;
        let t = quad_rep(&self.s_half, &v)?;
        let w = ln_w.exp();
        if !w.is_finite() || ln_w.is_nan() {
            return Err(Error::Domain(format!("non-finite importance weight (ln w = {ln_w})")));
        }
        Ok((t, w))
    }
}

/// `(I^λ f)(s)` for an integrand that may itself be a one-sample estimator.
pub fn frac_integral_mc_with<S, F>(f: F, lambda: f64, s: &HermMatrix<S>, cfg: &McConfig) -> Result<McEstimate>
where
    S: Scalar,
    F: Fn(&HermMatrix<S>, &mut McRng) -> Result<f64> + Sync,
{
    let sampler = FracIntegralSampler::new(lambda, s)?;
    mc_expect(cfg, |rng| {
        let (t, w) = sampler.draw(rng)?;
        Ok(w * f(&t, rng)?)
    })
}

/// `(I^λ f)(s)` for a deterministic integrand on (0, s).
pub fn frac_integral_mc<S, F>(f: F, lambda: f64, s: &HermMatrix<S>, cfg: &McConfig) -> Result<McEstimate>
where
    S: Scalar,
    F: Fn(&HermMatrix<S>) -> f64 + Sync,
{
    frac_integral_mc_with(|t: &HermMatrix<S>, _: &mut McRng| Ok(f(t)), lambda, s, cfg)
}
