//! The individual checks, grouped by the layer they exercise.

mod cone;
mod measure;
mod operators;

use rand::SeedableRng;

use super::config::{CheckConfig, CheckId};
use super::report::CheckReport;
use crate::algebra::{delta_det, inv_sqrt_pd, HermMatrix, Mat, Scalar};
use crate::cone::{ln_gamma_cone, n_over_k, quad_rep};
use crate::error::{Error, Result};
use crate::random::{derive_seed, sample_haar_unitary, BartlettSampler, MatrixBetaSampler, McRng};

/// Proposals for cone integrals are Gamma laws with the rate scaled by
/// this factor, which keeps the importance weight bounded.
pub(crate) const GAMMA_TILT: f64 = 0.8;

pub(crate) fn run(id: CheckId, cfg: CheckConfig) -> Result<CheckReport> {
    use CheckId::*;
    let f = cfg.field;
    match id {
        GammaIntegral => crate::dispatch_field!(f, S => cone::gamma_integral::<S>(cfg)),
        BetaIntegral => crate::dispatch_field!(f, S => cone::beta_integral::<S>(cfg)),
        FracSemigroup => crate::dispatch_field!(f, S => cone::frac_semigroup::<S>(cfg)),
        CapelliInverse => cone::capelli_inverse(cfg),
        PolarMeasure => crate::dispatch_field!(f, S => measure::polar_measure::<S>(cfg)),
        BistiefelI => crate::dispatch_field!(f, S => measure::bistiefel_i::<S>(cfg)),
        BistiefelIi => crate::dispatch_field!(f, S => measure::bistiefel_ii::<S>(cfg)),
        Jacobian => crate::dispatch_field!(f, S => measure::jacobian::<S>(cfg)),
        Switch => crate::dispatch_field!(f, S => measure::switch::<S>(cfg)),
        Prop35 => crate::dispatch_field!(f, S => measure::prop35::<S>(cfg)),
        Lemma43 => crate::dispatch_field!(f, S => operators::lemma43::<S>(cfg)),
        Prop44 => crate::dispatch_field!(f, S => operators::prop44::<S>(cfg)),
        Lemma45Limit => crate::dispatch_field!(f, S => operators::lemma45_limit::<S>(cfg)),
        InversionK1 => operators::inversion_k1(cfg),
    }
}

/// Seeded generator for the fixed inputs of a check (base points, test
/// matrices), separate from the Monte Carlo streams.
pub(crate) fn fixture_rng(cfg: &CheckConfig, tag: u64) -> McRng {
    McRng::seed_from_u64(derive_seed(cfg.seed, 0xf1c5_0000 + tag))
}

/// `u diag(λ) u^*` with Haar `u` and eigenvalues uniform in `[lo, hi]`.
pub(crate) fn random_cone_point<S: Scalar>(k: usize, lo: f64, hi: f64, rng: &mut McRng) -> HermMatrix<S> {
    use rand::Rng;
    let u = sample_haar_unitary::<S, _>(k, rng);
    let ev: Vec<f64> = (0..k).map(|_| rng.random_range(lo..hi)).collect();
    HermMatrix::diag(&ev).congruence(&u)
}

pub(crate) fn ln_delta<S: Scalar>(a: &HermMatrix<S>) -> Result<f64> {
    Ok(delta_det(a)?.ln())
}

/// `ln π^{dnk/2}`, the log of `∫_{M_{n,k}} e^{−tr x^* x} dx`.
pub(crate) fn ln_gaussian_mass(d: usize, n: usize, k: usize) -> f64 {
    (d * n * k) as f64 / 2.0 * std::f64::consts::PI.ln()
}

/// Draws from the matrix Beta law with parameters `(a, b)` as
/// `(s_1 + s_2)^{−1/2} s_1 (s_1 + s_2)^{−1/2}` for independent cone Gamma
/// variables, which needs no Haar frames.
pub(crate) struct GammaRatioBeta {
    g1: BartlettSampler,
    g2: BartlettSampler,
}

impl GammaRatioBeta {
    pub fn new(field: crate::FieldTag, k: usize, a: f64, b: f64) -> Result<Self> {
        Ok(GammaRatioBeta {
            g1: BartlettSampler::for_gamma_weight(field, k, a, 1.0, 1.0)?,
            g2: BartlettSampler::for_gamma_weight(field, k, b, 1.0, 1.0)?,
        })
    }

    pub fn sample<S: Scalar>(&self, rng: &mut McRng) -> Result<HermMatrix<S>> {
        let (s1, _) = self.g1.sample::<S, _>(rng);
        let (s2, _) = self.g2.sample::<S, _>(rng);
        quad_rep(&inv_sqrt_pd(&s1.add(&s2))?, &s1)
    }
}

/// Importance sampler for `(I^λ F)(s)` when `F(t) = Δ(t)^{β − N/k} g(t)`
/// with `β = d n1 / 2`: the Δ power is matched exactly by a Beta proposal
/// on `v` with `t = P(s^{1/2}) v`, so only `g` is left in the estimator.
pub(crate) struct WeightedFrac<S: Scalar> {
    lambda: f64,
    beta: f64,
    nk: f64,
    s_half: HermMatrix<S>,
    ln_scale: f64,
    proposal: MatrixBetaSampler,
}

impl<S: Scalar> WeightedFrac<S> {
    pub fn new(lambda: f64, n1: usize, s: &HermMatrix<S>) -> Result<Self> {
        let field = S::FIELD;
        let k = s.dim();
        let nk = n_over_k(field, k);
        if !(lambda > nk - 1.0) {
            return Err(Error::Domain(format!("fractional order must exceed N/k - 1 = {}, got {lambda}", nk - 1.0)));
        }
        let hd = field.half_d();
        let beta = hd * n1 as f64;
        let n2 = ((lambda / hd).floor() as usize).max(k);
        // Rank one: the scalar law Beta(d n1/2, d n2/2) drawn through the real field.
        let proposal =
            if k == 1 { MatrixBetaSampler::new::<f64>(1, field.d() * n1, field.d() * n2)? } else { MatrixBetaSampler::new::<S>(k, n1, n2)? };
        let ln_scale = (lambda + beta - nk) * ln_delta(s)? - ln_gamma_cone(field, k, lambda)?;
        Ok(WeightedFrac { lambda, beta, nk, s_half: crate::algebra::sqrt_psd(s)?, ln_scale, proposal })
    }

    /// One point `t ∈ (0, s)` and its weight.
    pub fn draw(&self, rng: &mut McRng) -> Result<(HermMatrix<S>, f64)> {
        let (v, ln_q) = if self.proposal.k == 1 {
            let b = self.proposal.sample::<f64, _>(rng)?;
            (HermMatrix::scalar(1, b.r.trace()), b.log_density)
        } else {
            let b = self.proposal.sample::<S, _>(rng)?;
            (b.r, b.log_density)
        };
        let ln_w = self.ln_scale + (self.lambda - self.nk) * ln_delta(&v.complement())? + (self.beta - self.nk) * ln_delta(&v)?
            - ln_q;
        Ok((quad_rep(&self.s_half, &v)?, ln_w.exp()))
    }
}

/// `t^{1/2}` as a plain matrix.
pub(crate) fn sqrt_mat<S: Scalar>(t: &HermMatrix<S>) -> Result<Mat<S>> {
    Ok(crate::algebra::sqrt_psd(t)?.into_mat())
}
