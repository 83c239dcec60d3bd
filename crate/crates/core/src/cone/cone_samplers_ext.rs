//! Proposal laws on (0, I) for fractional integration.

use crate::algebra::{HermMatrix, Scalar};
use crate::error::Result;
use crate::random::{IntervalBoxSampler, MatrixBetaSampler, McRng};
use crate::FieldTag;

/// Law of the interval variable.
#[derive(Clone, Debug)]
pub enum Proposal {
    /// Scalar Beta law drawn through the real field (k = 1).
    Scalar(MatrixBetaSampler),
    Beta(MatrixBetaSampler),
    /// Uniform on a coordinate box around (0, I); used when no Beta law
    /// gives a finite-variance weight.
    Box(IntervalBoxSampler),
}

impl Proposal {
    /// `v` and `ln(1/q(v))`. Box draws outside (0, I) come back as `I/2`
    /// with `ln(1/q) = −∞`, i.e. weight zero.
    pub fn sample<S: Scalar>(&self, rng: &mut McRng) -> Result<(HermMatrix<S>, f64)> {
        match self {
            Proposal::Scalar(b) => {
                let d = b.sample::<f64, _>(rng)?;
                Ok((HermMatrix::scalar(1, d.r.trace()), -d.log_density))
            }
            Proposal::Beta(b) => {
                let d = b.sample::<S, _>(rng)?;
                Ok((d.r, -d.log_density))
            }
            Proposal::Box(bx) => Ok(match bx.sample::<S, _>(rng)? {
                Some(v) => (v, bx.volume().ln()),
                None => (HermMatrix::scalar(bx.k, 0.5), f64::NEG_INFINITY),
            }),
        }
    }
}

/// Proposal matched to the kernel `Δ(I − v)^{λ − N/k}`: the `v` side gets
/// an exponent `α − N/k` near 0, the `I − v` side the largest half-integer
/// step `d n2/2` not above `λ`.
pub fn beta_proposal(field: FieldTag, k: usize, lambda: f64) -> Result<Proposal> {
    if k == 1 {
        let n2 = ((2.0 * lambda).floor() as usize).max(1);
        return Ok(Proposal::Scalar(MatrixBetaSampler::new::<f64>(1, 2, n2)?));
    }
    if field == FieldTag::Quaternion {
        // With n1 = k the weight carries Δ(v)^{-1}, whose square is not
        // integrable against the Beta density.
        return Ok(Proposal::Box(IntervalBoxSampler::new(field, k)));
    }
    let n2 = ((lambda / field.half_d()).floor() as usize).max(k);
    crate::dispatch_field!(field, S => Ok(Proposal::Beta(MatrixBetaSampler::new::<S>(k, k, n2)?)))
}
