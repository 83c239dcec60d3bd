//! Matrix-variate Beta law on the interval (0, I): the law of `w_1^* w_1`
//! for the top `n1 × k` block of a Haar frame in `S_{n1+n2, k}`.

use rand::Rng;

use super::haar::sample_haar_stiefel;
use crate::algebra::{delta_det, eigenvalues, HermMatrix, Scalar};
use crate::cone::{ln_gamma_cone, n_over_k};
use crate::error::{Error, Result};

/// Eigenvalues closer than this to 0 or 1 count as boundary samples.
pub const BOUNDARY_TOL: f64 = 1e-12;
const MAX_REDRAWS: u32 = 1000;

#[derive(Clone)]
pub struct BetaMatrixSample<S> {
    pub r: HermMatrix<S>,
    /// Log of the normalized density at `r`.
    pub log_density: f64,
    /// Boundary samples rejected before this one.
    pub redraws: u32,
}

/// Sampler for the matrix Beta law with parameters `(d n1/2, d n2/2)`.
#[derive(Clone, Debug)]
pub struct MatrixBetaSampler {
    pub k: usize,
    pub n1: usize,
    pub n2: usize,
    pub alpha: f64,
    pub beta: f64,
    ln_b: f64,
    nk: f64,
}

impl MatrixBetaSampler {
    pub fn new<S: Scalar>(k: usize, n1: usize, n2: usize) -> Result<Self> {
        if k == 0 || n1 < k || n2 < k {
            return Err(Error::Domain(format!("matrix Beta needs n1 >= k and n2 >= k, got k={k}, n1={n1}, n2={n2}")));
        }
        let f = S::FIELD;
        let alpha = f.half_d() * n1 as f64;
        let beta = f.half_d() * n2 as f64;
        let ln_b = ln_gamma_cone(f, k, alpha)? + ln_gamma_cone(f, k, beta)? - ln_gamma_cone(f, k, alpha + beta)?;
        Ok(MatrixBetaSampler { k, n1, n2, alpha, beta, ln_b, nk: n_over_k(f, k) })
    }

    /// `ln B_Ω(α, β)`.
    pub fn ln_beta(&self) -> f64 {
        self.ln_b
    }

    /// Log density `(α − N/k) ln Δ(r) + (β − N/k) ln Δ(I − r) − ln B_Ω(α, β)`.
    pub fn log_density_at<S: Scalar>(&self, r: &HermMatrix<S>) -> Result<f64> {
        let a = delta_det(r)?;
        let b = delta_det(&r.complement())?;
        Ok((self.alpha - self.nk) * a.ln() + (self.beta - self.nk) * b.ln() - self.ln_b)
    }

    pub fn sample<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> Result<BetaMatrixSample<S>> {
        let n = self.n1 + self.n2;
        for redraws in 0..MAX_REDRAWS {
            let w = sample_haar_stiefel::<S, _>(n, self.k, rng);
            let w1 = w.block(0, 0, self.n1, self.k);
            let r = HermMatrix::from_mat_symmetrize(&w1.adjoint_mul(&w1));
            let ev = eigenvalues(&r)?;
            if ev.iter().all(|&l| l > BOUNDARY_TOL && l < 1.0 - BOUNDARY_TOL) {
                let log_density = self.log_density_at(&r)?;
                return Ok(BetaMatrixSample { r, log_density, redraws });
            }
        }
        Err(Error::Infeasible(format!("matrix Beta sampler hit the boundary {MAX_REDRAWS} times in a row")))
    }
}

/// One draw from the matrix Beta law with parameters `(d n1/2, d n2/2)`.
pub fn sample_matrix_beta<S: Scalar, R: Rng + ?Sized>(
    k: usize,
    n1: usize,
    n2: usize,
    rng: &mut R,
) -> Result<BetaMatrixSample<S>> {
    MatrixBetaSampler::new::<S>(k, n1, n2)?.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::beta_cone;
    use crate::random::mc::{mc_expect, McConfig};
    use crate::FieldTag;
    use num_complex::Complex64;

    #[test]
    fn arcsine_density() {
        let s = MatrixBetaSampler::new::<f64>(1, 1, 1).unwrap();
        let r = HermMatrix::<f64>::scalar(1, 0.3);
        let want = (1.0 / std::f64::consts::PI) / (0.3f64 * 0.7).sqrt();
        assert!((s.log_density_at(&r).unwrap().exp() - want).abs() < 1e-12);
    }

    #[test]
    fn scalar_mean() {
        for (n1, n2) in [(1, 1), (2, 3)] {
            let s = MatrixBetaSampler::new::<Complex64>(1, n1, n2).unwrap();
            let e = mc_expect(&McConfig::new(20_000, 5), |r| Ok(s.sample::<Complex64, _>(r)?.r.trace())).unwrap();
            assert!(e.z_score(n1 as f64 / (n1 + n2) as f64).abs() < 4.0);
        }
    }

    #[test]
    fn delta_moment_matches_beta_ratio() {
        let s = MatrixBetaSampler::new::<f64>(2, 2, 3).unwrap();
        let e = mc_expect(&McConfig::new(40_000, 6), |r| delta_det(&s.sample::<f64, _>(r)?.r)).unwrap();
        let f = FieldTag::Real;
        let want = beta_cone(f, 2, s.alpha + 1.0, s.beta).unwrap() / beta_cone(f, 2, s.alpha, s.beta).unwrap();
        assert!(e.z_score(want).abs() < 4.0, "{e:?} {want}");
    }

    #[test]
    fn rejects_thin_blocks() {
        assert!(MatrixBetaSampler::new::<f64>(2, 1, 3).is_err());
    }
}
