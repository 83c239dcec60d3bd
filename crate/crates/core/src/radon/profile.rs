//! The profile `Φ(s) = Δ(s)^{(d/2)(k'−(k−1))−1} (𝓣_{s^{1/2}} φ)(x)` sampled on a
//! grid of interval points.

use super::function::FrameFn;
use super::operators::{completion_last, t_eval};
use crate::algebra::{delta_det, eigenvalues, sqrt_psd, HermMatrix, Mat, Scalar};
use crate::error::{Error, Result};
use crate::geometry::j_inverse_y0;
use crate::random::{derive_seed, mc_expect, mc_expect_vec, sample_haar_unitary, McConfig, McEstimate};
use crate::FieldTag;

/// `(d/2)(k' − (k−1)) − 1`.
pub fn profile_exponent(field: FieldTag, k: usize, kp: usize) -> f64 {
    field.half_d() * (kp as f64 - (k as f64 - 1.0)) - 1.0
}

/// Chebyshev points of the first kind on `[a, b]`, increasing.
pub fn chebyshev_grid(size: usize, a: f64, b: f64) -> Vec<f64> {
    let mut g: Vec<f64> = (0..size)
        .map(|i| {
            let t = (std::f64::consts::PI * (2 * i + 1) as f64 / (2 * size) as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * t
        })
        .collect();
    g.sort_by(f64::total_cmp);
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Pair `δ` with `−δ` in `𝓣` (and the matching flip inside `𝓡` when the
    /// caller builds `φ` that way); both have the Haar law.
    pub symmetrize: bool,
    /// Use the same random draws at every grid point, so the sampled profile
    /// is a smooth function of `s`.
    pub common_numbers: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions { symmetrize: true, common_numbers: true }
    }
}

/// Profile estimates at the grid points, with the base frame.
#[derive(Clone, Debug)]
pub struct ProfileSamples<S: Scalar> {
    pub field: FieldTag,
    pub kp: usize,
    pub grid: Vec<HermMatrix<S>>,
    /// Estimates of `Φ` at each grid point.
    pub values: Vec<McEstimate>,
    /// Estimates of `(𝓣_{s^{1/2}} φ)(x)` without the Δ prefactor.
    pub t_values: Vec<McEstimate>,
    pub x: Mat<S>,
    pub exponent: f64,
}

impl<S: Scalar> ProfileSamples<S> {
    /// Grid as scalars (rank one only).
    pub fn scalar_grid(&self) -> Option<Vec<f64>> {
        (self.x.cols() == 1).then(|| self.grid.iter().map(|s| s.trace()).collect())
    }
}

/// Sample `Φ` at each grid point for `φ` on `S_{n,k'}` and base frame `x`.
pub fn phi_profile<S: Scalar, F: FrameFn<S>>(
    phi: &F,
    x: &Mat<S>,
    grid: &[HermMatrix<S>],
    cfg: &McConfig,
    opts: ProfileOptions,
) -> Result<ProfileSamples<S>> {
    let (n, kp) = (phi.n(), phi.k());
    let k = x.cols();
    if x.rows() != n || k > kp || k + kp > n {
        return Err(Error::Infeasible(format!("profile needs x in S_(n,k) with k <= k', k + k' <= n; n={n}, k={k}, k'={kp}")));
    }
    if grid.is_empty() {
        return Err(Error::Config("profile grid is empty".into()));
    }
    let mut roots = Vec::with_capacity(grid.len());
    let mut scales = Vec::with_capacity(grid.len());
    let exponent = profile_exponent(S::FIELD, k, kp);
    for s in grid {
        let ev = eigenvalues(s)?;
        if s.dim() != k || !ev.iter().all(|&l| l > 0.0 && l < 1.0) {
            return Err(Error::Domain(format!("grid point must lie strictly inside (0, I), eigenvalues {ev:?}")));
        }
        roots.push(j_inverse_y0(n, kp, sqrt_psd(s)?.as_mat())?);
        scales.push(delta_det(s)?.powf(exponent));
    }
    let g = completion_last(x, None);
    let t_values: Vec<McEstimate> = if opts.common_numbers {
        let v = mc_expect_vec(cfg, grid.len(), |rng, out| {
            let alpha = sample_haar_unitary::<S, _>(n - k, rng);
            let delta = sample_haar_unitary::<S, _>(k, rng);
            let start = rng.clone();
            for (o, jy0) in out.iter_mut().zip(&roots) {
                let mut r = start.clone();
                *o = t_eval(phi, &g, jy0, &alpha, &delta, opts.symmetrize, &mut r)?;
                *rng = r;
            }
            Ok(())
        })?;
        (0..grid.len()).map(|i| v.component(i)).collect()
    } else {
        roots
            .iter()
            .enumerate()
            .map(|(i, jy0)| {
                let c = cfg.with_seed(derive_seed(cfg.seed, i as u64));
                mc_expect(&c, |rng| {
                    let alpha = sample_haar_unitary::<S, _>(n - k, rng);
                    let delta = sample_haar_unitary::<S, _>(k, rng);
                    t_eval(phi, &g, jy0, &alpha, &delta, opts.symmetrize, rng)
                })
            })
            .collect::<Result<_>>()?
    };
    let values = t_values
        .iter()
        .zip(&scales)
        .map(|(e, &c)| McEstimate { mean: c * e.mean, stderr: c * e.stderr, ..*e })
        .collect();
    Ok(ProfileSamples { field: S::FIELD, kp, grid: grid.to_vec(), values, t_values, x: x.clone(), exponent })
}
