//! Monte Carlo expectations with block-structured streams.
//!
//! Samples are grouped in blocks of [`BLOCK`]; block `b` draws from stream
//! `b` of the seed and keeps its own running moments. Blocks are combined
//! in index order, so the estimate does not depend on how blocks are
//! spread over shards.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{stream_rng, McRng};
use crate::error::{Error, Result};

pub const BLOCK: u64 = 1024;

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `(mean − reference) / stderr`, with the standard error floored at
    /// the rounding level of the compared values so that integrands that
    /// are constant up to rounding do not produce spurious z-scores.
    pub fn z_score(&self, reference: f64) -> f64 {
        let floor = ROUNDING_ULPS * f64::EPSILON * self.mean.abs().max(reference.abs());
        z_score(self.mean - reference, self.stderr.max(floor))
    }
}

/// Rounding allowance, in units of relative machine epsilon.
const ROUNDING_ULPS: f64 = 64.0;

/// Difference over its standard error; 0/0 counts as 0 and x/0 as ±∞.
pub fn z_score(diff: f64, stderr: f64) -> f64 {
    if stderr > 0.0 {
        diff / stderr
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub shards: usize,
}

impl McConfig {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        McConfig { n_samples, seed, shards: default_shards() }
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, n: u64) -> Self {
        self.n_samples = n;
        self
    }
}

pub fn default_shards() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Mean vector of a vector-valued sample function with the covariance of
/// that mean.
#[derive(Clone, Debug, PartialEq)]
pub struct McVecEstimate {
    pub mean: Vec<f64>,
    /// Covariance of the sample mean (sample covariance / n), row-major.
    pub cov: Vec<f64>,
    pub n_samples: u64,
    pub seed: u64,
}

impl McVecEstimate {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn stderr(&self, i: usize) -> f64 {
        self.cov[i * self.dim() + i].max(0.0).sqrt()
    }

    pub fn component(&self, i: usize) -> McEstimate {
        McEstimate { mean: self.mean[i], stderr: self.stderr(i), n_samples: self.n_samples, seed: self.seed }
    }

    /// Estimate of `Σ c_i mean_i`, using the covariance for its error.
    pub fn linear(&self, c: &[f64]) -> McEstimate {
        let m = self.dim();
        let mean = c.iter().zip(&self.mean).map(|(a, b)| a * b).sum();
        let mut var = 0.0;
        for i in 0..m {
            for j in 0..m {
                var += c[i] * c[j] * self.cov[i * m + j];
            }
        }
        McEstimate { mean, stderr: var.max(0.0).sqrt(), n_samples: self.n_samples, seed: self.seed }
    }

    /// Delta-method estimate of `mean_i / mean_j`.
    pub fn ratio(&self, i: usize, j: usize) -> McEstimate {
        let m = self.dim();
        let (a, b) = (self.mean[i], self.mean[j]);
        let q = a / b;
        let var = (self.cov[i * m + i] - 2.0 * q * self.cov[i * m + j] + q * q * self.cov[j * m + j]) / (b * b);
        McEstimate { mean: q, stderr: var.max(0.0).sqrt(), n_samples: self.n_samples, seed: self.seed }
    }
}

/// Running mean and co-moment matrix (Welford / Chan updates).
#[derive(Clone, Debug)]
struct Moments {
    n: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(dim: usize) -> Self {
        Moments { n: 0, mean: vec![0.0; dim], m2: vec![0.0; dim * dim] }
    }

    fn push(&mut self, x: &[f64], delta: &mut [f64]) {
        let m = self.mean.len();
        self.n += 1;
        let nf = self.n as f64;
        for i in 0..m {
            delta[i] = x[i] - self.mean[i];
            self.mean[i] += delta[i] / nf;
        }
        for i in 0..m {
            let di_new = x[i] - self.mean[i];
            for j in 0..m {
                self.m2[i * m + j] += delta[j] * di_new;
            }
        }
    }

    fn merge(&mut self, o: &Moments) {
        if o.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = o.clone();
            return;
        }
        let m = self.mean.len();
        let (na, nb) = (self.n as f64, o.n as f64);
        let n = na + nb;
        let delta: Vec<f64> = (0..m).map(|i| o.mean[i] - self.mean[i]).collect();
        for i in 0..m {
            for j in 0..m {
                self.m2[i * m + j] += o.m2[i * m + j] + delta[i] * delta[j] * na * nb / n;
            }
        }
        for i in 0..m {
            self.mean[i] += delta[i] * nb / n;
        }
        self.n += o.n;
    }
}

/// Expectation of a vector-valued sample function. `f` fills its output
/// slice from the given stream; non-finite outputs abort with the index of
/// the offending sample.
pub fn mc_expect_vec<F>(cfg: &McConfig, dim: usize, f: F) -> Result<McVecEstimate>
where
    F: Fn(&mut McRng, &mut [f64]) -> Result<()> + Sync,
{
    if cfg.n_samples < 2 {
        return Err(Error::Config(format!("Monte Carlo needs at least 2 samples, got {}", cfg.n_samples)));
    }
    let n_blocks = cfg.n_samples.div_ceil(BLOCK);
    let shards = (cfg.shards.max(1) as u64).min(n_blocks);
    let per_shard = n_blocks.div_ceil(shards);

    let run_block = |b: u64| -> Result<Moments> {
        let mut rng = stream_rng(cfg.seed, b);
        let mut acc = Moments::new(dim);
        let mut out = vec![0.0; dim];
        let mut delta = vec![0.0; dim];
        let start = b * BLOCK;
        let end = (start + BLOCK).min(cfg.n_samples);
        for idx in start..end {
            out.iter_mut().for_each(|v| *v = 0.0);
            f(&mut rng, &mut out)?;
            if out.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { index: idx });
            }
            acc.push(&out, &mut delta);
        }
        Ok(acc)
    };

    let shard_results: Vec<Result<Vec<Moments>>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let lo = s * per_shard;
            let hi = ((s + 1) * per_shard).min(n_blocks);
            (lo..hi).map(run_block).collect()
        })
        .collect();

    let mut total = Moments::new(dim);
    for r in shard_results {
        for m in r? {
            total.merge(&m);
        }
    }
    let n = total.n as f64;
    let cov = total.m2.iter().map(|v| v / (n - 1.0) / n).collect();
    Ok(McVecEstimate { mean: total.mean, cov, n_samples: total.n, seed: cfg.seed })
}

/// Expectation of a scalar sample function.
pub fn mc_expect<F>(cfg: &McConfig, f: F) -> Result<McEstimate>
where
    F: Fn(&mut McRng) -> Result<f64> + Sync,
{
    let v = mc_expect_vec(cfg, 1, |rng, out| {
        out[0] = f(rng)?;
        Ok(())
    })?;
    Ok(v.component(0))
}
