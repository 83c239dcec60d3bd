//! Full rank-one round trip: `f → φ = 𝓡 f → Φ → f` at random points.

use std::time::Instant;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::function::InvariantFunction;
use super::inversion::{invert_k1, InversionOptions};
use super::operators::Radon;
use super::profile::{chebyshev_grid, phi_profile, ProfileOptions};
use crate::algebra::{HermMatrix, Mat, Scalar};
use crate::error::{Error, Result};
use crate::random::{derive_seed, sample_haar_stiefel, McConfig, McRng};
use crate::FieldTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunction {
    /// `f ≡ 1`.
    Constant,
    /// `tr(A P_ξ)` with `A = I + G`, `G` a seeded random self-adjoint matrix
    /// with Frobenius norm 1/2.
    TraceProjection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundTripConfig {
    pub field: FieldTag,
    pub n: usize,
    pub kp: usize,
    pub function: TestFunction,
    pub points: usize,
    pub samples: u64,
    pub seed: u64,
    pub grid_size: usize,
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub inversion: InversionOptions,
    pub symmetrize: bool,
    pub common_numbers: bool,
}

impl RoundTripConfig {
    pub fn new(field: FieldTag, n: usize, kp: usize) -> Self {
        RoundTripConfig {
            field,
            n,
            kp,
            function: TestFunction::TraceProjection,
            points: 20,
            samples: 200_000,
            seed: crate::random::rng::DEFAULT_SEED,
            grid_size: 24,
            grid_lo: 0.02,
            grid_hi: 0.98,
            inversion: InversionOptions::default(),
            symmetrize: true,
            common_numbers: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundTripRow {
    pub point: usize,
    pub truth: f64,
    pub recovered: f64,
    pub rel_error: f64,
    pub condition_number: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub rows: Vec<RoundTripRow>,
    /// `‖recovered − truth‖_2 / ‖truth‖_2` over the points.
    pub rel_l2_error: f64,
    pub m: usize,
    pub c3: f64,
    pub runtime_ms: u64,
}

/// The seeded test matrix `A = I + G`.
pub fn test_matrix<S: Scalar>(n: usize, seed: u64) -> HermMatrix<S> {
    let mut rng = McRng::seed_from_u64(derive_seed(seed, 0xa11));
    let g = HermMatrix::from_mat_symmetrize(&Mat::<S>::gaussian(n, n, &mut rng));
    let g = g.scale(0.5 / g.as_mat().frob_norm());
    HermMatrix::identity(n).add(&g)
}

pub fn round_trip_k1(cfg: &RoundTripConfig) -> Result<RoundTripReport> {
    crate::dispatch_field!(cfg.field, S => round_trip_typed::<S>(cfg))
}

fn round_trip_typed<S: Scalar>(cfg: &RoundTripConfig) -> Result<RoundTripReport> {
    let (n, kp) = (cfg.n, cfg.kp);
    if !(1 < kp && kp < n) {
        return Err(Error::Infeasible(format!("rank-one inversion needs 1 < k' and 1 + k' <= n, got n={n}, k'={kp}")));
    }
    if cfg.points == 0 {
        return Err(Error::Config("round trip needs at least one evaluation point".into()));
    }
    let start = Instant::now();
    let f = match cfg.function {
        TestFunction::Constant => InvariantFunction::<S>::constant(n, 1, 1.0),
        TestFunction::TraceProjection => InvariantFunction::trace_projection(test_matrix::<S>(n, cfg.seed), 1)?,
    };
    let phi = Radon::new(&f, kp).symmetrized(cfg.symmetrize);
    let grid: Vec<HermMatrix<S>> =
        chebyshev_grid(cfg.grid_size, cfg.grid_lo, cfg.grid_hi).into_iter().map(|s| HermMatrix::scalar(1, s)).collect();
    let popts = ProfileOptions { symmetrize: cfg.symmetrize, common_numbers: cfg.common_numbers };
    let mut point_rng = McRng::seed_from_u64(derive_seed(cfg.seed, 0x9017));
    let mut rows = Vec::with_capacity(cfg.points);
    let (mut num, mut den) = (0.0, 0.0);
    let (mut m, mut c3) = (0, f64::NAN);
    for p in 0..cfg.points {
        let x = sample_haar_stiefel::<S, _>(n, 1, &mut point_rng);
        let mc = McConfig::new(cfg.samples, derive_seed(cfg.seed, p as u64));
        let profile = phi_profile(&phi, &x, &grid, &mc, popts)?;
        let inv = invert_k1(&profile, &cfg.inversion)?;
        let truth = f.value(&x);
        num += (inv.estimate - truth).powi(2);
        den += truth * truth;
        m = inv.m;
        c3 = inv.c3;
        rows.push(RoundTripRow {
            point: p,
            truth,
            recovered: inv.estimate,
            rel_error: (inv.estimate - truth).abs() / truth.abs().max(f64::MIN_POSITIVE),
            condition_number: inv.condition_number,
        });
    }
    Ok(RoundTripReport {
        rows,
        rel_l2_error: (num / den).sqrt(),
        m,
        c3,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
