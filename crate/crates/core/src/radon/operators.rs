//! The Radon transform `𝓡`, the dual-type operator `𝓣_b` and the
//! mean-value operator `𝓦_b`, each as a one-sample estimator that can be
//! nested inside another integral, and as a Monte Carlo estimate.

use super::function::FrameFn;
use crate::algebra::{Mat, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{complete_to_unitary, h_on_xhat0, j_inverse_y0, Placement};
use crate::random::{mc_expect, sample_haar_stiefel, sample_haar_unitary, McConfig, McEstimate, McRng};

fn check_frame<S: Scalar>(x: &Mat<S>, n: usize, k: usize, what: &str) -> Result<()> {
    if x.shape() != (n, k) {
        return Err(Error::Dimension(format!("{what}: expected a {n}x{k} frame, got {}x{}", x.rows(), x.cols())));
    }
    Ok(())
}

/// `g_x` with `g_x x̂_0 = x`, optionally composed with `diag(twist, I_k)`;
/// any such choice is a valid completion.
pub fn completion_last<S: Scalar>(x: &Mat<S>, twist: Option<&Mat<S>>) -> Mat<S> {
    let g = complete_to_unitary(x, Placement::LastCols);
    match twist {
        Some(t) => &g * &Mat::block_diag(t, &Mat::identity(x.cols())),
        None => g,
    }
}

/// Evaluate `f` at two frames with the same inner randomness and average.
fn paired<S: Scalar, F: FrameFn<S>>(f: &F, a: &Mat<S>, b: &Mat<S>, rng: &mut McRng) -> Result<f64> {
    let mut twin = rng.clone();
    let fa = f.eval(a, &mut twin)?;
    let fb = f.eval(b, rng)?;
    Ok(0.5 * (fa + fb))
}

/// `φ = 𝓡 f` as a function on `S_{n,k'}`:
/// `(𝓡f)(y) = ∫_{U(k')} f(g_y diag(τ, I) x_0) dτ = E f(y w)`, `w` Haar in `S_{k',k}`.
///
/// With `symmetrize`, each draw `w` is paired with `diag(I_{k'−k}, −I_k) w`,
/// which has the same law.
#[derive(Clone, Debug)]
pub struct Radon<F> {
    pub f: F,
    pub kp: usize,
    pub symmetrize: bool,
}

impl<F> Radon<F> {
    pub fn new(f: F, kp: usize) -> Self {
        Radon { f, kp, symmetrize: false }
    }

    pub fn symmetrized(mut self, on: bool) -> Self {
        self.symmetrize = on;
        self
    }
}

impl<S: Scalar, F: FrameFn<S>> FrameFn<S> for Radon<F> {
    fn eval(&self, y: &Mat<S>, rng: &mut McRng) -> Result<f64> {
        let (n, k, kp) = (self.f.n(), self.f.k(), self.kp);
        check_frame(y, n, kp, "Radon transform")?;
        let w = sample_haar_stiefel::<S, _>(kp, k, rng);
        if self.symmetrize {
            let mut w2 = w.clone();
            for j in 0..k {
                for i in kp - k..kp {
                    w2[(i, j)] = -w2[(i, j)];
                }
            }
            paired(&self.f, &(y * &w), &(y * &w2), rng)
        } else {
            self.f.eval(&(y * &w), rng)
        }
    }
    fn n(&self) -> usize {
        self.f.n()
    }
    fn k(&self) -> usize {
        self.kp
    }
}

/// One draw of `𝓣_b φ(x) = ∫_{U(n−k)×U(k)} φ(g_x κ j(b)^{-1} y_0) dκ` given
/// `g_x` and `j(b)^{-1} y_0`. With `symmetrize`, `δ` is paired with `−δ`.
pub fn t_draw<S: Scalar, F: FrameFn<S>>(
    phi: &F,
    g_x: &Mat<S>,
    jy0: &Mat<S>,
    k: usize,
    symmetrize: bool,
    rng: &mut McRng,
) -> Result<f64> {
    let alpha = sample_haar_unitary::<S, _>(g_x.rows() - k, rng);
    let delta = sample_haar_unitary::<S, _>(k, rng);
    t_eval(phi, g_x, jy0, &alpha, &delta, symmetrize, rng)
}

/// `φ(g_x diag(α, δ) jy0)` for given `α`, `δ`.
pub fn t_eval<S: Scalar, F: FrameFn<S>>(
    phi: &F,
    g_x: &Mat<S>,
    jy0: &Mat<S>,
    alpha: &Mat<S>,
    delta: &Mat<S>,
    symmetrize: bool,
    rng: &mut McRng,
) -> Result<f64> {
    let n = g_x.rows();
    let k = delta.rows();
    let kp = jy0.cols();
    let top = alpha * &jy0.block(0, 0, n - k, kp);
    let bottom = delta * &jy0.block(n - k, 0, k, kp);
    let a = &g_x.columns(0, n - k) * &top;
    let b = &g_x.columns(n - k, k) * &bottom;
    if symmetrize {
        paired(phi, &(&a + &b), &(&a - &b), rng)
    } else {
        phi.eval(&(&a + &b), rng)
    }
}

/// `𝓣_b φ` as a function on `S_{n,k}` for a fixed contraction `b`.
#[derive(Clone, Debug)]
pub struct TOperator<S: Scalar, F> {
    pub phi: F,
    pub k: usize,
    pub symmetrize: bool,
    jy0: Mat<S>,
    twist: Option<Mat<S>>,
}

impl<S: Scalar, F: FrameFn<S>> TOperator<S, F> {
    pub fn new(phi: F, b: &Mat<S>) -> Result<Self> {
        let jy0 = j_inverse_y0(phi.n(), phi.k(), b)?;
        Ok(TOperator { k: b.rows(), phi, symmetrize: false, jy0, twist: None })
    }

    pub fn symmetrized(mut self, on: bool) -> Self {
        self.symmetrize = on;
        self
    }

    /// Use `g_x diag(twist, I_k)` in place of the canonical completion.
    pub fn with_twist(mut self, twist: Mat<S>) -> Self {
        self.twist = Some(twist);
        self
    }
}

impl<S: Scalar, F: FrameFn<S>> FrameFn<S> for TOperator<S, F> {
    fn eval(&self, x: &Mat<S>, rng: &mut McRng) -> Result<f64> {
        check_frame(x, self.phi.n(), self.k, "T operator")?;
        let g = completion_last(x, self.twist.as_ref());
        t_draw(&self.phi, &g, &self.jy0, self.k, self.symmetrize, rng)
    }
    fn n(&self) -> usize {
        self.phi.n()
    }
    fn k(&self) -> usize {
        self.k
    }
}

/// One draw of `𝓦_b f(x) = ∫_{U(n−k)} f(g_x diag(α, I_k) h(b) x̂_0) dα` given
/// `g_x` and `h(b) x̂_0`.
pub fn w_draw<S: Scalar, F: FrameFn<S>>(f: &F, g_x: &Mat<S>, hx: &Mat<S>, rng: &mut McRng) -> Result<f64> {
    let (n, k) = hx.shape();
    let alpha = sample_haar_unitary::<S, _>(n - k, rng);
    let top = &alpha * &hx.block(0, 0, n - k, k);
    let frame = &(&g_x.columns(0, n - k) * &top) + &(&g_x.columns(n - k, k) * &hx.block(n - k, 0, k, k));
    f.eval(&frame, rng)
}

/// `𝓦_b f` as a function on `S_{n,k}` for a fixed contraction `b`.
#[derive(Clone, Debug)]
pub struct WOperator<S: Scalar, F> {
    pub f: F,
    hx: Mat<S>,
    twist: Option<Mat<S>>,
}

impl<S: Scalar, F: FrameFn<S>> WOperator<S, F> {
    pub fn new(f: F, b: &Mat<S>) -> Result<Self> {
        if b.rows() != f.k() {
            return Err(Error::Dimension(format!("b must be {0}x{0}", f.k())));
        }
        let hx = h_on_xhat0(f.n(), b)?;
        Ok(WOperator { f, hx, twist: None })
    }

    pub fn with_twist(mut self, twist: Mat<S>) -> Self {
        self.twist = Some(twist);
        self
    }
}

impl<S: Scalar, F: FrameFn<S>> FrameFn<S> for WOperator<S, F> {
    fn eval(&self, x: &Mat<S>, rng: &mut McRng) -> Result<f64> {
        check_frame(x, self.f.n(), self.f.k(), "W operator")?;
        let g = completion_last(x, self.twist.as_ref());
        w_draw(&self.f, &g, &self.hx, rng)
    }
    fn n(&self) -> usize {
        self.f.n()
    }
    fn k(&self) -> usize {
        self.f.k()
    }
}

/// Monte Carlo value of a (possibly stochastic) frame function at `x`.
pub fn estimate_at<S: Scalar, F: FrameFn<S>>(f: &F, x: &Mat<S>, cfg: &McConfig) -> Result<McEstimate> {
    mc_expect(cfg, |rng| f.eval(x, rng))
}

/// `(𝓡f)(y)` for a frame `y ∈ S_{n,k'}`.
pub fn radon<S: Scalar, F: FrameFn<S>>(f: &F, y: &Mat<S>, cfg: &McConfig) -> Result<McEstimate> {
    let kp = y.cols();
    if f.k() > kp {
        return Err(Error::Infeasible(format!("Radon transform needs k <= k', got k={}, k'={kp}", f.k())));
    }
    estimate_at(&Radon::new(f, kp), y, cfg)
}

/// `(𝓣_b φ)(x)` for `φ` on `S_{n,k'}` and `x ∈ S_{n,k}`.
pub fn t_op<S: Scalar, F: FrameFn<S>>(phi: &F, b: &Mat<S>, x: &Mat<S>, cfg: &McConfig) -> Result<McEstimate> {
    estimate_at(&TOperator::new(phi, b)?, x, cfg)
}

/// `(𝓦_b f)(x)`.
pub fn w_op<S: Scalar, F: FrameFn<S>>(f: &F, b: &Mat<S>, x: &Mat<S>, cfg: &McConfig) -> Result<McEstimate> {
    estimate_at(&WOperator::new(f, b)?, x, cfg)
}
