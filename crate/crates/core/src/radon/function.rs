//! Functions on Stiefel manifolds, possibly given as one-sample Monte Carlo
//! estimators of an inner integral.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::algebra::{HermMatrix, Mat, Scalar};
use crate::error::{Error, Result};
use crate::random::{sample_haar_stiefel, sample_haar_unitary, McRng};

/// Absolute tolerance of the right-`U(k)` invariance audit.
pub const AUDIT_TOL: f64 = 1e-9;
const AUDIT_DRAWS: usize = 24;
const AUDIT_SEED: u64 = 0x5eed_a0d1;

/// A function on frames in `S_{n,k}`. Stochastic implementations return an
/// unbiased one-sample estimate of their value, drawing from `rng`.
pub trait FrameFn<S: Scalar>: Send + Sync {
    fn eval(&self, x: &Mat<S>, rng: &mut McRng) -> Result<f64>;
    fn n(&self) -> usize;
    fn k(&self) -> usize;
}

impl<S: Scalar, F: FrameFn<S> + ?Sized> FrameFn<S> for &F {
    fn eval(&self, x: &Mat<S>, rng: &mut McRng) -> Result<f64> {
        (**self).eval(x, rng)
    }
    fn n(&self) -> usize {
        (**self).n()
    }
    fn k(&self) -> usize {
        (**self).k()
    }
}

impl<S: Scalar, F: FrameFn<S> + ?Sized> FrameFn<S> for Arc<F> {
    fn eval(&self, x: &Mat<S>, rng: &mut McRng) -> Result<f64> {
        (**self).eval(x, rng)
    }
    fn n(&self) -> usize {
        (**self).n()
    }
    fn k(&self) -> usize {
        (**self).k()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Invariance {
    /// `f(x u) = f(x)` for `u ∈ U(k)`: a function on the Grassmannian.
    RightUk,
    None,
}

type Evaluator<S> = Arc<dyn Fn(&Mat<S>) -> f64 + Send + Sync>;

/// A deterministic function on `S_{n,k}` with a declared invariance.
#[derive(Clone)]
pub struct InvariantFunction<S: Scalar> {
    evaluator: Evaluator<S>,
    pub invariance: Invariance,
    pub label: String,
    n: usize,
    k: usize,
}

impl<S: Scalar> fmt::Debug for InvariantFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvariantFunction({}, {:?}, n={}, k={})", self.label, self.invariance, self.n, self.k)
    }
}

impl<S: Scalar> InvariantFunction<S> {
    /// Wrap an evaluator. A declared right-`U(k)` invariance is audited on
    /// random frames and rotations before the function is accepted.
    pub fn new(
        n: usize,
        k: usize,
        invariance: Invariance,
        label: impl Into<String>,
        f: impl Fn(&Mat<S>) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Dimension(format!("function on S_(n,k) needs 1 <= k <= n, got n={n}, k={k}")));
        }
        let out = InvariantFunction { evaluator: Arc::new(f), invariance, label: label.into(), n, k };
        if invariance == Invariance::RightUk {
            out.audit()?;
        }
        Ok(out)
    }

    fn audit(&self) -> Result<()> {
        let mut rng = McRng::seed_from_u64(AUDIT_SEED);
        for _ in 0..AUDIT_DRAWS {
            let x = sample_haar_stiefel::<S, _>(self.n, self.k, &mut rng);
            let u = sample_haar_unitary::<S, _>(self.k, &mut rng);
            let a = self.value(&x);
            let b = self.value(&(&x * &u));
            let gap = (a - b).abs();
            if !(gap < AUDIT_TOL * a.abs().max(1.0)) {
                return Err(Error::Invariance(format!("`{}` changes by {gap:.3e} under x -> x u", self.label)));
            }
        }
        Ok(())
    }

    pub fn value(&self, x: &Mat<S>) -> f64 {
        (self.evaluator)(x)
    }

    pub fn constant(n: usize, k: usize, c: f64) -> Self {
        Self::new(n, k, Invariance::RightUk, format!("const({c})"), move |_| c).expect("constants are invariant")
    }

    /// `tr(A P_ξ) = Re tr(x^* A x)` for a fixed self-adjoint `A`.
    pub fn trace_projection(a: HermMatrix<S>, k: usize) -> Result<Self> {
        let n = a.dim();
        let a = a.into_mat();
        Self::new(n, k, Invariance::RightUk, "tr(A P)", move |x| x.adjoint_mul(&(&a * x)).trace_re())
    }

    /// `exp(tr(A P_ξ))`: smooth, invariant, not a polynomial in `P_ξ`.
    pub fn exp_trace_projection(a: HermMatrix<S>, k: usize) -> Result<Self> {
        let n = a.dim();
        let a = a.into_mat();
        Self::new(n, k, Invariance::RightUk, "exp tr(A P)", move |x| x.adjoint_mul(&(&a * x)).trace_re().exp())
    }

    /// `|x_11|^2`, a function on frames only.
    pub fn first_entry_sq(n: usize, k: usize) -> Self {
        Self::new(n, k, Invariance::None, "|x11|^2", |x| x[(0, 0)].abs2()).expect("no audit for non-invariant functions")
    }
}

impl<S: Scalar> FrameFn<S> for InvariantFunction<S> {
    fn eval(&self, x: &Mat<S>, _rng: &mut McRng) -> Result<f64> {
        if x.shape() != (self.n, self.k) {
            return Err(Error::Dimension(format!(
                "`{}` expects a {}x{} frame, got {}x{}",
                self.label,
                self.n,
                self.k,
                x.rows(),
                x.cols()
            )));
        }
        Ok(self.value(x))
    }
    fn n(&self) -> usize {
        self.n
    }
    fn k(&self) -> usize {
        self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn audit_accepts_invariant_and_rejects_frame_functions() {
        let a = HermMatrix::<Complex64>::diag(&[1.0, 2.0, 3.0, 4.0]);
        assert!(InvariantFunction::trace_projection(a, 2).is_ok());
        let r = InvariantFunction::<Complex64>::new(4, 2, Invariance::RightUk, "x11", |x| x[(0, 0)].re);
        assert!(matches!(r, Err(Error::Invariance(_))));
    }
}
