//! Points of the cone Ω and of the interval (0, I), and the quadratic
//! representation `P(x) y = x y x`.

use crate::algebra::{eigenvalues, HermMatrix, Scalar};
use crate::error::{Error, Result};

/// Relative threshold below which an eigenvalue counts as zero.
pub const CONE_TOL: f64 = 1e-12;

/// A positive definite self-adjoint matrix.
#[derive(Clone, Debug)]
pub struct ConePoint<S: Scalar>(HermMatrix<S>);

impl<S: Scalar> ConePoint<S> {
    pub fn new(a: HermMatrix<S>) -> Result<Self> {
        let ev = eigenvalues(&a)?;
        let top = ev.first().copied().unwrap_or(0.0).abs().max(1.0);
        let low = ev.last().copied().unwrap_or(0.0);
        if !(low > CONE_TOL * top) {
            return Err(Error::Domain(format!("not in the cone: smallest eigenvalue {low:.3e}")));
        }
        Ok(ConePoint(a))
    }

    pub fn get(&self) -> &HermMatrix<S> {
        &self.0
    }

    pub fn into_inner(self) -> HermMatrix<S> {
        self.0
    }
}

/// A point `t` with `0 < t < I`.
#[derive(Clone, Debug)]
pub struct IntervalPoint<S: Scalar>(HermMatrix<S>);

impl<S: Scalar> IntervalPoint<S> {
    pub fn new(t: HermMatrix<S>) -> Result<Self> {
        let ev = eigenvalues(&t)?;
        if !ev.iter().all(|&l| l > 0.0 && l < 1.0) {
            return Err(Error::Domain(format!("not in (0, I): eigenvalues {ev:?}")));
        }
        Ok(IntervalPoint(t))
    }

    pub fn get(&self) -> &HermMatrix<S> {
        &self.0
    }

    pub fn into_inner(self) -> HermMatrix<S> {
        self.0
    }
}

/// `P(x) y = x y x`.
pub fn quad_rep<S: Scalar>(x: &HermMatrix<S>, y: &HermMatrix<S>) -> Result<HermMatrix<S>> {
    if x.dim() != y.dim() {
        return Err(Error::Dimension(format!("quad_rep of {}x{} and {}x{}", x.dim(), x.dim(), y.dim(), y.dim())));
    }
    Ok(y.congruence(x.as_mat()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{delta_det, Mat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn point_validation() {
        assert!(ConePoint::new(HermMatrix::<f64>::diag(&[1.0, 2.0])).is_ok());
        assert!(ConePoint::new(HermMatrix::<f64>::diag(&[1.0, 0.0])).is_err());
        assert!(IntervalPoint::new(HermMatrix::<f64>::diag(&[0.5, 0.9])).is_ok());
        assert!(IntervalPoint::new(HermMatrix::<f64>::diag(&[0.5, 1.0])).is_err());
    }

    #[test]
    fn quad_rep_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = Mat::<f64>::gaussian(4, 3, &mut rng);
        let x = HermMatrix::from_mat_symmetrize(&g.adjoint_mul(&g));
        let i = HermMatrix::<f64>::identity(3);
        assert!((quad_rep(&i, &x).unwrap().as_mat() - x.as_mat()).frob_norm() < 1e-14);
        let x2 = HermMatrix::from_mat_symmetrize(&(x.as_mat() * x.as_mat()));
        assert!((quad_rep(&x, &i).unwrap().as_mat() - x2.as_mat()).frob_norm() < 1e-12);
        let d = delta_det(&quad_rep(&x, &x2).unwrap()).unwrap();
        assert!((d / (delta_det(&x).unwrap().powi(2) * delta_det(&x2).unwrap()) - 1.0).abs() < 1e-10);
    }
}
