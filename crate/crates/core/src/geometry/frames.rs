//! Stiefel frames, Grassmannian points, projections and the angle matrix.

use crate::algebra::{HermMatrix, Mat, Scalar};
use crate::error::{Error, Result};

/// Largest `‖x^* x − I‖_F` accepted for a frame.
pub const FRAME_TOL: f64 = 1e-10;
/// Frobenius distance between projections below which two Grassmannian
/// points are equal.
pub const POINT_TOL: f64 = 1e-9;

/// An isometric `n × k` matrix.
#[derive(Clone, Debug)]
pub struct StiefelFrame<S: Scalar>(Mat<S>);

impl<S: Scalar> StiefelFrame<S> {
    pub fn new(x: Mat<S>) -> Result<Self> {
        let defect = x.isometry_defect();
        if !(defect < FRAME_TOL) {
            return Err(Error::Domain(format!("not an orthonormal frame (isometry defect {defect:.3e})")));
        }
        Ok(StiefelFrame(x))
    }

    pub fn as_mat(&self) -> &Mat<S> {
        &self.0
    }

    pub fn into_mat(self) -> Mat<S> {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn k(&self) -> usize {
        self.0.cols()
    }
}

/// The subspace `x 𝕂^k`, held through one representative frame.
#[derive(Clone, Debug)]
pub struct GrassmannPoint<S: Scalar> {
    pub representative: StiefelFrame<S>,
}

impl<S: Scalar> GrassmannPoint<S> {
    pub fn new(representative: StiefelFrame<S>) -> Self {
        GrassmannPoint { representative }
    }

    pub fn projection(&self) -> HermMatrix<S> {
        projection(self.representative.as_mat())
    }

    /// Equality of subspaces: projections within [`POINT_TOL`].
    pub fn same_point(&self, other: &Self) -> bool {
        let a = self.projection();
        let b = other.projection();
        a.dim() == b.dim() && (a.as_mat() - b.as_mat()).frob_norm() < POINT_TOL
    }
}

/// `x_0 = [I_k; 0]` in `S_{n,k}`; also `y_0` with `k'` in place of `k`.
pub fn x0<S: Scalar>(n: usize, k: usize) -> Mat<S> {
    Mat::eye_rect(n, k)
}

/// `x̂_0 = [0; I_k]` in `S_{n,k}`; also `ŷ_0` with `k'` in place of `k`.
pub fn xhat0<S: Scalar>(n: usize, k: usize) -> Mat<S> {
    let mut m = Mat::zeros(n, k);
    for i in 0..k {
        m[(n - k + i, i)] = S::one();
    }
    m
}

/// Orthogonal projection `y y^*` onto the span of a frame.
pub fn projection<S: Scalar>(y: &Mat<S>) -> HermMatrix<S> {
    HermMatrix::from_mat_symmetrize(&(y * &y.adjoint()))
}

/// `Cos²(η, x) = x^* P_η x` with `η` spanned by the frame `y`.
pub fn cos2<S: Scalar>(y: &Mat<S>, x: &Mat<S>) -> Result<HermMatrix<S>> {
    if y.rows() != x.rows() {
        return Err(Error::Dimension(format!("cos2 of frames in K^{} and K^{}", y.rows(), x.rows())));
    }
    let c = y.adjoint_mul(x);
    Ok(HermMatrix::from_mat_symmetrize(&c.adjoint_mul(&c)))
}

/// Where the frame sits inside its completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `g x_0 = frame`.
    FirstCols,
    /// `g x̂_0 = frame`.
    LastCols,
}

/// Unitary `g` containing the frame as its first or last columns. The
/// complement comes from Gram–Schmidt on the standard basis, taking at
/// each step the basis vector with the largest residual (lowest index on
/// ties), so the result is a deterministic function of the frame.
pub fn complete_to_unitary<S: Scalar>(frame: &Mat<S>, placement: Placement) -> Mat<S> {
    let (n, k) = frame.shape();
    let mut basis: Vec<Vec<S>> = (0..k).map(|j| frame.col(j).to_vec()).collect();
    let mut used = vec![false; n];
    let residual = |basis: &[Vec<S>], i: usize| -> Vec<S> {
        let mut v = vec![S::zero(); n];
        v[i] = S::one();
        for _pass in 0..2 {
            for q in basis {
                // v ← v − q (q^* v)
                let mut ip = S::zero();
                for r in 0..n {
                    ip += q[r].conj() * v[r];
                }
                for r in 0..n {
                    v[r] -= q[r] * ip;
                }
            }
        }
        v
    };
    let mut complement = Vec::with_capacity(n - k);
    while basis.len() < n {
        let mut best: Option<(usize, Vec<S>, f64)> = None;
        for i in (0..n).filter(|&i| !used[i]) {
            let v = residual(&basis, i);
            let norm = v.iter().map(|x| x.abs2()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|b| norm > b.2 + 1e-12) {
                best = Some((i, v, norm));
            }
        }
        let (i, v, norm) = best.expect("standard basis spans the space");
        used[i] = true;
        let v: Vec<S> = v.into_iter().map(|x| x.scale(1.0 / norm)).collect();
        basis.push(v.clone());
        complement.push(v);
    }
    let comp = Mat::from_col_major(n, n - k, complement.concat());
    match placement {
        Placement::FirstCols => Mat::hstack(frame, &comp),
        Placement::LastCols => Mat::hstack(&comp, frame),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eigenvalues, Quaternion};
    use crate::random::sample_haar_stiefel;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn completion_props<S: Scalar>() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, k) in [(3, 1), (4, 2), (5, 3), (6, 6)] {
            let x = sample_haar_stiefel::<S, _>(n, k, &mut rng);
            let g = complete_to_unitary(&x, Placement::LastCols);
            assert!(g.isometry_defect() < 1e-12);
            assert!((&(&g * &xhat0::<S>(n, k)) - &x).frob_norm() < 1e-12);
            let g = complete_to_unitary(&x, Placement::FirstCols);
            assert!((&(&g * &x0::<S>(n, k)) - &x).frob_norm() < 1e-12);
        }
        let g = complete_to_unitary(&xhat0::<S>(5, 2), Placement::LastCols);
        assert!((&g - &Mat::identity(5)).frob_norm() < 1e-15);
    }

    #[test]
    fn completions_are_unitary() {
        completion_props::<f64>();
        completion_props::<Complex64>();
        completion_props::<Quaternion>();
    }

    #[test]
    fn projection_and_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let y = sample_haar_stiefel::<Quaternion, _>(5, 3, &mut rng);
        let u = sample_haar_stiefel::<Quaternion, _>(3, 3, &mut rng);
        let p = projection(&y);
        let p2 = projection(&(&y * &u));
        assert!((p.as_mat() - p2.as_mat()).frob_norm() < 1e-12);
        assert!((&(p.as_mat() * p.as_mat()) - p.as_mat()).frob_norm() < 1e-12);
        assert!((p.trace() - 3.0).abs() < 1e-12);
        let a = GrassmannPoint::new(StiefelFrame::new(y.clone()).unwrap());
        let b = GrassmannPoint::new(StiefelFrame::new(&y * &u).unwrap());
        assert!(a.same_point(&b));

        let x = sample_haar_stiefel::<Quaternion, _>(5, 2, &mut rng);
        let w = sample_haar_stiefel::<Quaternion, _>(2, 2, &mut rng);
        let c = cos2(&y, &x).unwrap();
        let cu = cos2(&y, &(&x * &w)).unwrap();
        let rot = c.congruence(&w.adjoint());
        assert!((cu.as_mat() - rot.as_mat()).frob_norm() < 1e-12);
        let ev = eigenvalues(&c).unwrap();
        assert!(ev.iter().all(|&l| l > -1e-12 && l < 1.0 + 1e-12));
    }

    #[test]
    fn contained_and_orthogonal() {
        let y = x0::<f64>(5, 3);
        let x = x0::<f64>(5, 2);
        assert!((cos2(&y, &x).unwrap().as_mat() - &Mat::identity(2)).frob_norm() < 1e-15);
        let x = xhat0::<f64>(5, 2);
        assert!(cos2(&y, &x).unwrap().as_mat().frob_norm() < 1e-15);
    }
}
