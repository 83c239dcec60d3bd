//! The unitaries `j(a)`, `h(a)` and the frame decompositions built on them.
//!
//! `j(a)` is written in the blocks `𝕂^{k'−k} ⊕ 𝕂^k ⊕ 𝕂^{n−k'−k} ⊕ 𝕂^k`,
//! `h(a)` in the blocks `𝕂^k ⊕ 𝕂^{n−2k} ⊕ 𝕂^k`.

use super::frames::{complete_to_unitary, Placement};
use crate::algebra::{eigenvalues, inv_sqrt_pd, sqrt_psd, HermMatrix, Mat, Scalar};
use crate::error::{Error, Result};

/// Slack allowed on `a^* a ≤ I`.
pub const CONTRACTION_TOL: f64 = 1e-12;
/// Distance from {0, 1} below which an angle eigenvalue is degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

fn gram<S: Scalar>(a: &Mat<S>) -> HermMatrix<S> {
    HermMatrix::from_mat_symmetrize(&a.adjoint_mul(a))
}

fn co_gram<S: Scalar>(a: &Mat<S>) -> HermMatrix<S> {
    HermMatrix::from_mat_symmetrize(&(a * &a.adjoint()))
}

fn check_contraction<S: Scalar>(a: &Mat<S>) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("expected a square k x k block, got {}x{}", a.rows(), a.cols())));
    }
    let ev = eigenvalues(&gram(a))?;
    if ev[0] > 1.0 + CONTRACTION_TOL {
        return Err(Error::SpectralBound(format!("a^* a <= I violated: largest eigenvalue {}", ev[0])));
    }
    Ok(ev)
}

/// `(I − a^* a)^{1/2}` and `(I − a a^*)^{1/2}`.
fn defect_roots<S: Scalar>(a: &Mat<S>) -> Result<(Mat<S>, Mat<S>)> {
    let l = sqrt_psd(&gram(a).complement())?.into_mat();
    let r = sqrt_psd(&co_gram(a).complement())?.into_mat();
    Ok((l, r))
}

/// `j(a) ∈ U(n)` for a contraction `a ∈ M_{k,k}`.
pub fn j_mat<S: Scalar>(n: usize, k: usize, kp: usize, a: &Mat<S>) -> Result<Mat<S>> {
    if k > kp || k + kp > n {
        return Err(Error::Infeasible(format!("j(a) needs k <= k' and k + k' <= n, got n={n}, k={k}, k'={kp}")));
    }
    if a.rows() != k {
        return Err(Error::Dimension(format!("a must be {k}x{k}")));
    }
    check_contraction(a)?;
    let (l, r) = defect_roots(a)?;
    let p = kp - k;
    let o4 = n - k;
    let mut j = Mat::identity(n);
    j.set_block(p, p, &l);
    j.set_block(p, o4, &a.adjoint());
    j.set_block(o4, p, &(-a));
    j.set_block(o4, o4, &r);
    Ok(j)
}

/// `h(a) ∈ U(n)` for a contraction `a ∈ M_{k,k}`, `n ≥ 2k`.
pub fn h_mat<S: Scalar>(n: usize, a: &Mat<S>) -> Result<Mat<S>> {
    let k = a.rows();
    if 2 * k > n {
        return Err(Error::Infeasible(format!("h(a) needs 2k <= n, got n={n}, k={k}")));
    }
    check_contraction(a)?;
    let (l, r) = defect_roots(a)?;
    let o4 = n - k;
    let mut h = Mat::identity(n);
    h.set_block(0, 0, &a.adjoint());
    h.set_block(0, o4, &l);
    h.set_block(o4, 0, &(-&r));
    h.set_block(o4, o4, a);
    Ok(h)
}

/// `j(b)^{-1} y_0 = j(−b) y_0`: the first `k'` columns of `j(−b)`, built
/// directly.
pub fn j_inverse_y0<S: Scalar>(n: usize, kp: usize, b: &Mat<S>) -> Result<Mat<S>> {
    let k = b.rows();
    if k > kp || k + kp > n {
        return Err(Error::Infeasible(format!("j(b) needs k <= k' and k + k' <= n, got n={n}, k={k}, k'={kp}")));
    }
    check_contraction(b)?;
    let l = sqrt_psd(&gram(b).complement())?.into_mat();
    let p = kp - k;
    let mut y = Mat::zeros(n, kp);
    for i in 0..p {
        y[(i, i)] = S::one();
    }
    y.set_block(p, p, &l);
    y.set_block(n - k, p, b);
    Ok(y)
}

/// `h(b) x̂_0 = [(I − b^* b)^{1/2}; 0; b]`.
pub fn h_on_xhat0<S: Scalar>(n: usize, b: &Mat<S>) -> Result<Mat<S>> {
    let k = b.rows();
    if 2 * k > n {
        return Err(Error::Infeasible(format!("h(b) needs 2k <= n, got n={n}, k={k}")));
    }
    check_contraction(b)?;
    let l = sqrt_psd(&gram(b).complement())?.into_mat();
    let mut y = Mat::zeros(n, k);
    y.set_block(0, 0, &l);
    y.set_block(n - k, 0, b);
    Ok(y)
}

/// For `0 < a a^* < I` and `v ∈ S_{k',k}`, find `l ∈ U(n−k)` and
/// `b = [0 a] v` with `j(a)^{-1} [v; 0] = diag(l, I_k) h(b) x̂_0`.
pub fn decompose_j_frame<S: Scalar>(n: usize, a: &Mat<S>, v: &Mat<S>) -> Result<(Mat<S>, Mat<S>)> {
    let (kp, k) = v.shape();
    let ev = check_contraction(a)?;
    if !(ev[k - 1] > DEGENERACY_TOL && ev[0] < 1.0 - DEGENERACY_TOL) {
        return Err(Error::SpectralBound(format!("need 0 < a a^* < I strictly, eigenvalues {ev:?}")));
    }
    let lhs = &j_inverse_y0(n, kp, a)? * v;
    let q = lhs.block(0, 0, n - k, k);
    let b = lhs.block(n - k, 0, k, k);
    let bev = eigenvalues(&gram(&b))?;
    if !(bev[0] < 1.0 - DEGENERACY_TOL) {
        return Err(Error::SpectralBound(format!("degenerate b: b^* b has eigenvalue {}", bev[0])));
    }
    let u = &q * inv_sqrt_pd(&gram(&b).complement())?.as_mat();
    let l = complete_to_unitary(&u, Placement::FirstCols);
    Ok((l, b))
}

/// Pieces of `w = [u r^{1/2}; v (I − r)^{1/2}]`.
#[derive(Clone, Debug)]
pub struct BiStiefel<S: Scalar> {
    pub u: Mat<S>,
    pub v: Mat<S>,
    pub r: HermMatrix<S>,
}

/// Split `w ∈ S_{n,k}` along `𝕂^{k'} ⊕ 𝕂^{n−k'}`; `r = w_1^* w_1` must lie
/// strictly inside (0, I).
pub fn bi_stiefel_decompose<S: Scalar>(w: &Mat<S>, kp: usize) -> Result<BiStiefel<S>> {
    let (n, k) = w.shape();
    if kp < k || n - kp < k {
        return Err(Error::Infeasible(format!("bi-Stiefel split needs k <= k' and k <= n - k', got n={n}, k={k}, k'={kp}")));
    }
    let w1 = w.block(0, 0, kp, k);
    let w2 = w.block(kp, 0, n - kp, k);
    let r = gram(&w1);
    let ev = eigenvalues(&r)?;
    if !(ev[k - 1] > DEGENERACY_TOL && ev[0] < 1.0 - DEGENERACY_TOL) {
        return Err(Error::RankDeficient { smallest: ev[k - 1].min(1.0 - ev[0]), threshold: DEGENERACY_TOL });
    }
    let u = &w1 * inv_sqrt_pd(&r)?.as_mat();
    let v = &w2 * inv_sqrt_pd(&r.complement())?.as_mat();
    Ok(BiStiefel { u, v, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::frames::{cos2, projection, x0, xhat0};
    use crate::random::{sample_haar_stiefel, sample_haar_unitary};
    use crate::Quaternion;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn contraction<S: Scalar>(k: usize, rng: &mut ChaCha8Rng) -> Mat<S> {
        let u = sample_haar_unitary::<S, _>(k, rng);
        let s: Vec<f64> = (0..k).map(|i| 0.15 + 0.7 * (i as f64 + 0.5) / k as f64).collect();
        let w = sample_haar_unitary::<S, _>(k, rng);
        &(&u * &Mat::diag_real(&s)) * &w
    }

    fn unitary_props<S: Scalar>() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, k, kp) in [(3, 1, 2), (4, 1, 2), (5, 2, 2), (6, 2, 3), (7, 2, 4)] {
            let a = contraction::<S>(k, &mut rng);
            let j = j_mat(n, k, kp, &a).unwrap();
            let h = h_mat(n, &a).unwrap();
            assert!(j.isometry_defect() < 1e-12 && h.isometry_defect() < 1e-12);
            // j(a)^{-1} = j(−a)
            let jm = j_mat(n, k, kp, &(-&a)).unwrap();
            assert!((&(&j * &jm) - &Mat::identity(n)).frob_norm() < 1e-12);
            assert!((&j_inverse_y0(n, kp, &a).unwrap() - &(&jm * &x0::<S>(n, kp))).frob_norm() < 1e-12);
            assert!((&h_on_xhat0(n, &a).unwrap() - &(&h * &xhat0::<S>(n, k))).frob_norm() < 1e-12);
            // projection block formula
            let p = projection(&(&j * &x0::<S>(n, kp)));
            let ll = sqrt_psd(&gram(&a).complement()).unwrap().into_mat();
            let pp = kp - k;
            let blk = |r0, c0| p.as_mat().block(r0, c0, k, k);
            assert!((&blk(pp, pp) - gram(&a).complement().as_mat()).frob_norm() < 1e-12);
            // The off-diagonal block is −(I − a^* a)^{1/2} a^*; the positive
            // sign belongs to j(−a) η_0.
            assert!((&blk(pp, n - k) + &(&ll * &a.adjoint())).frob_norm() < 1e-12);
            let pm = projection(&j_inverse_y0(n, kp, &a).unwrap());
            assert!((&pm.as_mat().block(pp, n - k, k, k) - &(&ll * &a.adjoint())).frob_norm() < 1e-12);
            assert!((&blk(n - k, n - k) - co_gram(&a).as_mat()).frob_norm() < 1e-12);
            let c = cos2(&(&j * &x0::<S>(n, kp)), &xhat0::<S>(n, k)).unwrap();
            assert!((c.as_mat() - co_gram(&a).as_mat()).frob_norm() < 1e-12);
        }
        assert!((&j_mat::<S>(5, 2, 2, &Mat::zeros(2, 2)).unwrap() - &Mat::identity(5)).frob_norm() == 0.0);
    }

    #[test]
    fn j_and_h_are_unitary() {
        unitary_props::<f64>();
        unitary_props::<Complex64>();
        unitary_props::<Quaternion>();
    }

    #[test]
    fn h_inverse_is_its_adjoint() {
        // h(a)^{-1} = h(a)^*; h(a^*) differs from it in general.
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = contraction::<Complex64>(2, &mut rng);
        let h = h_mat(5, &a).unwrap();
        let hs = h_mat(5, &a.adjoint()).unwrap();
        assert!((&(&h * &h.adjoint()) - &Mat::identity(5)).frob_norm() < 1e-12);
        assert!((&(&h * &hs) - &Mat::identity(5)).frob_norm() > 1e-3);
    }

    fn decomposition<S: Scalar>() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for (n, k, kp) in [(3, 1, 1), (3, 1, 2), (5, 2, 2), (6, 2, 3), (6, 2, 4)] {
            for _ in 0..5 {
                let a = contraction::<S>(k, &mut rng);
                let v = sample_haar_stiefel::<S, _>(kp, k, &mut rng);
                let (l, b) = decompose_j_frame(n, &a, &v).unwrap();
                assert!(l.isometry_defect() < 1e-10);
                let rhs = &(&Mat::block_diag(&l, &Mat::identity(k)) * &h_on_xhat0(n, &b).unwrap()) * &Mat::identity(k);
                let mut yv = Mat::zeros(n, k);
                yv.set_block(0, 0, &v);
                let lhs = &j_mat(n, k, kp, &(-&a)).unwrap() * &yv;
                assert!((&lhs - &rhs).frob_norm() < 1e-10, "n={n} k={k} k'={kp}");
                let mut za = Mat::zeros(k, kp);
                za.set_block(0, kp - k, &a);
                assert!((&b - &(&za * &v)).frob_norm() < 1e-12);
                assert!(eigenvalues(&gram(&b)).unwrap()[0] < 1.0);
            }
        }
    }

    #[test]
    fn j_frame_decomposition() {
        decomposition::<f64>();
        decomposition::<Complex64>();
        decomposition::<Quaternion>();
    }

    fn bi_stiefel<S: Scalar>() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, k, kp) in [(4, 1, 2), (5, 2, 2), (6, 2, 3)] {
            let w = sample_haar_stiefel::<S, _>(n, k, &mut rng);
            let d = bi_stiefel_decompose(&w, kp).unwrap();
            let rh = sqrt_psd(&d.r).unwrap().into_mat();
            let ih = sqrt_psd(&d.r.complement()).unwrap().into_mat();
            let rec = Mat::vstack(&(&d.u * &rh), &(&d.v * &ih));
            assert!((&rec - &w).frob_norm() < 1e-10);
            assert!(d.u.isometry_defect() < 1e-10 && d.v.isometry_defect() < 1e-10);
        }
        assert!(bi_stiefel_decompose(&x0::<S>(5, 2), 3).is_err());
    }

    #[test]
    fn bi_stiefel_reassembles() {
        bi_stiefel::<f64>();
        bi_stiefel::<Complex64>();
        bi_stiefel::<Quaternion>();
    }

    fn angle_spectrum<S: Scalar>() {
        // Cos²(g_x ρ j(r^{1/2})^{-1} η_0, x) has the eigenvalues of r.
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (n, k, kp) in [(4, 1, 2), (5, 2, 2), (6, 2, 3)] {
            let g = sample_haar_unitary::<S, _>(n, &mut rng);
            let x = &g * &xhat0::<S>(n, k);
            let rho = Mat::block_diag(&sample_haar_unitary::<S, _>(n - k, &mut rng), &sample_haar_unitary::<S, _>(k, &mut rng));
            let rv: Vec<f64> = (0..k).map(|i| 0.2 + 0.5 * i as f64).collect();
            let r = HermMatrix::<S>::diag(&rv).congruence(&sample_haar_unitary::<S, _>(k, &mut rng));
            let rh = sqrt_psd(&r).unwrap().into_mat();
            let y = &(&g * &rho) * &j_inverse_y0(n, kp, &rh).unwrap();
            let mut ev = eigenvalues(&cos2(&y, &x).unwrap()).unwrap();
            ev.reverse();
            for (a, b) in ev.iter().zip(&rv) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn angle_spectrum_matches_r() {
        angle_spectrum::<f64>();
        angle_spectrum::<Complex64>();
        angle_spectrum::<Quaternion>();
    }
}
