//! Frames, Grassmann points and the special unitaries.

use grassmann_radon::geometry::{
    complete_to_unitary, cos2, h_mat, h_on_xhat0, j_inverse_y0, j_mat, xhat0, GrassmannPoint, Placement, StiefelFrame,
};
use grassmann_radon::algebra::eigenvalues;
use grassmann_radon::random::{sample_haar_stiefel, sample_haar_unitary, stream_rng};
use grassmann_radon::{Mat, Quaternion, Scalar};
use num_complex::Complex64;
use proptest::prelude::*;

/// `u diag(c)` with singular values in (0, 0.95): a strict contraction.
fn contraction<S: Scalar>(k: usize, seed: u64) -> Mat<S> {
    let mut rng = stream_rng(seed, 1);
    let u = sample_haar_unitary::<S, _>(k, &mut rng);
    let c: Vec<f64> = (0..k).map(|i| 0.95 * ((seed >> (8 * i)) & 0xff) as f64 / 255.0).collect();
    &u * &Mat::diag_real(&c)
}

fn check_special<S: Scalar>(n: usize, k: usize, kp: usize, seed: u64) -> Result<(), TestCaseError> {
    let b = contraction::<S>(k, seed);
    let h = h_mat(n, &b).unwrap();
    prop_assert!(h.isometry_defect() < 1e-10);
    let hx = h_on_xhat0(n, &b).unwrap();
    prop_assert!((&(&h * &xhat0::<S>(n, k)) - &hx).frob_norm() < 1e-10);
    let j = j_mat(n, k, kp, &b).unwrap();
    prop_assert!(j.isometry_defect() < 1e-10);
    let jy = j_inverse_y0(n, kp, &b).unwrap();
    prop_assert!(jy.isometry_defect() < 1e-10);
    // j(b)^{-1} y_0 are the first k' columns of j(b)^*.
    prop_assert!((&j.adjoint().columns(0, kp) - &jy).frob_norm() < 1e-10);
    Ok(())
}

fn check_angles<S: Scalar>(n: usize, k: usize, kp: usize, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = stream_rng(seed, 2);
    let y = sample_haar_stiefel::<S, _>(n, kp, &mut rng);
    let x = sample_haar_stiefel::<S, _>(n, k, &mut rng);
    let g = complete_to_unitary(&y, Placement::FirstCols);
    prop_assert!(g.isometry_defect() < 1e-10);
    prop_assert!((&g.columns(0, kp) - &y).frob_norm() < 1e-10);
    let perp = g.columns(kp, n - kp);
    let c = cos2(&y, &x).unwrap();
    let s = cos2(&perp, &x).unwrap();
    prop_assert!((&c.add(&s).into_mat() - &Mat::identity(k)).frob_norm() < 1e-10);
    for e in eigenvalues(&c).unwrap() {
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&e));
    }
    let u = sample_haar_unitary::<S, _>(k, &mut rng);
    let p = GrassmannPoint::new(StiefelFrame::new(x.clone()).unwrap());
    let q = GrassmannPoint::new(StiefelFrame::new(&x * &u).unwrap());
    prop_assert!(p.same_point(&q));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn special_unitaries(seed in any::<u64>(), k in 1usize..3, extra in 0usize..3, gap in 0usize..2) {
        let kp = k + gap;
        let n = (2 * k).max(k + kp) + extra;
        check_special::<f64>(n, k, kp, seed)?;
        check_special::<Complex64>(n, k, kp, seed)?;
        check_special::<Quaternion>(n, k, kp, seed)?;
    }

    #[test]
    fn angles_and_subspaces(seed in any::<u64>(), k in 1usize..4, kp in 1usize..4, extra in 0usize..3) {
        let n = k.max(kp) + 1 + extra;
        check_angles::<f64>(n, k, kp, seed)?;
        check_angles::<Complex64>(n, k, kp, seed)?;
        check_angles::<Quaternion>(n, k, kp, seed)?;
    }
}
