//! Scalar and matrix layer against nalgebra as an independent oracle.

use grassmann_radon::algebra::{complex_embed, delta_det, eigenvalues, polar_decompose, sqrt_psd, HermMatrix};
use grassmann_radon::{Mat, Quaternion, Scalar};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_herm<S: Scalar>(k: usize, seed: u64) -> HermMatrix<S> {
    HermMatrix::from_mat_symmetrize(&Mat::<S>::gaussian(k, k, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn to_nalgebra(m: &Mat<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn quat() -> impl Strategy<Value = Quaternion> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn quaternion_norm_is_multiplicative(a in quat(), b in quat()) {
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-12);
    }

    #[test]
    fn quaternion_product_is_associative(a in quat(), b in quat(), c in quat()) {
        let d = (a * b) * c - a * (b * c);
        prop_assert!(d.norm() < 1e-12);
    }

    #[test]
    fn real_spectrum_matches_nalgebra(k in 1usize..6, seed in any::<u64>()) {
        let a = random_herm::<f64>(k, seed);
        let mut ours = eigenvalues(&a).unwrap();
        let m = a.as_mat();
        let mut theirs: Vec<f64> =
            nalgebra::SymmetricEigen::new(DMatrix::from_fn(k, k, |i, j| m[(i, j)])).eigenvalues.iter().copied().collect();
        ours.sort_by(f64::total_cmp);
        theirs.sort_by(f64::total_cmp);
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn complex_delta_is_the_nalgebra_determinant(k in 1usize..5, seed in any::<u64>()) {
        let a = random_herm::<Complex64>(k, seed);
        let det = to_nalgebra(a.as_mat()).determinant();
        let ours = delta_det(&a).unwrap();
        prop_assert!((ours - det.re).abs() < 1e-9 * det.re.abs().max(1.0));
        prop_assert!(det.im.abs() < 1e-9 * det.re.abs().max(1.0));
    }

    #[test]
    fn quaternion_delta_squared_is_the_embedded_determinant(k in 1usize..4, seed in any::<u64>()) {
        let a = random_herm::<Quaternion>(k, seed);
        let det = to_nalgebra(&complex_embed(a.as_mat()).unwrap()).determinant();
        let ours = delta_det(&a).unwrap();
        prop_assert!((ours * ours - det.re).abs() < 1e-9 * det.re.abs().max(1.0));
    }

    #[test]
    fn polar_factors_reassemble(n in 1usize..6, extra in 0usize..3, seed in any::<u64>()) {
        let x = Mat::<Quaternion>::gaussian(n + extra, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let (v, r) = polar_decompose(&x).unwrap();
        prop_assert!(v.isometry_defect() < 1e-10);
        prop_assert!((&(&v * sqrt_psd(&r).unwrap().as_mat()) - &x).frob_norm() < 1e-9 * x.frob_norm());
        prop_assert!((r.as_mat() - &x.adjoint_mul(&x)).frob_norm() < 1e-9 * r.as_mat().frob_norm());
    }
}
