//! Haar-distributed unitary matrices and Stiefel frames.

use rand::Rng;

use crate::algebra::{Mat, Scalar};

/// Gram–Schmidt (two passes) on the columns, in place. Vectors are right
/// modules, so projections are `q (q^* v)`. The implied triangular factor
/// has a positive real diagonal, which makes the result of orthonormalizing
/// a Gaussian matrix exactly Haar distributed.
pub fn orthonormalize_columns<S: Scalar>(m: &mut Mat<S>) -> bool {
    let (n, k) = m.shape();
    for j in 0..k {
        for _pass in 0..2 {
            for i in 0..j {
                let mut ip = S::zero();
                for r in 0..n {
                    ip += m[(r, i)].conj() * m[(r, j)];
                }
                for r in 0..n {
                    let q = m[(r, i)];
                    m[(r, j)] -= q * ip;
                }
            }
        }
        let norm = (0..n).map(|r| m[(r, j)].abs2()).sum::<f64>().sqrt();
        if !(norm > 1e-300) {
            return false;
        }
        for r in 0..n {
            m[(r, j)] = m[(r, j)].scale(1.0 / norm);
        }
    }
    true
}

/// Haar-distributed frame in `S_{n,k}` (first `k` columns of a Haar unitary).
pub fn sample_haar_stiefel<S: Scalar, R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Mat<S> {
    assert!(1 <= k && k <= n, "Stiefel frame needs 1 <= k <= n, got n={n}, k={k}");
    loop {
        let mut g = Mat::<S>::gaussian(n, k, rng);
        if orthonormalize_columns(&mut g) {
            return g;
        }
    }
}

/// Haar-distributed element of `U(n, 𝕂)`.
pub fn sample_haar_unitary<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat<S> {
    sample_haar_stiefel(n, n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quaternion;
    use crate::random::mc::{mc_expect, McConfig};
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unitary_props<S: Scalar>() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=5 {
            let g = sample_haar_unitary::<S, _>(n, &mut rng);
            assert!(g.isometry_defect() < 1e-12);
            assert!((&(&g * &g.adjoint()) - &Mat::identity(n)).frob_norm() < 1e-12);
        }
    }

    #[test]
    fn unitaries_are_unitary() {
        unitary_props::<f64>();
        unitary_props::<Complex64>();
        unitary_props::<Quaternion>();
    }

    #[test]
    fn real_n1_is_a_fair_sign() {
        let e = mc_expect(&McConfig::new(10_000, 8), |r| Ok(sample_haar_unitary::<f64, _>(1, r)[(0, 0)])).unwrap();
        assert!(e.mean.abs() < 3.0 * 0.01 + 1e-9);
    }

    fn first_entry_moment<S: Scalar>() {
        let n = 4;
        let e = mc_expect(&McConfig::new(40_000, 11), |r| Ok(sample_haar_unitary::<S, _>(n, r)[(0, 0)].abs2())).unwrap();
        assert!(e.z_score(1.0 / n as f64).abs() < 4.0, "{} {:?}", S::FIELD, e);
    }

    #[test]
    fn first_entry_has_mean_one_over_n() {
        first_entry_moment::<f64>();
        first_entry_moment::<Complex64>();
        first_entry_moment::<Quaternion>();
    }
}
