//! Sampling layer against known moments: Diaconis–Shahshahani trace
//! moments of Haar unitaries, Wishart and matrix Beta means.

use grassmann_radon::random::{
    mc_expect, mc_expect_vec, sample_haar_stiefel, sample_haar_unitary, BartlettSampler, McConfig, MatrixBetaSampler,
};
use grassmann_radon::{FieldTag, Quaternion, Scalar};
use num_complex::Complex64;
use proptest::prelude::*;

const Z: f64 = 4.0;

#[test]
fn unitary_trace_has_unit_second_moment() {
    // E|tr U|^2 = 1 on U(n) for n >= 1 and E(tr O)^2 = 1 on O(n) for n >= 2.
    for n in [2, 3, 5] {
        let c = mc_expect(&McConfig::new(40_000, n as u64), |rng| {
            let u = sample_haar_unitary::<Complex64, _>(n, rng);
            Ok((0..n).map(|i| u[(i, i)]).sum::<Complex64>().norm_sqr())
        })
        .unwrap();
        assert!(c.z_score(1.0).abs() < Z, "U({n}): {}", c.mean);
        let r = mc_expect(&McConfig::new(40_000, 100 + n as u64), |rng| {
            let u = sample_haar_unitary::<f64, _>(n, rng);
            Ok((0..n).map(|i| u[(i, i)]).sum::<f64>().powi(2))
        })
        .unwrap();
        assert!(r.z_score(1.0).abs() < Z, "O({n}): {}", r.mean);
    }
}

#[test]
fn unitary_trace_fourth_moment() {
    // E|tr U|^4 = 2 on U(n) for n >= 2.
    let e = mc_expect(&McConfig::new(100_000, 7), |rng| {
        let u = sample_haar_unitary::<Complex64, _>(4, rng);
        Ok((0..4).map(|i| u[(i, i)]).sum::<Complex64>().norm_sqr().powi(2))
    })
    .unwrap();
    assert!(e.z_score(2.0).abs() < Z, "{}", e.mean);
}

fn top_block_mass<S: Scalar>(n: usize, k: usize, n1: usize) -> (f64, f64) {
    let e = mc_expect(&McConfig::new(20_000, 3), |rng| {
        let x = sample_haar_stiefel::<S, _>(n, k, rng);
        Ok(x.block(0, 0, n1, k).frob_norm2())
    })
    .unwrap();
    (e.z_score((k * n1) as f64 / n as f64), e.mean)
}

#[test]
fn stiefel_top_block_carries_its_share() {
    for (n, k, n1) in [(5, 2, 2), (4, 1, 3), (6, 3, 1)] {
        for (label, (z, m)) in
            [("R", top_block_mass::<f64>(n, k, n1)), ("C", top_block_mass::<Complex64>(n, k, n1)), ("H", top_block_mass::<Quaternion>(n, k, n1))]
        {
            assert!(z.abs() < Z, "{label} n={n} k={k} n1={n1}: {m}");
        }
    }
}

#[test]
fn gamma_law_has_the_wishart_mean() {
    // For density proportional to exp(-c tr s) Delta(s)^(lambda - N/k), E s = (lambda / c) I.
    let (lambda, c) = (5.2, 1.7);
    for field in [FieldTag::Real, FieldTag::Complex, FieldTag::Quaternion] {
        let sampler = BartlettSampler::for_gamma_weight(field, 3, lambda, c, 1.0).unwrap();
        let est = grassmann_radon::dispatch_field!(field, S => mc_expect_vec(&McConfig::new(30_000, 5), 2, |rng, out| {
            let (s, _) = sampler.sample::<S, _>(rng);
            out[0] = s.as_mat()[(0, 0)].re();
            out[1] = s.as_mat()[(0, 1)].re();
            Ok(())
        }))
        .unwrap();
        assert!(est.component(0).z_score(lambda / c).abs() < Z, "{field:?}: {:?}", est.mean);
        assert!(est.component(1).z_score(0.0).abs() < Z, "{field:?}: {:?}", est.mean);
    }
}

#[test]
fn matrix_beta_mean_and_rank_one_second_moment() {
    for (k, n1, n2) in [(2, 3, 4), (1, 2, 5)] {
        let s = MatrixBetaSampler::new::<Complex64>(k, n1, n2).unwrap();
        let est = mc_expect_vec(&McConfig::new(30_000, 9), 2, |rng, out| {
            let r = s.sample::<Complex64, _>(rng)?.r;
            out[0] = r.trace();
            out[1] = r.as_mat()[(0, 0)].re().powi(2);
            Ok(())
        })
        .unwrap();
        let p = n1 as f64 / (n1 + n2) as f64;
        assert!(est.component(0).z_score(k as f64 * p).abs() < Z, "{:?}", est.mean);
        if k == 1 {
            // Scalar Beta(a, b) with a = n1, b = n2 for d = 2.
            let (a, b) = (n1 as f64, n2 as f64);
            let want = a * (a + 1.0) / ((a + b) * (a + b + 1.0));
            assert!(est.component(1).z_score(want).abs() < Z, "{:?}", est.mean);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn estimates_do_not_depend_on_shards(seed in any::<u64>(), samples in 2u64..20_000, shards in 1usize..8) {
        let f = |rng: &mut grassmann_radon::random::McRng| {
            let u = sample_haar_unitary::<Quaternion, _>(3, rng);
            Ok(u[(0, 0)].re() + u[(1, 2)].abs2())
        };
        let one = mc_expect(&McConfig::new(samples, seed).with_shards(1), f).unwrap();
        let many = mc_expect(&McConfig::new(samples, seed).with_shards(shards), f).unwrap();
        prop_assert_eq!(one.mean.to_bits(), many.mean.to_bits());
        prop_assert_eq!(one.stderr.to_bits(), many.stderr.to_bits());
    }

    #[test]
    fn haar_frames_are_isometries(seed in any::<u64>(), n in 1usize..7, k in 1usize..7) {
        prop_assume!(k <= n);
        let mut rng = grassmann_radon::random::stream_rng(seed, 0);
        prop_assert!(sample_haar_stiefel::<Quaternion, _>(n, k, &mut rng).isometry_defect() < 1e-12);
        prop_assert!(sample_haar_stiefel::<Complex64, _>(n, k, &mut rng).isometry_defect() < 1e-12);
        prop_assert!(sample_haar_stiefel::<f64, _>(n, k, &mut rng).isometry_defect() < 1e-12);
    }
}
