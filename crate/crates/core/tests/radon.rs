//! Radon transform, mean-value operator and the rank-one inversion.

use grassmann_radon::radon::roundtrip::test_matrix;
use grassmann_radon::radon::{c3, radon, round_trip_k1, w_op, InvariantFunction, RoundTripConfig, TestFunction};
use grassmann_radon::random::{sample_haar_stiefel, stream_rng, McConfig};
use grassmann_radon::{FieldTag, Mat, Quaternion, Scalar};
use num_complex::Complex64;
use statrs::function::gamma::gamma;

fn closed_form_z<S: Scalar>(n: usize, k: usize, kp: usize, seed: u64) -> f64 {
    let a = test_matrix::<S>(n, seed);
    let f = InvariantFunction::trace_projection(a.clone(), k).unwrap();
    let y = sample_haar_stiefel::<S, _>(n, kp, &mut stream_rng(seed, 1));
    let est = radon(&f, &y, &McConfig::new(40_000, seed + 1)).unwrap();
    let closed = k as f64 / kp as f64 * y.adjoint_mul(&(a.as_mat() * &y)).trace_re();
    est.z_score(closed)
}

#[test]
fn radon_of_trace_projection_has_closed_form() {
    for (z, label) in [
        (closed_form_z::<Complex64>(5, 2, 3, 3), "C 5 2 3"),
        (closed_form_z::<Quaternion>(4, 1, 3, 4), "H 4 1 3"),
        (closed_form_z::<f64>(6, 2, 4, 5), "R 6 2 4"),
        (closed_form_z::<Complex64>(4, 2, 2, 6), "C 4 2 2"),
    ] {
        assert!(z.abs() < 4.0, "{label}: z = {z}");
    }
}

#[test]
fn constants_are_fixed_by_radon_and_mean_value_operators() {
    let f = InvariantFunction::<Quaternion>::constant(4, 1, 2.5);
    let y = sample_haar_stiefel::<Quaternion, _>(4, 2, &mut stream_rng(1, 1));
    let est = radon(&f, &y, &McConfig::new(1_000, 2)).unwrap();
    assert_eq!(est.mean, 2.5);
    let x = sample_haar_stiefel::<Quaternion, _>(4, 1, &mut stream_rng(1, 2));
    let b = Mat::<Quaternion>::diag_real(&[0.4]);
    let w = w_op(&f, &b, &x, &McConfig::new(1_000, 3)).unwrap();
    assert_eq!(w.mean, 2.5);
}

#[test]
fn rank_one_c3_is_a_gamma_ratio() {
    for field in [FieldTag::Real, FieldTag::Complex, FieldTag::Quaternion] {
        let hd = field.half_d();
        for kp in 2..5 {
            let want = gamma(hd * kp as f64) / gamma(hd);
            let got = c3(field, 1, kp, 0.5).unwrap();
            assert!((got - want).abs() < 1e-10 * want, "{field:?} k'={kp}: {got} vs {want}");
        }
    }
}

#[test]
fn small_round_trips_recover_the_function() {
    for (field, n, kp) in [(FieldTag::Real, 4, 2), (FieldTag::Complex, 4, 3), (FieldTag::Quaternion, 3, 2)] {
        let cfg = RoundTripConfig { samples: 20_000, points: 3, ..RoundTripConfig::new(field, n, kp) };
        let rep = round_trip_k1(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 3);
        assert!(rep.rel_l2_error < 0.05, "{field:?}: {}", rep.rel_l2_error);
        for row in &rep.rows {
            assert!(row.condition_number.is_finite());
        }
    }
    let cfg = RoundTripConfig { function: TestFunction::Constant, samples: 20_000, points: 2, ..RoundTripConfig::new(FieldTag::Complex, 3, 2) };
    for row in round_trip_k1(&cfg).unwrap().rows {
        assert!((row.recovered - 1.0).abs() < 0.02, "{}", row.recovered);
    }
}

#[test]
fn round_trip_rejects_unsupported_dimensions() {
    assert!(round_trip_k1(&RoundTripConfig::new(FieldTag::Real, 3, 3)).is_err());
    assert!(round_trip_k1(&RoundTripConfig::new(FieldTag::Real, 4, 1)).is_err());
}
