//! The mean-value operator, the dual-type operator and the rank-one
//! inversion.

use super::{fixture_rng, random_cone_point, sqrt_mat, GammaRatioBeta, WeightedFrac};
use crate::algebra::{Mat, Scalar};
use crate::cone::beta_cone;
use crate::error::{Error, Result};
use crate::geometry::{h_on_xhat0, j_inverse_y0};
use crate::radon::operators::{completion_last, t_draw, w_draw};
use crate::radon::roundtrip::test_matrix;
use crate::radon::{c2, c3, round_trip_k1, InversionOptions, Invariance, InvariantFunction, Radon, RoundTripConfig, TestFunction};
use crate::random::{mc_expect, mc_expect_vec, sample_haar_stiefel, sample_haar_unitary};
use crate::suite::config::{CheckConfig, CheckId};
use crate::suite::report::{CheckReport, Detail, Estimate, Provenance, Reference};

pub(crate) fn lemma43<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, n, k) = (cfg.field, cfg.n(), cfg.k);
    let hd = field.half_d();
    // Deliberately not right-U(k) invariant: the formula holds for functions on frames.
    let f = InvariantFunction::<S>::new(n, k, Invariance::None, "|w11|^2 + |w_nk|^4", move |w| {
        w[(0, 0)].abs2() + w[(n - 1, k - 1)].abs2().powi(2)
    })?;
    let x = sample_haar_stiefel::<S, _>(n, k, &mut fixture_rng(&cfg, 1));
    let g_x = completion_last(&x, None);
    let (a, b) = (hd * k as f64, hd * (n - k) as f64);
    // Δ(r)^{d/2−1} Δ(I−r)^{d(n−2k+1)/2−1} is the Beta(dk/2, d(n−k)/2) kernel.
    let beta = GammaRatioBeta::new(field, k, a, b)?;
    let scale = c2(field, n, k, k)? * beta_cone(field, k, a, b)?;
    let est = mc_expect_vec(&cfg.mc(1), 3, |rng, out| {
        let w = sample_haar_stiefel::<S, _>(n, k, rng);
        out[0] = f.value(&w);
        out[1] = f.value(&(&g_x * &w));
        let r = beta.sample::<S>(rng)?;
        let u = sample_haar_unitary::<S, _>(k, rng);
        let bm = &u * &sqrt_mat(&r)?;
        out[2] = scale * w_draw(&f, &g_x, &h_on_xhat0(n, &bm)?, rng)?;
        Ok(())
    })?;
    let (p, q) = (hd, hd * n as f64);
    let want = 1.0 / n as f64 + p * (p + 1.0) / (q * (q + 1.0));
    let z = cfg.z_threshold;
    let rhs = est.component(2);
    let details = vec![
        Detail::mc("integral of f(w) dw", &est.component(0), want, z),
        Detail::mc("integral of f(g_x w) dw", &est.component(1), want, z),
        Detail::mc("C_2 integral of the mean-value operator over the Beta kernel", &rhs, want, z),
        Detail::mc_diff("mean-value side against f(g_x w)", rhs.mean, est.mean[1], est.linear(&[0.0, -1.0, 1.0]).stderr, z),
    ];
    Ok(CheckReport::from_details(
        CheckId::Lemma43,
        cfg,
        Estimate::Mc(rhs),
        Reference { value: want, provenance: Provenance::Derived, source: "moments of |w_ij|^2 ~ Beta(d/2, d(n-1)/2)".into() },
        details,
        vec![],
    ))
}

pub(crate) fn prop44<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, n, k, kp) = (cfg.field, cfg.n(), cfg.k, cfg.kp());
    let nk = cfg.nk();
    let eps = cfg.eps.expect("resolved");
    if !(eps > -1.0) {
        return Err(Error::Domain(format!("eps > -1 required, got {eps}")));
    }
    let q = field.half_d() * (kp - k) as f64;
    let f = InvariantFunction::trace_projection(test_matrix::<S>(n, cfg.seed), k)?;
    let phi = Radon::new(&f, kp).symmetrized(true);
    let mut fx = fixture_rng(&cfg, 1);
    let x = sample_haar_stiefel::<S, _>(n, k, &mut fx);
    let g_x = completion_last(&x, None);
    let s0 = random_cone_point::<S>(k, 0.5, 0.9, &mut fx);
    // Φ_1(s) = Δ(s)^{dk'/2−N/k} 𝓣_{s^{1/2}}φ(x), Φ_0(r) = Δ(r)^{dk/2−N/k} E_u 𝓦_{u r^{1/2}}f(x).
    let lhs_frac = WeightedFrac::new(eps + nk, kp, &s0)?;
    let rhs_frac = WeightedFrac::new(q + eps + nk, k, &s0)?;
    let lhs = mc_expect(&cfg.mc(1), |rng| {
        let (t, w) = lhs_frac.draw(rng)?;
        let jy0 = j_inverse_y0(n, kp, &sqrt_mat(&t)?)?;
        Ok(w * t_draw(&phi, &g_x, &jy0, k, true, rng)?)
    })?;
    let rhs = mc_expect(&cfg.mc(2), |rng| {
        let (t, w) = rhs_frac.draw(rng)?;
        let u = sample_haar_unitary::<S, _>(k, rng);
        let b: Mat<S> = &u * &sqrt_mat(&t)?;
        Ok(w * w_draw(&f, &g_x, &h_on_xhat0(n, &b)?, rng)?)
    })?;
    let c3v = c3(field, k, kp, eps)?;
    let z = cfg.z_threshold;
    let details = vec![Detail::mc_diff(
        "I^(eps+N/k) Phi_1 against C3 I^(q+eps+N/k) Phi_0",
        lhs.mean,
        c3v * rhs.mean,
        lhs.stderr.hypot(c3v * rhs.stderr),
        z,
    )];
    let ratio = lhs.mean / rhs.mean;
    Ok(CheckReport::from_details(
        CheckId::Prop44,
        cfg,
        Estimate::Mc(lhs),
        Reference { value: c3v * rhs.mean, provenance: Provenance::Derived, source: "C3 times the Monte Carlo mean-value side".into() },
        details,
        vec![format!("C3 = {c3v}, estimated ratio {ratio}")],
    ))
}

pub(crate) fn lemma45_limit<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (n, k) = (cfg.n(), cfg.k);
    let zeta = cfg.zeta.expect("resolved");
    let levels = cfg.levels.expect("resolved");
    let f = InvariantFunction::trace_projection(test_matrix::<S>(n, cfg.seed), k)?;
    let x = sample_haar_stiefel::<S, _>(n, k, &mut fixture_rng(&cfg, 1));
    let g_x = completion_last(&x, None);
    let truth = f.value(&x);
    let cs: Vec<f64> = (1..=levels).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect();
    // a = c_j δ with a common δ per sample, so the levels share their randomness.
    let est = mc_expect_vec(&cfg.mc(1), levels, |rng, out| {
        let delta = sample_haar_unitary::<S, _>(k, rng);
        for (o, &c) in out.iter_mut().zip(&cs) {
            let mut inner = rng.clone();
            let hx = h_on_xhat0(n, &delta.scale(c))?;
            *o = c.powf(2.0 * k as f64 * zeta) * w_draw(&f, &g_x, &hx, &mut inner)?;
        }
        Ok(())
    })?;
    let z = cfg.z_threshold;
    let unit = |i: usize, j: usize, a: f64, b: f64| {
        let mut c = vec![0.0; levels];
        c[i] += a;
        c[j] += b;
        c
    };
    let mut details = Vec::new();
    let mut notes = Vec::new();
    for j in 2..levels {
        let (dj, dprev) = ((est.mean[j] - truth).abs(), (est.mean[j - 1] - truth).abs());
        let se = est.linear(&unit(j, j - 1, 1.0, -1.0)).stderr;
        details.push(Detail::mc_at_most(format!("|bias| at c = {} against c = {}", cs[j], cs[j - 1]), dj, dprev, se, z));
        notes.push(format!("c = {}: bias {:.3e}, ratio to previous {:.3}", cs[j], est.mean[j] - truth, dj / dprev));
    }
    let last = levels - 1;
    let first_last = est.linear(&unit(last, 1, 1.0, -1.0)).stderr;
    details.push(Detail::mc_below(
        format!("|bias| at c = {} below |bias| at c = {}", cs[last], cs[1]),
        (est.mean[last] - truth).abs(),
        (est.mean[1] - truth).abs(),
        first_last,
        z,
    ));
    // The convergence order is not known, so the extrapolation is reported only.
    let rich = est.linear(&unit(last, last - 1, 2.0, -1.0));
    notes.push(format!(
        "Richardson 2 L_J - L_(J-1) = {} (stderr {:.2e}), f(x) = {truth}, difference {:.3e}",
        rich.mean,
        rich.stderr,
        rich.mean - truth
    ));
    Ok(CheckReport::from_details(
        CheckId::Lemma45Limit,
        cfg,
        Estimate::Mc(est.component(last)),
        Reference { value: truth, provenance: Provenance::Trivial, source: "f(x) evaluated directly".into() },
        details,
        notes,
    ))
}

pub(crate) fn inversion_k1(cfg: CheckConfig) -> Result<CheckReport> {
    let rt = RoundTripConfig {
        function: TestFunction::TraceProjection,
        points: cfg.points.expect("resolved"),
        samples: cfg.samples,
        seed: cfg.seed,
        grid_size: cfg.grid_size.expect("resolved"),
        inversion: InversionOptions {
            m: cfg.m,
            fit_degree: cfg.fit_degree.expect("resolved"),
            ..InversionOptions::default()
        },
        ..RoundTripConfig::new(cfg.field, cfg.n(), cfg.kp())
    };
    let report = round_trip_k1(&rt)?;
    let err = report.rel_l2_error;
    let detail = Detail {
        label: "relative L2 error of the recovered values".into(),
        estimate: err,
        stderr: None,
        reference: 0.0,
        z: None,
        residual: Some(err),
        pass: err <= cfg.tol,
    };
    let notes = vec![format!("m = {}, C3 = {}", report.m, report.c3)];
    Ok(CheckReport::from_details(
        CheckId::InversionK1,
        cfg,
        Estimate::Exact(err),
        Reference { value: 0.0, provenance: Provenance::Derived, source: "direct evaluation of f at the test points".into() },
        vec![detail],
        notes,
    ))
}
