//! Integration formulas on matrix spaces, Stiefel manifolds and the cone.

use super::{fixture_rng, ln_delta, ln_gaussian_mass, random_cone_point, sqrt_mat, WeightedFrac, GAMMA_TILT};
use crate::algebra::{HermMatrix, Mat, Scalar};
use crate::cone::{beta_cone, c0, gamma_cone, ln_gamma_cone, quad_rep};
use crate::error::{Error, Result};
use crate::radon::{c1, c2, c3, c3_printed};
use crate::random::{
    mc_expect, mc_expect_vec, sample_haar_stiefel, sample_haar_unitary, BartlettSampler, IntervalBoxSampler, MatrixBetaSampler,
    McEstimate, McRng,
};
use crate::suite::config::{CheckConfig, CheckId};
use crate::suite::report::{CheckReport, Detail, Estimate, Provenance, Reference};

/// Second integrand for the coordinate checks: `|x_11|^2 e^{−tr x^* x}`,
/// whose integral over `M_{n,k}` is `(d/2) π^{dnk/2}`.
fn first_entry_gaussian<S: Scalar>(x: &Mat<S>) -> f64 {
    x[(0, 0)].abs2() * (-x.frob_norm2()).exp()
}

/// Direct Monte Carlo of the normalized second integrand: for a standard
/// Gaussian `x`, `π^{−dnk/2} ∫ |x_11|^2 e^{−tr x^* x} dx = E |x_11|^2`.
fn gaussian_first_entry<S: Scalar>(n: usize, k: usize, rng: &mut McRng) -> f64 {
    Mat::<S>::gaussian(n, k, rng)[(0, 0)].abs2()
}

pub(crate) fn polar_measure<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, n, k) = (cfg.field, cfg.n(), cfg.k);
    let d = field.d();
    let hd = field.half_d();
    let nk = cfg.nk();
    let a = hd * n as f64;
    let ln_mass = ln_gaussian_mass(d, n, k);
    let polar_total = c0(field, n, k)? * gamma_cone(field, k, a)?;
    let mass = ln_mass.exp();

    // x = v s^{1/2}: dx = C_0 Δ(s)^{dn/2 − N/k} dv ds.
    let ln_c0 = c0(field, n, k)?.ln();
    let prop = BartlettSampler::for_gamma_weight(field, k, a, 1.0, GAMMA_TILT)?;
    let est = mc_expect_vec(&cfg.mc(1), 2, |rng, out| {
        let v = sample_haar_stiefel::<S, _>(n, k, rng);
        let (s, ln_inv_q) = prop.sample::<S, _>(rng);
        let x = &v * &sqrt_mat(&s)?;
        out[0] = (ln_c0 - ln_mass + (a - nk) * ln_delta(&s)? + ln_inv_q).exp() * first_entry_gaussian(&x);
        out[1] = gaussian_first_entry::<S>(n, k, rng);
        Ok(())
    })?;
    let want = hd;
    let polar = est.component(0);
    let diff = est.linear(&[1.0, -1.0]);
    let z = cfg.z_threshold;
    let details = vec![
        Detail::exact("C_0 Gamma_Omega(dn/2) against pi^(dnk/2)", polar_total, mass, cfg.tol),
        Detail::mc("polar coordinates, |x11|^2 integrand / pi^(dnk/2)", &polar, want, z),
        Detail::mc("Gaussian sampling, |x11|^2 integrand / pi^(dnk/2)", &est.component(1), want, z),
        Detail::mc_diff("polar against Gaussian sampling", polar.mean, est.component(1).mean, diff.stderr, z),
    ];
    Ok(CheckReport::from_details(
        CheckId::PolarMeasure,
        cfg,
        Estimate::Exact(polar_total),
        Reference { value: mass, provenance: Provenance::Trivial, source: "product of one-dimensional Gaussian integrals".into() },
        details,
        vec![format!("second integrand reference d/2 = {want}")],
    ))
}

pub(crate) fn bistiefel_i<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, n, k, kp) = (cfg.field, cfg.n(), cfg.k, cfg.kp());
    let d = field.d();
    let hd = field.half_d();
    let nk = cfg.nk();
    let (a, b) = (hd * kp as f64, hd * (n - kp) as f64);
    let g = hd * n as f64;
    let ln_mass = ln_gaussian_mass(d, n, k);
    let c1v = c1(field, n, kp, k)?;
    let total = c1v * beta_cone(field, k, a, b)? * gamma_cone(field, k, g)?;

    // x = [u r^{1/2}; v (I − r)^{1/2}] s^{1/2}:
    // dx = C_1 Δ(r)^{a−N/k} Δ(I−r)^{b−N/k} Δ(s)^{dn/2−N/k} du dv dr ds.
    let r_prop = MatrixBetaSampler::new::<S>(k, k, k)?;
    let s_prop = BartlettSampler::for_gamma_weight(field, k, g, 1.0, GAMMA_TILT)?;
    let ln_c1 = c1v.ln();
    let est = mc_expect_vec(&cfg.mc(1), 2, |rng, out| {
        let u = sample_haar_stiefel::<S, _>(kp, k, rng);
        let v = sample_haar_stiefel::<S, _>(n - kp, k, rng);
        let r = r_prop.sample::<S, _>(rng)?;
        let (s, ln_inv_q) = s_prop.sample::<S, _>(rng);
        let rc = r.r.complement();
        let w = Mat::vstack(&(&u * &sqrt_mat(&r.r)?), &(&v * &sqrt_mat(&rc)?));
        let x = &w * &sqrt_mat(&s)?;
        let ln_w = ln_c1 - ln_mass + (a - nk) * ln_delta(&r.r)? + (b - nk) * ln_delta(&rc)? - r.log_density
            + (g - nk) * ln_delta(&s)?
            + ln_inv_q;
        out[0] = ln_w.exp() * first_entry_gaussian(&x);
        out[1] = gaussian_first_entry::<S>(n, k, rng);
        Ok(())
    })?;
    let want = hd;
    let bi = est.component(0);
    let diff = est.linear(&[1.0, -1.0]);
    let z = cfg.z_threshold;
    let mass = ln_mass.exp();
    let details = vec![
        Detail::exact("C_1 B_Omega Gamma_Omega against pi^(dnk/2)", total, mass, cfg.tol),
        Detail::mc("bi-Stiefel coordinates, |x11|^2 integrand / pi^(dnk/2)", &bi, want, z),
        Detail::mc_diff("bi-Stiefel against Gaussian sampling", bi.mean, est.component(1).mean, diff.stderr, z),
    ];
    Ok(CheckReport::from_details(
        CheckId::BistiefelI,
        cfg,
        Estimate::Exact(total),
        Reference { value: mass, provenance: Provenance::Trivial, source: "product of one-dimensional Gaussian integrals".into() },
        details,
        vec![format!("C_1 = {c1v}")],
    ))
}

/// The moment functionals `Δ(r)^a Δ(I − r)^b` used against the density.
const BETA_MOMENTS: [(f64, f64); 9] =
    [(0.5, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 0.5), (0.0, 1.0), (0.0, 2.0), (1.0, 1.0), (2.0, 1.0), (0.5, 0.5)];

pub(crate) fn bistiefel_ii<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, n, k, kp) = (cfg.field, cfg.n(), cfg.k, cfg.kp());
    let hd = field.half_d();
    let (a, b) = (hd * kp as f64, hd * (n - kp) as f64);
    let c2v = c2(field, n, kp, k)?;
    let dim = BETA_MOMENTS.len() + 1;
    // r = w_1^* w_1 for the top k' × k block of a Haar frame.
    let est = mc_expect_vec(&cfg.mc(1), dim, |rng, out| {
        let w = sample_haar_stiefel::<S, _>(n, k, rng);
        let w1 = w.block(0, 0, kp, k);
        let r = HermMatrix::from_mat_symmetrize(&w1.adjoint_mul(&w1));
        let (lr, lc) = (ln_delta(&r)?, ln_delta(&r.complement())?);
        for (o, (p, q)) in out.iter_mut().zip(BETA_MOMENTS) {
            *o = (p * lr + q * lc).exp();
        }
        out[dim - 1] = r.trace();
        Ok(())
    })?;
    // E F(r) = C_2 ∫ F(r) Δ(r)^{a−N/k} Δ(I−r)^{b−N/k} dr; for F = Δ^p Δ(I−·)^q that is C_2 B_Ω(a+p, b+q).
    let mut details = Vec::with_capacity(dim);
    for (i, (p, q)) in BETA_MOMENTS.into_iter().enumerate() {
        let ln_b = ln_gamma_cone(field, k, a + p)? + ln_gamma_cone(field, k, b + q)? - ln_gamma_cone(field, k, a + b + p + q)?;
        let want = c2v * ln_b.exp();
        details.push(Detail::mc(format!("E Delta(r)^{p} Delta(I-r)^{q}"), &est.component(i), want, cfg.z_threshold));
    }
    let tr_want = (k * kp) as f64 / n as f64;
    details.push(Detail::mc("E tr r", &est.component(dim - 1), tr_want, cfg.z_threshold));
    let head = est.component(1);
    let head_ref = details[1].reference;
    Ok(CheckReport::from_details(
        CheckId::BistiefelIi,
        cfg,
        Estimate::Mc(head),
        Reference { value: head_ref, provenance: Provenance::Paper, source: "C_2 B_Omega(dk'/2 + 1, d(n-k')/2) from the density with constant C_2".into() },
        details,
        vec![format!("C_2 = {c2v}")],
    ))
}

pub(crate) fn jacobian<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, k) = (cfg.field, cfg.k);
    let a = cfg.lambda.expect("resolved");
    let nk = cfg.nk();
    if !(a > nk - 1.0) {
        return Err(Error::Domain(format!("test density needs lambda > N/k - 1 = {}, got {a}", nk - 1.0)));
    }
    let ln_g2 = 2.0 * ln_gamma_cone(field, k, a)?;
    // F(x, y) = e^{−tr(x+y)} Δ(x)^{a−N/k} Δ(y)^{a−N/k} (1 + tr(xy)/k), normalized by Γ_Ω(a)^2.
    let big_f = |x: &HermMatrix<S>, y: &HermMatrix<S>| -> Result<f64> {
        let ln = -(x.trace() + y.trace()) + (a - nk) * (ln_delta(x)? + ln_delta(y)?) - ln_g2;
        Ok(ln.exp() * (1.0 + x.trace_product(y) / k as f64))
    };
    let xy_prop = BartlettSampler::for_gamma_weight(field, k, a, 1.0, GAMMA_TILT)?;
    let s_prop = BartlettSampler::for_gamma_weight(field, k, 2.0 * a, 1.0, GAMMA_TILT)?;
    let bx = IntervalBoxSampler::new(field, k);
    let vol = bx.volume();
    let est = mc_expect_vec(&cfg.mc(1), 2, |rng, out| {
        let (x, qx) = xy_prop.sample::<S, _>(rng);
        let (y, qy) = xy_prop.sample::<S, _>(rng);
        out[0] = big_f(&x, &y)? * (qx + qy).exp();
        let (s, qs) = s_prop.sample::<S, _>(rng);
        if let Some(r) = bx.sample::<S, _>(rng)? {
            let x = quad_rep(&crate::algebra::sqrt_psd(&s)?, &r)?;
            let y = s.sub(&x);
            out[1] = vol * big_f(&x, &y)? * (nk * ln_delta(&s)? + qs).exp();
        }
        Ok(())
    })?;
    // Independent cone Gamma laws have mean a I, so E tr(xy) = k a^2.
    let want = 1.0 + a * a;
    let (lhs, rhs) = (est.component(0), est.component(1));
    let diff = est.linear(&[1.0, -1.0]);
    let z = cfg.z_threshold;
    let details = vec![
        Detail::mc("integral over Omega x Omega", &lhs, want, z),
        Detail::mc("integral over (0, I) x Omega with Delta(s)^(N/k)", &rhs, want, z),
        Detail::mc_diff("the two sides", lhs.mean, rhs.mean, diff.stderr, z),
    ];
    Ok(CheckReport::from_details(
        CheckId::Jacobian,
        cfg,
        Estimate::Mc(rhs),
        Reference { value: want, provenance: Provenance::Derived, source: "1 + lambda^2 from the means of cone Gamma laws".into() },
        details,
        vec![],
    ))
}

pub(crate) fn switch<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, k, kp) = (cfg.field, cfg.k, cfg.kp());
    let mut fx = fixture_rng(&cfg, 1);
    let v0 = sample_haar_stiefel::<S, _>(kp, k, &mut fx);
    let u0 = sample_haar_stiefel::<S, _>(kp, k, &mut fx);
    // f_1(w) = |w_11|^2 and f_2(w) = |w_11|^4 on M_{k,k}.
    let est = mc_expect_vec(&cfg.mc(1), 6, |rng, out| {
        let u = sample_haar_stiefel::<S, _>(kp, k, rng);
        let v = sample_haar_stiefel::<S, _>(kp, k, rng);
        let vals = [v0.adjoint_mul(&u)[(0, 0)].abs2(), u.adjoint_mul(&v0)[(0, 0)].abs2(), v.adjoint_mul(&u0)[(0, 0)].abs2()];
        for (i, x) in vals.into_iter().enumerate() {
            out[i] = x;
            out[3 + i] = x * x;
        }
        Ok(())
    })?;
    // |<e, u>|^2 for a uniform unit vector u in K^{k'} has the Beta(d/2, d(k'−1)/2) law.
    let (p, s) = (field.half_d(), field.half_d() * kp as f64);
    let refs = [p / s, p * (p + 1.0) / (s * (s + 1.0))];
    let z = cfg.z_threshold;
    let names = ["f(v0* u) du", "f(u* v0) du", "f(v* u0) dv"];
    let mut details = Vec::new();
    for (j, fname) in ["|w11|^2", "|w11|^4"].into_iter().enumerate() {
        for i in 0..3 {
            details.push(Detail::mc(format!("{fname}: {}", names[i]), &est.component(3 * j + i), refs[j], z));
        }
        for (i, l) in [(0, 1), (0, 2), (1, 2)] {
            let mut c = [0.0; 6];
            c[3 * j + i] = 1.0;
            c[3 * j + l] = -1.0;
            let diff = est.linear(&c);
            details.push(Detail::mc_diff(
                format!("{fname}: {} against {}", names[i], names[l]),
                est.mean[3 * j + i],
                est.mean[3 * j + l],
                diff.stderr,
                z,
            ));
        }
    }
    Ok(CheckReport::from_details(
        CheckId::Switch,
        cfg,
        Estimate::Mc(est.component(0)),
        Reference { value: refs[0], provenance: Provenance::Derived, source: "mean of the Beta(d/2, d(k'-1)/2) law".into() },
        details,
        vec![],
    ))
}

/// Test function for the Stiefel averages: `tr(w^* w) + tr((w^* w)^2)/2 + |w_11|^2`.
fn h_test<S: Scalar>(w: &Mat<S>) -> f64 {
    let g = w.adjoint_mul(w);
    g.trace_re() + 0.5 * g.frob_norm2() + w[(0, 0)].abs2()
}

pub(crate) fn prop35<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, k, kp) = (cfg.field, cfg.k, cfg.kp());
    let nk = cfg.nk();
    let q = field.half_d() * (kp - k) as f64;
    let s0 = random_cone_point::<S>(k, 0.5, 1.0, &mut fixture_rng(&cfg, 1));
    let z = cfg.z_threshold;
    let eps_list = [cfg.eps.expect("resolved"), cfg.eps2.expect("resolved")];
    let mut details = Vec::new();
    let mut ratios: Vec<McEstimate> = Vec::new();
    let mut notes = Vec::new();
    let mut head = None;
    let c3v = c3(field, k, kp, eps_list[0])?;
    for (i, &eps) in eps_list.iter().enumerate() {
        if !(eps > -1.0) {
            return Err(Error::Domain(format!("eps > -1 required, got {eps}")));
        }
        // H_1(s) = Δ(s)^{dk'/2 − N/k} E_v H([0 s^{1/2}] v) and H_2(s) = Δ(s)^{dk/2 − N/k} E_u H(u s^{1/2}).
        let lhs_frac = WeightedFrac::new(eps + nk, kp, &s0)?;
        let rhs_frac = WeightedFrac::new(q + eps + nk, k, &s0)?;
        let lhs = mc_expect(&cfg.mc(10 + 2 * i as u64), |rng| {
            let (t, w) = lhs_frac.draw(rng)?;
            let v = sample_haar_stiefel::<S, _>(kp, k, rng);
            Ok(w * h_test(&(&sqrt_mat(&t)? * &v.block(kp - k, 0, k, k))))
        })?;
        let rhs = mc_expect(&cfg.mc(11 + 2 * i as u64), |rng| {
            let (t, w) = rhs_frac.draw(rng)?;
            let u = sample_haar_unitary::<S, _>(k, rng);
            Ok(w * h_test(&(&u * &sqrt_mat(&t)?)))
        })?;
        let c3e = c3(field, k, kp, eps)?;
        details.push(Detail::mc_diff(
            format!("eps = {eps}: I^(eps+N/k) H1 against C3 I^(q+eps+N/k) H2"),
            lhs.mean,
            c3e * rhs.mean,
            lhs.stderr.hypot(c3e * rhs.stderr),
            z,
        ));
        let ratio = lhs.mean / rhs.mean;
        let rel = (lhs.stderr / lhs.mean).hypot(rhs.stderr / rhs.mean);
        ratios.push(McEstimate { mean: ratio, stderr: ratio.abs() * rel, n_samples: lhs.n_samples, seed: lhs.seed });
        notes.push(format!("eps = {eps}: C3 from definition {c3e}"));
        if i == 0 {
            head = Some(lhs);
        }
    }
    details.push(Detail::mc_pair("C3 estimate at eps against C3 estimate at eps2", &ratios[0], &ratios[1], z));
    for (r, eps) in ratios.iter().zip(eps_list) {
        details.push(Detail::mc(format!("C3 estimate at eps = {eps} against definition"), r, c3v, z));
    }
    if let Some(printed) = c3_printed(field, k, kp)? {
        let rel = (printed - c3v).abs() / c3v.abs();
        if rel > 1e-8 {
            notes.push(format!("printed closed form for C3 gives {printed}, definition gives {c3v} (ratio {:.6}); flagged, not asserted", printed / c3v));
        } else {
            notes.push(format!("printed closed form for C3 agrees with the definition ({printed})"));
        }
    }
    let head = head.expect("two eps values");
    let head_ref = details[0].reference;
    Ok(CheckReport::from_details(
        CheckId::Prop35,
        cfg,
        Estimate::Mc(head),
        Reference { value: head_ref, provenance: Provenance::Derived, source: "C3 times the Monte Carlo right-hand side".into() },
        details,
        notes,
    ))
}
