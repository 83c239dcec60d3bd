//! Gamma and Beta integrals, the fractional-integral semigroup and the
//! Capelli inverse.

use super::{fixture_rng, ln_delta, random_cone_point, GAMMA_TILT};
use crate::algebra::{sqrt_psd, Scalar};
use crate::cone::special::gamma;
use crate::cone::{
    beta_cone, capelli_coefficient, cayley::CAYLEY_TOL, cayley_calibrate, delta_polynomial, frac_integral_mc,
    frac_integral_power, frac_integral_quad_k1, frac_integral_quad_k1_weighted, gamma_cone, quad_rep,
};
use crate::error::{Error, Result};
use crate::random::{mc_expect, mc_expect_vec, BartlettSampler, IntervalBoxSampler};
use crate::suite::config::{CheckConfig, CheckId};
use crate::suite::report::{CheckReport, Detail, Estimate, Provenance, Reference};

const QUAD_NODES: usize = 64;

pub(crate) fn gamma_integral<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, k) = (cfg.field, cfg.k);
    let lambda = cfg.lambda.expect("resolved");
    let c = cfg.t.expect("resolved");
    let nk = cfg.nk();
    if !(c > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {c}")));
    }
    if !(lambda > nk - 1.0) {
        return Err(Error::Domain(format!("Gamma integral converges for lambda > N/k - 1 = {}, got {lambda}", nk - 1.0)));
    }
    let proposal = BartlettSampler::for_gamma_weight(field, k, lambda, c, GAMMA_TILT)?;
    // ∫_Ω e^{−tr(s t)} Δ(s)^λ dι(s) with t = c I and dι = Δ^{−N/k} ds.
    let est = mc_expect(&cfg.mc(1), |rng| {
        let (s, ln_inv_q) = proposal.sample::<S, _>(rng);
        Ok((-c * s.trace() + (lambda - nk) * ln_delta(&s)? + ln_inv_q).exp())
    })?;
    let reference = gamma_cone(field, k, lambda)? * c.powf(-(k as f64) * lambda);
    let d = Detail::mc("integral", &est, reference, cfg.z_threshold);
    let notes = vec![format!("relative stderr {:.3e}", est.stderr / reference.abs())];
    Ok(CheckReport::from_details(
        CheckId::GammaIntegral,
        cfg,
        Estimate::Mc(est),
        Reference { value: reference, provenance: Provenance::Paper, source: "Gamma_Omega(lambda) Delta(t)^(-lambda), product formula".into() },
        vec![d],
        notes,
    ))
}

pub(crate) fn beta_integral<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, k) = (cfg.field, cfg.k);
    let (lambda, mu) = (cfg.lambda.expect("resolved"), cfg.mu.expect("resolved"));
    let nk = cfg.nk();
    if !(lambda > nk - 1.0 && mu > nk - 1.0) {
        return Err(Error::Domain(format!("Beta integral converges for lambda, mu > N/k - 1 = {}", nk - 1.0)));
    }
    let bx = IntervalBoxSampler::new(field, k);
    let vol = bx.volume();
    let t0 = random_cone_point::<S>(k, 0.1, 0.4, &mut fixture_rng(&cfg, 1));
    let t0c = t0.complement();
    let shift_half = sqrt_psd(&t0c)?;
    // w ↦ t0 + P((I − t0)^{1/2}) w maps (0, I) onto (t0, I) with Jacobian Δ(I − t0)^{N/k}.
    let shift_vol = vol * (nk * ln_delta(&t0c)?).exp();
    // Component 0: ∫_{(0,I)} Δ(v)^{λ−N/k} Δ(I−v)^{μ−N/k} dv.
    // Component 1: the same kernel in v − t0, integrated over (t0, I).
    let est = mc_expect_vec(&cfg.mc(1), 2, |rng, out| {
        let Some(v) = bx.sample::<S, _>(rng)? else { return Ok(()) };
        out[0] = vol * ((lambda - nk) * ln_delta(&v)? + (mu - nk) * ln_delta(&v.complement())?).exp();
        let u = t0.add(&quad_rep(&shift_half, &v)?);
        out[1] = shift_vol * ((lambda - nk) * ln_delta(&u.sub(&t0))? + (mu - nk) * ln_delta(&u.complement())?).exp();
        Ok(())
    })?;
    let b = beta_cone(field, k, lambda, mu)?;
    let shift_factor = (ln_delta(&t0c)? * (lambda + mu - nk)).exp();
    let e0 = est.component(0);
    // Sample by sample the shifted integrand is Δ(I − t0)^{λ+μ−N/k} times the plain one.
    let details = vec![
        Detail::mc("Beta integral on (0, I)", &e0, b, cfg.z_threshold),
        Detail::exact("kernel integral on (t0, I) over the Beta integral", est.mean[1] / est.mean[0], shift_factor, cfg.tol),
    ];
    Ok(CheckReport::from_details(
        CheckId::BetaIntegral,
        cfg,
        Estimate::Mc(e0),
        Reference { value: b, provenance: Provenance::Paper, source: "B_Omega(lambda, mu) = Gamma_Omega(lambda) Gamma_Omega(mu) / Gamma_Omega(lambda + mu)".into() },
        details,
        vec![],
    ))
}

/// `I^λ e^t (s) = Σ_j s^{λ+j} / Γ(λ + j + 1)`.
fn frac_exp_series(lambda: f64, s: f64) -> f64 {
    let mut term = s.powf(lambda) / gamma(lambda + 1.0);
    let mut sum = term;
    for j in 1..200 {
        term *= s / (lambda + j as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

pub(crate) fn frac_semigroup<S: Scalar>(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, k) = (cfg.field, cfg.k);
    let (lambda, mu) = (cfg.lambda.expect("resolved"), cfg.mu.expect("resolved"));
    let s = cfg.t.expect("resolved");
    if k == 1 {
        if !(lambda > 0.0 && mu > 0.0 && s > 0.0) {
            return Err(Error::Domain("rank-one semigroup check needs lambda, mu, s > 0".into()));
        }
        // I^μ e^t behaves like t^μ near 0, so the outer rule carries that power.
        let inner = |t: f64| -> f64 {
            if t == 0.0 {
                return 1.0 / gamma(mu + 1.0);
            }
            frac_integral_quad_k1(f64::exp, mu, t).map(|v| v / t.powf(mu)).unwrap_or(f64::NAN)
        };
        let composed = frac_integral_quad_k1_weighted(inner, lambda, mu, s, QUAD_NODES)?;
        let direct = frac_integral_quad_k1(f64::exp, lambda + mu, s)?;
        let series = frac_exp_series(lambda + mu, s);
        let tol = cfg.tol;
        let details = vec![
            Detail::exact("I^lambda I^mu exp against I^(lambda+mu) exp", composed, direct, tol),
            Detail::exact("I^lambda I^mu exp against series", composed, series, tol),
            Detail::exact("I^(lambda+mu) exp against series", direct, series, tol),
        ];
        return Ok(CheckReport::from_details(
            CheckId::FracSemigroup,
            cfg,
            Estimate::Exact(composed),
            Reference { value: direct, provenance: Provenance::Derived, source: "Gauss-Jacobi quadrature of I^(lambda+mu) exp".into() },
            details,
            vec![format!("series value {series}")],
        ));
    }
    let nu = cfg.nu.expect("resolved");
    let nk = cfg.nk();
    // I^μ Δ^{ν−N/k} = c_μ Δ^{μ+ν−N/k}, then I^λ of that, against I^{λ+μ} directly.
    let c_mu = frac_integral_power(field, k, mu, nu)?;
    let c_lambda = frac_integral_power(field, k, lambda, mu + nu)?;
    let c_sum = frac_integral_power(field, k, lambda + mu, nu)?;
    let s_pt = random_cone_point::<S>(k, 0.5, 1.0, &mut fixture_rng(&cfg, 1));
    let ld = ln_delta(&s_pt)?;
    let exact_val = c_sum * (ld * (lambda + mu + nu - nk)).exp();
    let mut details = vec![Detail::exact("coefficient of I^lambda I^mu against I^(lambda+mu)", c_mu * c_lambda, c_sum, cfg.tol)];
    let mut notes = Vec::new();
    if lambda > nk - 1.0 {
        let est = frac_integral_mc(
            |t: &crate::algebra::HermMatrix<S>| {
                c_mu * crate::algebra::delta_det(t).map(|d| d.powf(mu + nu - nk)).unwrap_or(f64::NAN)
            },
            lambda,
            &s_pt,
            &cfg.mc(1),
        )?;
        details.push(Detail::mc("Monte Carlo I^lambda of I^mu Delta power", &est, exact_val, cfg.z_threshold));
    } else {
        notes.push(format!("Monte Carlo part skipped: lambda <= N/k - 1 = {}", nk - 1.0));
    }
    Ok(CheckReport::from_details(
        CheckId::FracSemigroup,
        cfg,
        Estimate::Exact(c_mu * c_lambda),
        Reference { value: c_sum, provenance: Provenance::Paper, source: "Gamma_Omega(nu) / Gamma_Omega(lambda + mu + nu)".into() },
        details,
        notes,
    ))
}

pub(crate) fn capelli_inverse(cfg: CheckConfig) -> Result<CheckReport> {
    let (field, k) = (cfg.field, cfg.k);
    let m = cfg.m.expect("resolved");
    let mu = cfg.mu.expect("resolved");
    let nk = cfg.nk();
    if m == 0 {
        return Err(Error::Domain("m >= 1 required".into()));
    }
    // I^m Δ^{μ−N/k} = c Δ^{m+μ−N/k}, and Δ(∂)^m brings Δ^{m+μ−N/k} back to Δ^{μ−N/k}.
    let up = frac_integral_power(field, k, m as f64, mu)?;
    let down = capelli_coefficient(field, k, m as f64 + mu - nk, m);
    let mut details = vec![Detail::exact("Delta(d)^m I^m on Delta^(mu - N/k)", up * down, 1.0, cfg.tol)];

    let op = cayley_calibrate(field, k)?;
    let defect = op.exp_defect(64, cfg.seed)?;
    details.push(Detail {
        label: "Delta(d) exp(tr(s y*)) = Delta(y) exp(tr(s y*))".into(),
        estimate: defect,
        stderr: None,
        reference: 0.0,
        z: None,
        residual: Some(defect),
        pass: defect <= CAYLEY_TOL,
    });

    // Symbolic: Δ(∂)^m Δ^p = coefficient · Δ^{p−m} for the integer power p = m + 1.
    let p = m as u32 + 1;
    let delta = delta_polynomial(field, k);
    let mut poly = delta.pow(p);
    for _ in 0..m {
        poly = op.apply_poly(&poly);
    }
    let want = delta.pow(p - m as u32).scale(capelli_coefficient(field, k, p as f64, m));
    let scale = want.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    let gap = poly.sub(&want).terms().map(|(_, c)| c.abs()).fold(0.0, f64::max) / scale;
    details.push(Detail {
        label: format!("symbolic Delta(d)^{m} Delta^{p}"),
        estimate: gap,
        stderr: None,
        reference: 0.0,
        z: None,
        residual: Some(gap),
        pass: gap <= SYMBOLIC_TOL,
    });
    Ok(CheckReport::from_details(
        CheckId::CapelliInverse,
        cfg,
        Estimate::Exact(up * down),
        Reference { value: 1.0, provenance: Provenance::Derived, source: "telescoping of Gamma_Omega ratios against the Capelli coefficient".into() },
        details,
        vec![format!("operator has {} terms", op.num_terms())],
    ))
}

/// Relative coefficient tolerance of the symbolic application.
const SYMBOLIC_TOL: f64 = 1e-10;
