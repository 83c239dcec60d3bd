//! Rank-one inversion: `f(x) = lim_{s→1} (d/ds)^m I^{m−q} Φ(s) / C_3` with
//! `q = (d/2)(k'−1)`, realized on a least-squares polynomial fit of the
//! sampled profile.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::constants::c3;
use super::profile::ProfileSamples;
use crate::algebra::Scalar;
use crate::cone::special::ln_gamma;
use crate::error::{Error, Result};

/// Condition number above which the fit is rejected.
pub const MAX_FIT_CONDITION: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InversionOptions {
    /// Number of derivatives; `None` picks the smallest integer above `q`.
    pub m: Option<usize>,
    pub fit_degree: usize,
    /// Evaluation points `s_j = 1 − 2^{−j}` for `j = 1..=levels`.
    pub levels: usize,
}

impl Default for InversionOptions {
    fn default() -> Self {
        InversionOptions { m: None, fit_degree: 12, levels: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InversionResult {
    /// Richardson-extrapolated value at the last level.
    pub estimate: f64,
    pub m: usize,
    pub fit_degree: usize,
    pub condition_number: f64,
    /// Root mean square residual of the fit.
    pub fit_rms: f64,
    pub c3: f64,
    /// `(s_j, value at s_j)`.
    pub levels: Vec<(f64, f64)>,
    /// `2 L_j − L_{j−1}` for consecutive levels.
    pub richardson: Vec<f64>,
}

/// Coefficients in `s` of `Σ_j c_j T_j(u)`, `u = (2s − a − b)/(b − a)`.
fn chebyshev_to_monomial(c: &[f64], a: f64, b: f64) -> Vec<f64> {
    let deg = c.len();
    let (al, be) = (2.0 / (b - a), -(a + b) / (b - a));
    let mut out = vec![0.0; deg];
    let mut t_prev = vec![1.0];
    let mut t_cur = vec![be, al];
    for (j, &cj) in c.iter().enumerate() {
        let t = match j {
            0 => t_prev.clone(),
            1 => t_cur.clone(),
            _ => {
                // T_{j} = 2 u T_{j−1} − T_{j−2}
                let mut nx = vec![0.0; t_cur.len() + 1];
                for (i, &v) in t_cur.iter().enumerate() {
                    nx[i] += 2.0 * be * v;
                    nx[i + 1] += 2.0 * al * v;
                }
                for (i, &v) in t_prev.iter().enumerate() {
                    nx[i] -= v;
                }
                t_prev = std::mem::replace(&mut t_cur, nx);
                t_cur.clone()
            }
        };
        for (i, &v) in t.iter().enumerate() {
            out[i] += cj * v;
        }
    }
    out
}

/// Least-squares Chebyshev fit on `[a, b]`; returns coefficients, the
/// condition number of the design matrix and the rms residual.
fn fit(s: &[f64], y: &[f64], degree: usize) -> Result<(Vec<f64>, f64, f64, f64, f64)> {
    let a = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let b = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let cols = degree + 1;
    let v = DMatrix::from_fn(s.len(), cols, |i, j| {
        let u = (2.0 * s[i] - a - b) / (b - a);
        (j as f64 * u.clamp(-1.0, 1.0).acos()).cos()
    });
    let svd = v.clone().svd(true, true);
    let sv = &svd.singular_values;
    let cond = sv.max() / sv.min();
    if !(cond < MAX_FIT_CONDITION) {
        return Err(Error::IllConditioned { cond });
    }
    let rhs = DVector::from_column_slice(y);
    let coef = svd.solve(&rhs, 0.0).map_err(|e| Error::Singular(e.to_string()))?;
    let res = &v * &coef - &rhs;
    let rms = (res.norm_squared() / s.len() as f64).sqrt();
    Ok((coef.iter().cloned().collect(), cond, rms, a, b))
}

/// Recover `f(x)` from a rank-one profile of `φ = 𝓡 f`.
pub fn invert_k1<S: Scalar>(profile: &ProfileSamples<S>, opts: &InversionOptions) -> Result<InversionResult> {
    let grid = profile.scalar_grid().ok_or_else(|| Error::Config("rank-one inversion needs k = 1".into()))?;
    let field = profile.field;
    let kp = profile.kp;
    let q = field.half_d() * (kp as f64 - 1.0);
    let m = opts.m.unwrap_or(q.floor() as usize + 1);
    if !(m as f64 > q) || m == 0 {
        return Err(Error::Config(format!("need an integer m > (d/2)(k'-1) = {q}, got m={m}")));
    }
    if opts.fit_degree + 2 > grid.len() {
        return Err(Error::Config(format!(
            "fit degree {} needs at least {} grid points, got {}",
            opts.fit_degree,
            opts.fit_degree + 2,
            grid.len()
        )));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Config("profile grid must be strictly increasing".into()));
    }
    if opts.levels < 2 {
        return Err(Error::Config("Richardson extrapolation needs at least 2 levels".into()));
    }
    let y: Vec<f64> = profile.t_values.iter().map(|e| e.mean).collect();
    let (cheb, cond, rms, a, b) = fit(&grid, &y, opts.fit_degree)?;
    let mono = chebyshev_to_monomial(&cheb, a, b);

    // Φ(s) = Σ_j a_j s^{c+j}; I^λ s^{c+j} = Γ(c+j+1)/Γ(λ+c+j+1) s^{λ+c+j};
    // then m derivatives.
    let c = profile.exponent;
    let lambda = m as f64 - q;
    let terms: Vec<(f64, f64)> = mono
        .iter()
        .enumerate()
        .map(|(j, &aj)| {
            let mu = c + j as f64 + 1.0;
            let e = lambda + mu - 1.0;
            let mut coef = aj * (ln_gamma(mu) - ln_gamma(lambda + mu)).exp();
            for i in 0..m {
                coef *= e - i as f64;
            }
            (coef, e - m as f64)
        })
        .collect();
    let c3v = c3(field, 1, kp, m as f64 - q - 1.0)?;
    let eval = |s: f64| terms.iter().map(|&(cf, p)| cf * s.powf(p)).sum::<f64>() / c3v;
    let levels: Vec<(f64, f64)> = (1..=opts.levels)
        .map(|j| {
            let s = 1.0 - 0.5f64.powi(j as i32);
            (s, eval(s))
        })
        .collect();
    let richardson: Vec<f64> = levels.windows(2).map(|w| 2.0 * w[1].1 - w[0].1).collect();
    let estimate = *richardson.last().expect("at least two levels");
    Ok(InversionResult { estimate, m, fit_degree: opts.fit_degree, condition_number: cond, fit_rms: rms, c3: c3v, levels, richardson })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_conversion() {
        // T_2(u) with u = 2s − 1 on [0, 1]: 2u² − 1 = 8s² − 8s + 1.
        let m = chebyshev_to_monomial(&[0.0, 0.0, 1.0], 0.0, 1.0);
        assert!((m[0] - 1.0).abs() < 1e-14 && (m[1] + 8.0).abs() < 1e-14 && (m[2] - 8.0).abs() < 1e-14);
    }

    #[test]
    fn fit_reproduces_polynomials() {
        let s: Vec<f64> = (0..24).map(|i| 0.02 + 0.96 * i as f64 / 23.0).collect();
        let y: Vec<f64> = s.iter().map(|x| 1.0 - 2.0 * x + 0.5 * x * x * x).collect();
        let (c, cond, rms, a, b) = fit(&s, &y, 12).unwrap();
        assert!(cond < 1e6 && rms < 1e-12);
        let m = chebyshev_to_monomial(&c, a, b);
        for (i, want) in [1.0, -2.0, 0.0, 0.5].iter().enumerate() {
            assert!((m[i] - want).abs() < 1e-7, "{i} {}", m[i]);
        }
    }
}
