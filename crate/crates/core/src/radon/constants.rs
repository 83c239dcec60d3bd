//! Normalizing constants of the polar and bi-Stiefel decompositions and the
//! constant `C_3` relating the two fractional integrals of the profile.
//!
//! All Beta functions here are the cone Beta functions `B_Ω` of the rank
//! named in each formula.

use std::f64::consts::PI;

use crate::cone::{beta_cone, c0, gamma_cone, ln_gamma_cone, n_over_k};
use crate::error::{Error, Result};
use crate::FieldTag;

fn check_split(n: usize, kp: usize, k: usize) -> Result<()> {
    if k == 0 || k > kp || k > n - kp.min(n) {
        return Err(Error::Infeasible(format!(
            "bi-Stiefel split needs 1 <= k <= k' and k <= n - k' (k + k' <= n), got n={n}, k={k}, k'={kp}"
        )));
    }
    Ok(())
}

/// `C_1(n, k', k) = π^{dnk/2} / (B_Ω(dk'/2, d(n−k')/2) Γ_Ω(dn/2))`.
pub fn c1(field: FieldTag, n: usize, kp: usize, k: usize) -> Result<f64> {
    check_split(n, kp, k)?;
    let hd = field.half_d();
    let ln = hd * (n * k) as f64 * PI.ln() - ln_gamma_cone(field, k, hd * n as f64)?;
    Ok(ln.exp() / beta_cone(field, k, hd * kp as f64, hd * (n - kp) as f64)?)
}

/// `C_2(n, k', k) = 1 / B_Ω(dk'/2, d(n−k')/2)`.
pub fn c2(field: FieldTag, n: usize, kp: usize, k: usize) -> Result<f64> {
    check_split(n, kp, k)?;
    let hd = field.half_d();
    Ok(1.0 / beta_cone(field, k, hd * kp as f64, hd * (n - kp) as f64)?)
}

/// `c_ε = ∫_{y ∈ M_{k'−k,k}, y^* y < I} Δ(I − y^* y)^ε dy`.
pub fn c_eps(field: FieldTag, k: usize, kp: usize, eps: f64) -> Result<f64> {
    if k == 0 || kp < k {
        return Err(Error::Infeasible(format!("need 1 <= k <= k', got k={k}, k'={kp}")));
    }
    if !(eps > -1.0) {
        return Err(Error::Domain(format!("c_eps needs eps > -1, got {eps}")));
    }
    let p = kp - k;
    let hd = field.half_d();
    if p == 0 {
        return Ok(1.0);
    }
    if p >= k {
        Ok(c0(field, p, k)? * beta_cone(field, k, eps + n_over_k(field, k), hd * p as f64)?)
    } else {
        Ok(c0(field, k, p)? * beta_cone(field, p, eps + n_over_k(field, p), hd * k as f64)?)
    }
}

/// `C_3 = c_ε C_0(k,k) Γ_Ω(d(k'−k)/2 + ε + N/k) / (C_0(k',k) Γ_Ω(ε + N/k))`,
/// computed at a given `ε`; the value does not depend on `ε`.
pub fn c3(field: FieldTag, k: usize, kp: usize, eps: f64) -> Result<f64> {
    let nk = n_over_k(field, k);
    let q = field.half_d() * (kp - k.min(kp)) as f64;
    let ln_ratio = ln_gamma_cone(field, k, q + eps + nk)? - ln_gamma_cone(field, k, eps + nk)?;
    Ok(c_eps(field, k, kp, eps)? * c0(field, k, k)? / c0(field, kp, k)? * ln_ratio.exp())
}

/// The closed forms printed alongside `C_3`:
/// `C_0(k'−k,k) C_0(k,k) Γ_Ω(d(k'−k)/2) / C_0(k',k)` when `k'−k ≥ k`, and
/// `C_0(k,k'−k) C_0(k,k) Γ_{Ω_{k'−k}}(dk/2) / C_0(k',k)` when `0 < k'−k < k`.
/// `None` when `k' = k`, where no form is given.
pub fn c3_printed(field: FieldTag, k: usize, kp: usize) -> Result<Option<f64>> {
    if k == 0 || kp < k {
        return Err(Error::Infeasible(format!("need 1 <= k <= k', got k={k}, k'={kp}")));
    }
    let p = kp - k;
    let hd = field.half_d();
    if p == 0 {
        return Ok(None);
    }
    let common = c0(field, k, k)? / c0(field, kp, k)?;
    let v = if p >= k {
        c0(field, p, k)? * gamma_cone(field, k, hd * p as f64)?
    } else {
        c0(field, k, p)? * gamma_cone(field, p, hd * k as f64)?
    };
    Ok(Some(v * common))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::special::gamma;

    #[test]
    fn c3_rank_one() {
        for f in FieldTag::ALL {
            let d = f.d() as f64;
            for kp in 2..5 {
                let want = gamma(d * kp as f64 / 2.0) / gamma(d / 2.0);
                for eps in [0.0, 0.7, 2.5] {
                    assert!((c3(f, 1, kp, eps).unwrap() / want - 1.0).abs() < 1e-12);
                }
                assert!((c3_printed(f, 1, kp).unwrap().unwrap() / want - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn c3_is_eps_independent() {
        for f in FieldTag::ALL {
            for (k, kp) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 4), (3, 7)] {
                let a = c3(f, k, kp, 0.0).unwrap();
                for eps in [-0.5, 0.3, 1.9] {
                    assert!((c3(f, k, kp, eps).unwrap() / a - 1.0).abs() < 1e-10, "{f} {k} {kp}");
                }
            }
        }
    }

    #[test]
    fn equal_ranks_give_one() {
        assert!((c3(FieldTag::Complex, 2, 2, 0.4).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn c1_is_c2_times_c0() {
        let f = FieldTag::Real;
        let v = c1(f, 6, 3, 2).unwrap() / (c2(f, 6, 3, 2).unwrap() * c0(f, 6, 2).unwrap());
        assert!((v - 1.0).abs() < 1e-12);
        assert!(c2(f, 4, 3, 2).is_err());
    }
}
