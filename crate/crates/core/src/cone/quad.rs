//! Gauss–Jacobi quadrature and the scalar (rank-one) fractional integral.

use super::special::gamma;
use crate::error::{Error, Result};

pub const DEFAULT_NODES: usize = 64;

/// Gauss–Jacobi rule on `[−1, 1]` for the weight `(1 − x)^α (1 + x)^β`.
#[derive(Clone, Debug)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussJacobi {
    /// Golub–Welsch: eigen-decomposition of the Jacobi matrix of the monic
    /// recurrence.
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("quadrature needs at least one node".into()));
        }
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::Domain(format!("Jacobi weight needs alpha, beta > -1, got ({alpha}, {beta})")));
        }
        let ab = alpha + beta;
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n];
        diag[0] = (beta - alpha) / (ab + 2.0);
        for i in 1..n {
            let t = 2.0 * i as f64 + ab;
            diag[i] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
        }
        for i in 1..n {
            let fi = i as f64;
            let t = 2.0 * fi + ab;
            let b = if i == 1 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * fi * (fi + alpha) * (fi + beta) * (fi + ab) / (t * t * (t + 1.0) * (t - 1.0))
            };
            off[i - 1] = b.sqrt();
        }
        let mu0 = (2f64).powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0);
        let (nodes, first) = tridiagonal_ql(diag, off)?;
        let mut pairs: Vec<(f64, f64)> = nodes.into_iter().zip(first).map(|(x, z)| (x, mu0 * z * z)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(GaussJacobi {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
            alpha,
            beta,
        })
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. Returns the
/// eigenvalues and the first component of each unit eigenvector.
fn tridiagonal_ql(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence { sweeps: iter, residual: e[l].abs() });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

/// `(I^λ f)(s) = Γ(λ)^{-1} ∫_0^s (s − t)^{λ−1} f(t) dt` by Gauss–Jacobi with
/// `nodes` points.
pub fn frac_integral_quad_k1_with(f: impl FnMut(f64) -> f64, lambda: f64, s: f64, nodes: usize) -> Result<f64> {
    frac_integral_quad_k1_weighted(f, lambda, 0.0, s, nodes)
}

/// [`frac_integral_quad_k1_with`] with the default 64 nodes.
pub fn frac_integral_quad_k1(f: impl FnMut(f64) -> f64, lambda: f64, s: f64) -> Result<f64> {
    frac_integral_quad_k1_with(f, lambda, s, DEFAULT_NODES)
}

/// `Γ(λ)^{-1} ∫_0^s (s − t)^{λ−1} t^β g(t) dt`; the `t^β` factor is
/// absorbed into the quadrature weight so `g` only needs to be smooth.
pub fn frac_integral_quad_k1_weighted(
    mut g: impl FnMut(f64) -> f64,
    lambda: f64,
    beta: f64,
    s: f64,
    nodes: usize,
) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("fractional order must be positive, got {lambda}")));
    }
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("evaluation point must be non-negative, got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let rule = GaussJacobi::new(nodes, lambda - 1.0, beta)?;
    let h = s / 2.0;
    let sum = rule.integrate(|x| g(h * (1.0 + x)));
    Ok(h.powf(lambda + beta) * sum / gamma(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn legendre_two_point() {
        let r = GaussJacobi::new(2, 0.0, 0.0).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15 && (r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14, "{:?}", r.weights);
    }

    #[test]
    fn chebyshev_weights_are_equal() {
        let r = GaussJacobi::new(10, -0.5, -0.5).unwrap();
        for (i, (&x, &w)) in r.nodes.iter().zip(&r.weights).enumerate() {
            assert!((w - PI / 10.0).abs() < 1e-13);
            let want = -((2 * i + 1) as f64 * PI / 20.0).cos();
            assert!((x - want).abs() < 1e-13);
        }
    }

    #[test]
    fn polynomials_to_degree_40() {
        // ∫_0^1 (1 − t)^{λ−1} t^p dt / Γ(λ) = Γ(p + 1) / Γ(p + 1 + λ)
        for &lam in &[0.5, 1.0, 1.7, 3.0] {
            for p in [0, 1, 5, 17, 40] {
                let got = frac_integral_quad_k1(|t| t.powi(p), lam, 1.0).unwrap();
                let want = gamma(p as f64 + 1.0) / gamma(p as f64 + 1.0 + lam);
                assert!((got - want).abs() < 1e-10 * want, "lam={lam} p={p} {got} {want}");
            }
        }
    }

    #[test]
    fn examples() {
        assert!((frac_integral_quad_k1(|_| 1.0, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-14);
        let v = frac_integral_quad_k1(|t| t, 0.5, 1.0).unwrap();
        assert!((v - 4.0 / (3.0 * PI.sqrt())).abs() < 1e-13);
        let v = frac_integral_quad_k1(|t| t * t, 2.0, 1.0).unwrap();
        assert!((v - 1.0 / 12.0).abs() < 1e-14);
        assert!(frac_integral_quad_k1(|t| t, 0.0, 1.0).is_err());
    }

    #[test]
    fn weighted_variant() {
        // Γ(λ)^{-1} ∫_0^s (s−t)^{λ−1} t^β dt = Γ(β+1)/Γ(β+1+λ) s^{λ+β}
        let (lam, beta, s) = (0.7, 1.3, 0.6);
        let got = frac_integral_quad_k1_weighted(|_| 1.0, lam, beta, s, 32).unwrap();
        let want = gamma(beta + 1.0) / gamma(beta + 1.0 + lam) * s.powf(lam + beta);
        assert!((got - want).abs() < 1e-13);
    }
}
