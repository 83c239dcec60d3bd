//! Cyclic Jacobi eigen-iteration for complex Hermitian matrices.

use num_complex::Complex64;

use super::mat::Mat;
use crate::error::{Error, Result};

/// Relative off-diagonal tolerance at which the sweep loop stops.
pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending, with unit eigenvectors as columns.
pub fn jacobi_hermitian(a: &Mat<Complex64>) -> Result<(Vec<f64>, Mat<Complex64>)> {
    let n = a.rows();
    assert!(a.is_square());
    let mut m = a.hermitian_part();
    let mut v = Mat::<Complex64>::identity(n);
    let scale = m.frob_norm();
    if scale == 0.0 || n == 1 {
        let vals = (0..n).map(|i| m[(i, i)].re).collect();
        return Ok((vals, v));
    }

    let off = |m: &Mat<Complex64>| -> f64 {
        let mut s = 0.0;
        for j in 0..n {
            for i in 0..j {
                s += m[(i, j)].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let residual = off(&m);
        if residual <= JACOBI_TOL * scale {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual: residual / scale });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let g = m[(p, q)];
                let gabs = g.norm();
                if gabs <= f64::MIN_POSITIVE || gabs < 1e-18 * scale {
                    continue;
                }
                let phase = g / gabs;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (2.0 * gabs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // V = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
                let vpp = Complex64::new(c, 0.0);
                let vpq = Complex64::new(s, 0.0);
                let vqp = -phase.conj() * s;
                let vqq = phase.conj() * c;

                // m ← m · V
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = mip * vpp + miq * vqp;
                    m[(i, q)] = mip * vpq + miq * vqq;
                }
                // m ← V^* · m
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = vpp.conj() * mpj + vqp.conj() * mqj;
                    m[(q, j)] = vpq.conj() * mpj + vqq.conj() * mqj;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                // accumulate eigenvectors
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * vpp + viq * vqp;
                    v[(i, q)] = vip * vpq + viq * vqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let vals = order.iter().map(|&i| m[(i, i)].re).collect();
    let vecs = Mat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}
