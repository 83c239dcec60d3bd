//! Importance samplers on the cone Ω and on the interval (0, I) whose
//! densities are built from elementary one-dimensional laws only.
//!
//! Densities refer to the Lebesgue measure of the trace form on the
//! self-adjoint matrices, which is `2^{(N−k)/2}` times the coordinate
//! measure (diagonal entries and real components of the upper entries).

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use std::f64::consts::{LN_2, PI};

use crate::algebra::{eigenvalues, HermMatrix, Mat, Scalar};
use crate::cone::{cone_dim, special::ln_gamma};
use crate::error::{Error, Result};
use crate::FieldTag;

/// `ln 2^{(N−k)/2}`: trace-form volume of the unit coordinate cube.
pub fn ln_trace_measure_factor(field: FieldTag, k: usize) -> f64 {
    (cone_dim(field, k) - k) as f64 / 2.0 * LN_2
}

/// Draws `s = T^* T` with `T` upper triangular: `T_jj^2 ~ Gamma(a_j, rate)`
/// and Gaussian off-diagonal components of variance `offdiag_var`.
#[derive(Clone, Debug)]
pub struct BartlettSampler {
    pub field: FieldTag,
    pub k: usize,
    pub shape: Vec<f64>,
    pub rate: f64,
    pub offdiag_var: f64,
    gammas: Vec<Gamma<f64>>,
    ln_const: f64,
}

impl BartlettSampler {
    pub fn new(field: FieldTag, k: usize, shape: Vec<f64>, rate: f64, offdiag_var: f64) -> Result<Self> {
        if shape.len() != k || shape.iter().any(|&a| !(a > 0.0)) || !(rate > 0.0) || !(offdiag_var > 0.0) {
            return Err(Error::Domain(format!(
                "Bartlett sampler needs k positive shapes, positive rate and variance (shape={shape:?}, rate={rate}, var={offdiag_var})"
            )));
        }
        let gammas = shape
            .iter()
            .map(|&a| Gamma::new(a, 1.0 / rate).map_err(|e| Error::Domain(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        // Parts of ln(1/q) that do not depend on the draw: Jacobian 2^k and
        // trace-measure factor, minus the normalizers of the 1-D laws.
        let n_off = (field.d() * k * (k - 1) / 2) as f64;
        let mut ln_const = k as f64 * LN_2 + ln_trace_measure_factor(field, k);
        for &a in &shape {
            ln_const -= LN_2 + a * rate.ln() - ln_gamma(a);
        }
        ln_const += n_off * 0.5 * (2.0 * PI * offdiag_var).ln();
        Ok(BartlettSampler { field, k, shape, rate, offdiag_var, gammas, ln_const })
    }

    /// Proposal proportional to `e^{−c tr s} Δ(s)^{λ − N/k}`, tilted by the
    /// factor `tilt` (1 reproduces that law exactly; values below 1 widen it).
    pub fn for_gamma_weight(field: FieldTag, k: usize, lambda: f64, c: f64, tilt: f64) -> Result<Self> {
        let shape = (1..=k).map(|j| lambda - field.half_d() * (j as f64 - 1.0)).collect();
        Self::new(field, k, shape, c * tilt, 1.0 / (2.0 * c * tilt))
    }

    /// Draw `s` and `ln(1/q(s))`, so that `E[F(s)/q(s)] = ∫_Ω F(s) ds`.
    pub fn sample<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> (HermMatrix<S>, f64) {
        debug_assert_eq!(S::FIELD, self.field);
        let k = self.k;
        let d = S::D;
        let mut t = Mat::<S>::zeros(k, k);
        let mut ln_inv_q = self.ln_const;
        for j in 0..k {
            let g = self.gammas[j].sample(rng);
            let tjj = g.sqrt();
            t[(j, j)] = S::from_real(tjj);
            let a = self.shape[j];
            // 1/q contribution of T_jj and the Jacobian power T_jj^{d(k-1-j)+1}
            ln_inv_q += (d * (k - 1 - j) + 1) as f64 * tjj.ln() - (2.0 * a - 1.0) * tjj.ln() + self.rate * g;
        }
        let sd = self.offdiag_var.sqrt();
        for i in 0..k {
            for j in i + 1..k {
                let mut c = [0.0; 4];
                for cc in c.iter_mut().take(d) {
                    let z: f64 = rng.sample(StandardNormal);
                    *cc = sd * z;
                    ln_inv_q += *cc * *cc / (2.0 * self.offdiag_var);
                }
                t[(i, j)] = S::from_components(&c);
            }
        }
        let s = HermMatrix::from_mat_symmetrize(&t.adjoint_mul(&t));
        (s, ln_inv_q)
    }
}

/// Uniform draws from the coordinate box containing (0, I): diagonal
/// entries in (0, 1), off-diagonal components in (−1/2, 1/2). Points of the
/// box outside (0, I) come back as `None`; the box has trace-form volume
/// `2^{(N−k)/2}`, so `E[F(v) 1_{(0,I)}(v)] · 2^{(N−k)/2} = ∫_{(0,I)} F`.
#[derive(Clone, Copy, Debug)]
pub struct IntervalBoxSampler {
    pub field: FieldTag,
    pub k: usize,
}

impl IntervalBoxSampler {
    pub fn new(field: FieldTag, k: usize) -> Self {
        IntervalBoxSampler { field, k }
    }

    pub fn volume(&self) -> f64 {
        ln_trace_measure_factor(self.field, self.k).exp()
    }

    pub fn sample<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Option<HermMatrix<S>>> {
        let k = self.k;
        let mut m = Mat::<S>::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = S::from_real(rng.random::<f64>());
        }
        for i in 0..k {
            for j in i + 1..k {
                let mut c = [0.0; 4];
                for cc in c.iter_mut().take(S::D) {
                    *cc = rng.random::<f64>() - 0.5;
                }
                let v = S::from_components(&c);
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        let v = HermMatrix::from_mat_symmetrize(&m);
        let ev = eigenvalues(&v)?;
        Ok(if ev.iter().all(|&l| l > 0.0 && l < 1.0) { Some(v) } else { None })
    }
}
