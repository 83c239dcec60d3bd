//! Self-adjoint matrices: spectral calculus, the determinant Δ, and the
//! polar decomposition `x = v r^{1/2}`.

use num_complex::Complex64;

use super::jacobi::jacobi_hermitian;
use super::mat::Mat;
use super::scalar::{FieldTag, Scalar};
use crate::error::{Error, Result};

/// Relative tolerance on `‖a − a^*‖` accepted as self-adjoint.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Rank threshold for the polar decomposition: the smallest eigenvalue of
/// `x^* x` must exceed `RANK_TOL · tr(x^* x)`.
pub const RANK_TOL: f64 = 1e-12;

/// Self-adjoint `k × k` matrix over the field; an element of the Jordan
/// algebra of the cone.
#[derive(Clone, PartialEq)]
pub struct HermMatrix<S>(Mat<S>);

impl<S: Scalar> std::fmt::Debug for HermMatrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Herm{:?}", self.0)
    }
}

impl<S: Scalar> HermMatrix<S> {
    /// Validate self-adjointness and store the exactly symmetrised matrix.
    pub fn new(m: Mat<S>) -> Result<Self> {
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotSelfAdjoint { defect });
        }
        Ok(HermMatrix(m.hermitian_part()))
    }

    /// Symmetrise without checking. For matrices that are self-adjoint by
    /// construction (`x^* x`, `P(s) t`, …) up to rounding.
    pub fn from_mat_symmetrize(m: &Mat<S>) -> Self {
        HermMatrix(m.hermitian_part())
    }

    pub fn identity(k: usize) -> Self {
        HermMatrix(Mat::identity(k))
    }

    pub fn scalar(k: usize, c: f64) -> Self {
        HermMatrix(Mat::scalar_identity(k, c))
    }

    pub fn diag(d: &[f64]) -> Self {
        HermMatrix(Mat::diag_real(d))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_mat(&self) -> &Mat<S> {
        &self.0
    }

    pub fn into_mat(self) -> Mat<S> {
        self.0
    }

    pub fn add(&self, o: &Self) -> Self {
        HermMatrix(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Self) -> Self {
        HermMatrix(&self.0 - &o.0)
    }

    pub fn scale(&self, r: f64) -> Self {
        HermMatrix(self.0.scale(r))
    }

    /// `I − self`.
    pub fn complement(&self) -> Self {
        HermMatrix::identity(self.dim()).sub(self)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace_re()
    }

    /// `Re tr(self · o)`.
    pub fn trace_product(&self, o: &Self) -> f64 {
        self.0.inner_re(&o.0)
    }

    /// Jordan product `(ab + ba)/2`.
    pub fn jordan(&self, o: &Self) -> Self {
        let ab = &self.0 * &o.0;
        let ba = &o.0 * &self.0;
        HermMatrix((&ab + &ba).scale(0.5))
    }

    /// `u · self · u^*`.
    pub fn congruence(&self, u: &Mat<S>) -> Self {
        HermMatrix::from_mat_symmetrize(&(&(u * &self.0) * &u.adjoint()))
    }

    /// Real dimension of the Jordan algebra, `N = k + (d/2) k (k − 1)`.
    pub fn real_dim(&self) -> usize {
        let k = self.dim();
        k + S::D * k * (k - 1) / 2
    }
}

/// Complex embedding `a + b j ↦ [[A, B], [−conj(B), conj(A)]]` in big-block
/// form: a quaternionic `n × k` matrix becomes a complex `2n × 2k` matrix.
pub fn complex_embed<S: Scalar>(x: &Mat<S>) -> Result<Mat<Complex64>> {
    if S::FIELD != FieldTag::Quaternion {
        return Err(Error::Domain(format!("complex_embed expects a quaternionic matrix, got field {}", S::FIELD)));
    }
    Ok(embed_unchecked(x))
}

fn embed_unchecked<S: Scalar>(x: &Mat<S>) -> Mat<Complex64> {
    let (n, k) = x.shape();
    let mut c = Mat::<Complex64>::zeros(2 * n, 2 * k);
    for j in 0..k {
        for i in 0..n {
            let (a, b) = x[(i, j)].to_complex_pair();
            c[(i, j)] = a;
            c[(i, k + j)] = b;
            c[(n + i, j)] = -b.conj();
            c[(n + i, k + j)] = a.conj();
        }
    }
    c
}

/// Inverse of [`complex_embed`] on its image (reads the top block row).
pub fn complex_unembed<S: Scalar>(c: &Mat<Complex64>) -> Mat<S> {
    let (n, k) = (c.rows() / 2, c.cols() / 2);
    Mat::from_fn(n, k, |i, j| S::from_complex_pair(c[(i, j)], c[(i, k + j)]))
}

/// Complex matrix with the same spectral data: the embedding for ℍ, the
/// entries themselves for ℝ and ℂ.
fn complex_rep<S: Scalar>(x: &Mat<S>) -> Mat<Complex64> {
    if S::FIELD == FieldTag::Quaternion {
        embed_unchecked(x)
    } else {
        Mat::from_fn(x.rows(), x.cols(), |i, j| x[(i, j)].to_complex_pair().0)
    }
}

fn from_complex_rep<S: Scalar>(c: &Mat<Complex64>) -> Mat<S> {
    if S::FIELD == FieldTag::Quaternion {
        complex_unembed(c)
    } else {
        Mat::from_fn(c.rows(), c.cols(), |i, j| S::from_complex_pair(c[(i, j)], Complex64::new(0.0, 0.0)))
    }
}

/// Eigen-decomposition `a = frame · diag(values) · frame^*`.
#[derive(Clone)]
pub struct HermEigen<S> {
    /// Jordan eigenvalues, descending.
    pub values: Vec<f64>,
    /// Unitary matrix of eigenvectors (columns).
    pub frame: Mat<S>,
}

impl<S: Scalar> std::fmt::Debug for HermEigen<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HermEigen").field("values", &self.values).field("frame", &self.frame).finish()
    }
}

/// Eigen-decomposition of a self-adjoint matrix over any of the three
/// fields. Quaternionic input goes through the complex embedding; every
/// eigenvalue there appears twice and one quaternionic eigenvector is kept
/// per pair.
pub fn eig_herm<S: Scalar>(a: &HermMatrix<S>) -> Result<HermEigen<S>> {
    let k = a.dim();
    if k == 1 {
        return Ok(HermEigen { values: vec![a.0[(0, 0)].re()], frame: Mat::identity(1) });
    }
    let c = complex_rep(&a.0);
    let (vals, vecs) = jacobi_hermitian(&c)?;
    if S::FIELD != FieldTag::Quaternion {
        return Ok(HermEigen { values: vals, frame: from_complex_rep(&vecs) });
    }

    // Each complex eigenvector [u1; u2] corresponds to the quaternionic
    // vector u1 − conj(u2) j. Greedily keep the candidate with the largest
    // component outside the quaternionic span of those already kept.
    let candidates: Vec<Vec<S>> = (0..2 * k)
        .map(|c| (0..k).map(|i| S::from_complex_pair(vecs[(i, c)], -vecs[(k + i, c)].conj())).collect())
        .collect();
    let mut used = vec![false; 2 * k];
    let mut kept: Vec<(f64, Vec<S>)> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(usize, f64, Vec<S>)> = None;
        for (ci, cand) in candidates.iter().enumerate() {
            if used[ci] {
                continue;
            }
            let mut r = cand.clone();
            for (_, q) in &kept {
                let mut ip = S::zero();
                for (qi, ri) in q.iter().zip(&r) {
                    ip += qi.conj() * *ri;
                }
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= *qi * ip;
                }
            }
            let norm = r.iter().map(|x| x.abs2()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|b| norm > b.1 + 1e-12) {
                best = Some((ci, norm, r));
            }
        }
        let (ci, norm, r) = best.expect("candidate set is never exhausted before k picks");
        used[ci] = true;
        let unit: Vec<S> = r.iter().map(|x| x.scale(1.0 / norm)).collect();
        kept.push((vals[ci], unit));
    }
    kept.sort_by(|a, b| b.0.total_cmp(&a.0));
    let values = kept.iter().map(|(v, _)| *v).collect();
    let frame = Mat::from_fn(k, k, |i, j| kept[j].1[i]);
    Ok(HermEigen { values, frame })
}

/// Jordan eigenvalues, descending. For ℍ the paired eigenvalues of the
/// embedding are deduplicated.
pub fn eigenvalues<S: Scalar>(a: &HermMatrix<S>) -> Result<Vec<f64>> {
    let k = a.dim();
    if k == 1 {
        return Ok(vec![a.0[(0, 0)].re()]);
    }
    if S::FIELD == FieldTag::Real && k == 2 {
        let (p, q, r) = (a.0[(0, 0)].re(), a.0[(1, 1)].re(), a.0[(0, 1)].abs2());
        let m = 0.5 * (p + q);
        let h = (0.25 * (p - q) * (p - q) + r).sqrt();
        return Ok(vec![m + h, m - h]);
    }
    let (vals, _) = jacobi_hermitian(&complex_rep(&a.0))?;
    if S::FIELD == FieldTag::Quaternion {
        Ok(vals.iter().step_by(2).copied().collect())
    } else {
        Ok(vals)
    }
}

/// The determinant Δ on the Jordan algebra: the product of the Jordan
/// eigenvalues. Over ℍ this equals `sqrt(det(complex_embed(a)))` on the cone.
pub fn delta_det<S: Scalar>(a: &HermMatrix<S>) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().product())
}

/// Checked variant of [`delta_det`] for arbitrary matrices.
pub fn delta_det_of<S: Scalar>(a: &Mat<S>) -> Result<f64> {
    delta_det(&HermMatrix::new(a.clone())?)
}

/// Apply a real function to the spectrum: `u f(Λ) u^*`.
pub fn spectral_map<S: Scalar>(a: &HermMatrix<S>, f: impl Fn(f64) -> f64) -> Result<HermMatrix<S>> {
    let k = a.dim();
    if k == 1 {
        return Ok(HermMatrix::scalar(1, f(a.0[(0, 0)].re())));
    }
    // Functional calculus commutes with the embedding, so no quaternionic
    // eigenvectors are needed here.
    let c = complex_rep(&a.0);
    let (vals, u) = jacobi_hermitian(&c)?;
    let fd = Mat::<Complex64>::diag_real(&vals.iter().map(|&v| f(v)).collect::<Vec<_>>());
    let m = &(&u * &fd) * &u.adjoint();
    Ok(HermMatrix::from_mat_symmetrize(&from_complex_rep(&m)))
}

/// Positive square root of a positive semidefinite matrix; tiny negative
/// eigenvalues from rounding are clamped to zero.
pub fn sqrt_psd<S: Scalar>(a: &HermMatrix<S>) -> Result<HermMatrix<S>> {
    spectral_map(a, |v| v.max(0.0).sqrt())
}

pub fn inv_sqrt_pd<S: Scalar>(a: &HermMatrix<S>) -> Result<HermMatrix<S>> {
    spectral_map(a, |v| 1.0 / v.sqrt())
}

pub fn inverse_pd<S: Scalar>(a: &HermMatrix<S>) -> Result<HermMatrix<S>> {
    spectral_map(a, |v| 1.0 / v)
}

/// Polar decomposition `x = v r^{1/2}` with `v` an isometry and `r = x^* x`.
pub fn polar_decompose<S: Scalar>(x: &Mat<S>) -> Result<(Mat<S>, HermMatrix<S>)> {
    let (n, k) = x.shape();
    if n < k {
        return Err(Error::Dimension(format!("polar decomposition needs n >= k, got {n}x{k}")));
    }
    let r = HermMatrix::from_mat_symmetrize(&x.adjoint_mul(x));
    let tr = r.trace();
    let vals = eigenvalues(&r)?;
    let smallest = vals.last().copied().unwrap_or(0.0);
    let threshold = RANK_TOL * tr;
    if !(smallest > threshold) {
        return Err(Error::RankDeficient { smallest, threshold });
    }
    let r_inv_sqrt = inv_sqrt_pd(&r)?;
    let v = x * r_inv_sqrt.as_mat();
    Ok((v, r))
}
