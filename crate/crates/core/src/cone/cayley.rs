//! The Cayley-type operator Δ(∂) in explicit coordinates.
//!
//! Coordinates on the self-adjoint `k × k` matrices: the `k` diagonal
//! entries first, then each off-diagonal entry `(i, j)`, `i < j`, in
//! lexicographic order, contributing its `d` real components.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gamma::cone_dim;
use super::poly::{Monomial, Poly};
use crate::algebra::{delta_det, FieldTag, HermMatrix, Mat, Scalar};
use crate::error::{Error, Result};

pub const MAX_CAYLEY_RANK: usize = 4;
/// Relative tolerance of the defining-exponential test.
pub const CAYLEY_TOL: f64 = 1e-8;

/// Coordinate index of component `c` of the off-diagonal entry `(i, j)`.
fn offdiag_index(k: usize, d: usize, i: usize, j: usize, c: usize) -> usize {
    debug_assert!(i < j);
    // number of pairs (p, q), p < q, preceding (i, j)
    let before = i * k - i * (i + 1) / 2 + (j - i - 1);
    k + before * d + c
}

/// Real coordinates of a self-adjoint matrix.
pub fn herm_coords<S: Scalar>(a: &HermMatrix<S>) -> Vec<f64> {
    let k = a.dim();
    let d = S::D;
    let m = a.as_mat();
    let mut x = vec![0.0; cone_dim(S::FIELD, k)];
    for i in 0..k {
        x[i] = m[(i, i)].re();
    }
    for i in 0..k {
        for j in i + 1..k {
            let c = m[(i, j)].components();
            for (cc, v) in c.iter().enumerate().take(d) {
                x[offdiag_index(k, d, i, j, cc)] = *v;
            }
        }
    }
    x
}

/// Inverse of [`herm_coords`].
pub fn herm_from_coords<S: Scalar>(k: usize, x: &[f64]) -> HermMatrix<S> {
    let d = S::D;
    let mut m = Mat::<S>::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = S::from_real(x[i]);
    }
    for i in 0..k {
        for j in i + 1..k {
            let c: Vec<f64> = (0..d).map(|cc| x[offdiag_index(k, d, i, j, cc)]).collect();
            let v = S::from_components(&c);
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    HermMatrix::from_mat_symmetrize(&m)
}

/// Weight of each coordinate in `Re tr(x y^*) = Σ_c w_c x_c y_c`.
pub fn trace_form_weights(field: FieldTag, k: usize) -> Vec<f64> {
    let n = cone_dim(field, k);
    (0..n).map(|c| if c < k { 1.0 } else { 2.0 }).collect()
}

/// Quaternion-valued polynomial: four real polynomials (w, x, y, z).
#[derive(Clone)]
struct QPoly([Poly; 4]);

impl QPoly {
    fn zero(n: usize) -> Self {
        QPoly([Poly::zero(n), Poly::zero(n), Poly::zero(n), Poly::zero(n)])
    }

    fn conj(&self) -> Self {
        let [a, b, c, d] = &self.0;
        QPoly([a.clone(), b.scale(-1.0), c.scale(-1.0), d.scale(-1.0)])
    }

    /// Hamilton product.
    fn mul(&self, o: &QPoly) -> QPoly {
        let [a1, b1, c1, d1] = &self.0;
        let [a2, b2, c2, d2] = &o.0;
        QPoly([
            a1.mul(a2).sub(&b1.mul(b2)).sub(&c1.mul(c2)).sub(&d1.mul(d2)),
            a1.mul(b2).add(&b1.mul(a2)).add(&c1.mul(d2)).sub(&d1.mul(c2)),
            a1.mul(c2).sub(&b1.mul(d2)).add(&c1.mul(a2)).add(&d1.mul(b2)),
            a1.mul(d2).add(&b1.mul(c2)).sub(&c1.mul(b2)).add(&d1.mul(a2)),
        ])
    }
}

/// Δ as an explicit polynomial in the coordinates, expanded through the
/// cycle form of the determinant: for self-adjoint matrices every cycle
/// contributes the real part of its ordered product.
pub fn delta_polynomial(field: FieldTag, k: usize) -> Poly {
    let d = field.d();
    let n = cone_dim(field, k);
    let entry = |i: usize, j: usize| -> QPoly {
        let mut q = QPoly::zero(n);
        if i == j {
            q.0[0] = Poly::var(n, i);
            return q;
        }
        let (p, r) = if i < j { (i, j) } else { (j, i) };
        for c in 0..d {
            q.0[c] = Poly::var(n, offdiag_index(k, d, p, r, c));
        }
        if i < j {
            q
        } else {
            q.conj()
        }
    };

    let mut total = Poly::zero(n);
    for perm in permutations(k) {
        let mut seen = vec![false; k];
        let mut term = Poly::constant(n, 1.0);
        let mut transpositions = 0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut prod: Option<QPoly> = None;
            let mut i = start;
            let mut len = 0;
            loop {
                seen[i] = true;
                let e = entry(i, perm[i]);
                prod = Some(match prod {
                    None => e,
                    Some(p) => p.mul(&e),
                });
                len += 1;
                i = perm[i];
                if i == start {
                    break;
                }
            }
            transpositions += len - 1;
            term = term.mul(&prod.expect("cycle has at least one entry").0[0]);
        }
        let sign = if transpositions % 2 == 0 { 1.0 } else { -1.0 };
        total = total.add(&term.scale(sign));
    }
    total
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Constant-coefficient order-`k` operator `Σ_α c_α ∂^α` in the coordinates.
#[derive(Clone, Debug)]
pub struct CayleyOperator {
    pub field: FieldTag,
    pub k: usize,
    pub terms: Vec<(Monomial, f64)>,
}

impl CayleyOperator {
    pub fn nvars(&self) -> usize {
        cone_dim(self.field, self.k)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `e^{tr(s y^*)}` after applying the operator to it,
    /// given the coordinates of `y`.
    pub fn apply_exp(&self, y: &[f64]) -> f64 {
        let w = trace_form_weights(self.field, self.k);
        self.terms
            .iter()
            .map(|(m, c)| c * m.iter().enumerate().map(|(i, &e)| (w[i] * y[i]).powi(e as i32)).product::<f64>())
            .sum()
    }

    /// Exact application to a polynomial in the same coordinates.
    pub fn apply_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.nvars());
        for (m, c) in &self.terms {
            let mut q = p.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    q = q.derivative(i);
                }
            }
            out = out.add(&q.scale(*c));
        }
        out
    }

    /// Largest relative defect of `Δ(∂) e^{tr(s y^*)} = Δ(y) e^{tr(s y^*)}`
    /// over `samples` random `y`, with Δ computed spectrally.
    pub fn exp_defect(&self, samples: usize, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        crate::dispatch_field!(self.field, S => {
            let mut worst: f64 = 0.0;
            for _ in 0..samples {
                let y = HermMatrix::<S>::from_mat_symmetrize(&Mat::<S>::gaussian(self.k, self.k, &mut rng));
                let want = delta_det(&y)?;
                let got = self.apply_exp(&herm_coords(&y));
                let scale = y.as_mat().frob_norm().powi(self.k as i32).max(f64::MIN_POSITIVE);
                worst = worst.max((got - want).abs() / scale);
            }
            Ok(worst)
        })
    }
}

/// Determine Δ(∂). Acting on `e^{tr(s y^*)}` the monomial `∂^α` produces
/// `∏ (w_c y_c)^{α_c}`, so matching Δ(y) monomial by monomial is a
/// diagonal linear system in the operator coefficients.
pub fn cayley_calibrate(field: FieldTag, k: usize) -> Result<CayleyOperator> {
    if k == 0 || k > MAX_CAYLEY_RANK {
        return Err(Error::Domain(format!("Cayley operator supported for 1 <= k <= {MAX_CAYLEY_RANK}, got {k}")));
    }
    let delta = delta_polynomial(field, k);
    let w = trace_form_weights(field, k);
    let mut terms = Vec::with_capacity(delta.num_terms());
    for (m, c) in delta.terms() {
        let pivot: f64 = m.iter().enumerate().map(|(i, &e)| w[i].powi(e as i32)).product();
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::Singular(format!("zero pivot for monomial {m:?}")));
        }
        terms.push((m.clone(), c / pivot));
    }
    let op = CayleyOperator { field, k, terms };
    let defect = op.exp_defect(16, 0x5eed)?;
    if defect > CAYLEY_TOL {
        return Err(Error::Singular(format!("calibrated operator fails the exponential test (defect {defect:.3e})")));
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quaternion;
    use num_complex::Complex64;

    #[test]
    fn coordinates_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = HermMatrix::<Quaternion>::from_mat_symmetrize(&Mat::gaussian(3, 3, &mut rng));
        let x = herm_coords(&a);
        assert_eq!(x.len(), 15);
        let b = herm_from_coords::<Quaternion>(3, &x);
        assert!((a.as_mat() - b.as_mat()).max_abs() < 1e-15);
        // trace form
        let c = HermMatrix::<Quaternion>::from_mat_symmetrize(&Mat::gaussian(3, 3, &mut rng));
        let w = trace_form_weights(FieldTag::Quaternion, 3);
        let y = herm_coords(&c);
        let tf: f64 = (0..15).map(|i| w[i] * x[i] * y[i]).sum();
        assert!((tf - a.trace_product(&c)).abs() < 1e-12);
    }

    #[test]
    fn rank_one_is_d_ds() {
        for f in FieldTag::ALL {
            let op = cayley_calibrate(f, 1).unwrap();
            assert_eq!(op.terms, vec![(vec![1], 1.0)]);
        }
    }

    #[test]
    fn real_rank_two() {
        let op = cayley_calibrate(FieldTag::Real, 2).unwrap();
        let mut t = op.terms.clone();
        t.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(t, vec![(vec![0, 0, 2], -0.25), (vec![1, 1, 0], 1.0)]);
    }

    fn delta_poly_matches<S: Scalar>(k: usize) {
        let p = delta_polynomial(S::FIELD, k);
        assert_eq!(p.homogeneous_degree(), Some(k as u32));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = HermMatrix::<S>::from_mat_symmetrize(&Mat::gaussian(k, k, &mut rng));
            let want = delta_det(&a).unwrap();
            let got = p.eval(&herm_coords(&a));
            assert!((got - want).abs() < 1e-10 * (1.0 + want.abs()), "{} k={k} {got} {want}", S::FIELD);
        }
    }

    #[test]
    fn cycle_expansion_matches_spectral_delta() {
        for k in 1..=4 {
            delta_poly_matches::<f64>(k);
            delta_poly_matches::<Complex64>(k);
            delta_poly_matches::<Quaternion>(k);
        }
    }

    #[test]
    fn calibration_passes_exponential_test() {
        for f in FieldTag::ALL {
            for k in 1..=4 {
                let op = cayley_calibrate(f, k).unwrap();
                assert!(op.exp_defect(20, 99).unwrap() < CAYLEY_TOL);
                assert!(op.terms.iter().all(|(m, _)| m.iter().map(|&e| e as usize).sum::<usize>() == k));
            }
        }
        assert!(cayley_calibrate(FieldTag::Real, 5).is_err());
    }

    #[test]
    fn capelli_on_polynomial_powers() {
        use crate::cone::gamma::capelli_coefficient;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in [FieldTag::Real, FieldTag::Complex] {
            let op = cayley_calibrate(f, 2).unwrap();
            let delta = delta_polynomial(f, 2);
            for lam in 1..=4u32 {
                let p = op.apply_poly(&delta.pow(lam));
                let coef = capelli_coefficient(f, 2, lam as f64, 1);
                for _ in 0..3 {
                    let x: Vec<f64> = (0..op.nvars()).map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0)).collect();
                    let want = coef * delta.eval(&x).powi(lam as i32 - 1);
                    assert!((p.eval(&x) - want).abs() < 1e-10 * (1.0 + want.abs()));
                }
            }
        }
    }
}
