//! Dense column-major matrices over a [`Scalar`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rand::Rng;

use super::scalar::{FieldTag, Scalar};

/// `rows × cols` matrix over ℝ, ℂ or ℍ, stored column-major.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Alias used where the spec-level name reads better.
pub type MatK<S> = Mat<S>;

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// `[I_k; 0]` when `rows >= cols`.
    pub fn eye_rect(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Build from a column-major vector.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[&[S]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = S::from_real(v);
        }
        m
    }

    pub fn scalar_identity(n: usize, c: f64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::from_real(c);
        }
        m
    }

    /// Entries i.i.d. standard Gaussians over the field.
    pub fn gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| S::gaussian(rng)).collect();
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldTag {
        S::FIELD
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn col(&self, j: usize) -> &[S] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [S] {
        let r = self.rows;
        &mut self.data[j * r..(j + 1) * r]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// `self^* · other` without materialising the adjoint.
    pub fn adjoint_mul(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "adjoint_mul shape mismatch");
        let mut out = Self::zeros(self.cols, other.cols);
        for j in 0..other.cols {
            let b = other.col(j);
            for i in 0..self.cols {
                let a = self.col(i);
                let mut acc = S::zero();
                for (x, y) in a.iter().zip(b) {
                    acc += x.conj() * *y;
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch: {:?} x {:?}", self.shape(), other.shape());
        let mut out = Self::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for l in 0..self.cols {
                let b = other[(l, j)];
                if b == S::zero() {
                    continue;
                }
                let a = self.col(l);
                let o = out.col_mut(j);
                for (oi, ai) in o.iter_mut().zip(a) {
                    *oi += *ai * b;
                }
            }
        }
        out
    }

    /// Multiply every entry by a real number.
    pub fn scale(&self, r: f64) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.scale(r)).collect() }
    }

    /// Multiply every entry on the right by a field scalar.
    pub fn mul_scalar_right(&self, c: S) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * c).collect() }
    }

    pub fn frob_norm2(&self) -> f64 {
        self.data.iter().map(|x| x.abs2()).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.frob_norm2().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Real part of the trace.
    pub fn trace_re(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].re()).sum()
    }

    /// `Re tr(self · other^*)`, the Euclidean inner product on matrices.
    pub fn inner_re(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data.iter().zip(&other.data).map(|(a, b)| (*a * b.conj()).re()).sum()
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "set_block out of range");
        for j in 0..b.cols {
            for i in 0..b.rows {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    /// Columns `c0 .. c0 + nc`.
    pub fn columns(&self, c0: usize, nc: usize) -> Self {
        assert!(c0 + nc <= self.cols);
        Mat {
            rows: self.rows,
            cols: nc,
            data: self.data[c0 * self.rows..(c0 + nc) * self.rows].to_vec(),
        }
    }

    pub fn vstack(top: &Self, bottom: &Self) -> Self {
        assert_eq!(top.cols, bottom.cols, "vstack column mismatch");
        let mut m = Self::zeros(top.rows + bottom.rows, top.cols);
        m.set_block(0, 0, top);
        m.set_block(top.rows, 0, bottom);
        m
    }

    pub fn hstack(left: &Self, right: &Self) -> Self {
        assert_eq!(left.rows, right.rows, "hstack row mismatch");
        let mut data = left.data.clone();
        data.extend_from_slice(&right.data);
        Mat { rows: left.rows, cols: left.cols + right.cols, data }
    }

    /// Block-diagonal `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    /// Largest entrywise modulus of `self - self^*`, relative to the
    /// largest entry.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut defect: f64 = 0.0;
        for j in 0..self.cols {
            for i in 0..=j {
                defect = defect.max((self[(i, j)] - self[(j, i)].conj()).abs());
            }
        }
        defect / self.max_abs().max(f64::MIN_POSITIVE)
    }

    /// `(self + self^*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        Self::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()).scale(0.5))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Real coordinates of every entry, column-major, `D` reals per entry.
    pub fn to_reals(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.data.len() * S::D);
        for x in &self.data {
            out.extend_from_slice(&x.components()[..S::D]);
        }
        out
    }

    pub fn from_reals(rows: usize, cols: usize, reals: &[f64]) -> Option<Self> {
        if reals.len() != rows * cols * S::D {
            return None;
        }
        let data = reals.chunks(S::D).map(S::from_components).collect();
        Some(Mat { rows, cols, data })
    }

    /// `‖self^* self − I‖_F`, the isometry defect of a frame.
    pub fn isometry_defect(&self) -> f64 {
        let g = self.adjoint_mul(self);
        (&g - &Self::identity(self.cols)).frob_norm()
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(self.shape(), o.shape(), "add shape mismatch");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect() }
    }
}

impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(self.shape(), o.shape(), "sub shape mismatch");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect() }
    }
}

impl<S: Scalar> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -*a).collect() }
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, o: &Mat<S>) -> Mat<S> {
        self.matmul(o)
    }
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat<{}> {}x{} [", S::FIELD, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let c = self[(i, j)].components();
                match S::D {
                    1 => write!(f, "{:>10.5} ", c[0])?,
                    2 => write!(f, "({:.4},{:.4}) ", c[0], c[1])?,
                    _ => write!(f, "({:.3},{:.3},{:.3},{:.3}) ", c[0], c[1], c[2], c[3])?,
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Quaternion;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assoc<S: Scalar>() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = Mat::<S>::gaussian(3, 4, &mut rng);
            let b = Mat::<S>::gaussian(4, 2, &mut rng);
            let c = Mat::<S>::gaussian(2, 5, &mut rng);
            let lhs = &(&a * &b) * &c;
            let rhs = &a * &(&b * &c);
            assert!((&lhs - &rhs).frob_norm() < 1e-12 * (1.0 + lhs.frob_norm()));
        }
    }

    fn adjoint_laws<S: Scalar>() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = Mat::<S>::gaussian(3, 2, &mut rng);
            let b = Mat::<S>::gaussian(2, 4, &mut rng);
            assert_eq!(a.adjoint().adjoint(), a);
            // (ab)^* = b^* a^*
            let lhs = (&a * &b).adjoint();
            let rhs = &b.adjoint() * &a.adjoint();
            assert!((&lhs - &rhs).frob_norm() < 1e-12);
            // tr(x x^*) >= 0
            assert!((&a * &a.adjoint()).trace_re() > 0.0);
            assert!((a.adjoint_mul(&a).trace_re() - a.frob_norm2()).abs() < 1e-12);
        }
        let z = Mat::<S>::zeros(3, 2);
        assert_eq!((&z * &z.adjoint()).trace_re(), 0.0);
    }

    #[test]
    fn multiplication_is_associative() {
        assoc::<f64>();
        assoc::<num_complex::Complex64>();
        assoc::<Quaternion>();
    }

    #[test]
    fn adjoint_is_involutive_and_reverses_products() {
        adjoint_laws::<f64>();
        adjoint_laws::<num_complex::Complex64>();
        adjoint_laws::<Quaternion>();
    }

    #[test]
    fn blocks_and_stacking() {
        let a = Mat::<f64>::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = Mat::<f64>::from_rows(&[&[5.0, 6.0]]);
        let v = Mat::vstack(&a, &b);
        assert_eq!(v.shape(), (3, 2));
        assert_eq!(v[(2, 1)], 6.0);
        assert_eq!(v.block(1, 0, 2, 2), Mat::from_rows(&[&[3.0, 4.0], &[5.0, 6.0]]));
        let h = Mat::hstack(&a, &a);
        assert_eq!(h.columns(2, 2), a);
        let d = Mat::block_diag(&a, &b.adjoint_mul(&b));
        assert_eq!(d.shape(), (4, 4));
        assert_eq!(d[(0, 2)], 0.0);
    }

    #[test]
    fn real_coordinate_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = Mat::<Quaternion>::gaussian(2, 3, &mut rng);
        let r = a.to_reals();
        assert_eq!(r.len(), 24);
        assert_eq!(Mat::<Quaternion>::from_reals(2, 3, &r).unwrap(), a);
        assert!(Mat::<Quaternion>::from_reals(2, 2, &r).is_none());
    }
}
