//! Scalars over the three division algebras ℝ, ℂ and ℍ.
//!
//! Every algorithm in the crate is generic over [`Scalar`]; the runtime
//! choice of field is carried by [`FieldTag`] and resolved with
//! [`dispatch_field!`](crate::dispatch_field).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which of ℝ, ℂ, ℍ a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
}

impl FieldTag {
    pub const ALL: [FieldTag; 3] = [FieldTag::Real, FieldTag::Complex, FieldTag::Quaternion];

    /// Real dimension of the field.
    pub const fn d(self) -> usize {
        match self {
            FieldTag::Real => 1,
            FieldTag::Complex => 2,
            FieldTag::Quaternion => 4,
        }
    }

    pub fn from_d(d: usize) -> Option<Self> {
        match d {
            1 => Some(FieldTag::Real),
            2 => Some(FieldTag::Complex),
            4 => Some(FieldTag::Quaternion),
            _ => None,
        }
    }

    /// `d / 2` as a float; appears in nearly every exponent.
    pub fn half_d(self) -> f64 {
        self.d() as f64 / 2.0
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            FieldTag::Real => "R",
            FieldTag::Complex => "C",
            FieldTag::Quaternion => "H",
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r" | "real" | "1" => Ok(FieldTag::Real),
            "c" | "complex" | "2" => Ok(FieldTag::Complex),
            "h" | "quaternion" | "quaternionic" | "4" => Ok(FieldTag::Quaternion),
            other => Err(Error::Config(format!("unknown field `{other}` (expected R, C or H)"))),
        }
    }
}

/// Run a generic body with the scalar type matching a runtime [`FieldTag`].
///
/// ```ignore
/// let v = dispatch_field!(field, S => my_generic::<S>(args));
/// ```
#[macro_export]
macro_rules! dispatch_field {
    ($field:expr, $s:ident => $body:expr) => {
        match $field {
            $crate::FieldTag::Real => {
                type $s = f64;
                $body
            }
            $crate::FieldTag::Complex => {
                type $s = $crate::Complex64;
                $body
            }
            $crate::FieldTag::Quaternion => {
                type $s = $crate::Quaternion;
                $body
            }
        }
    };
}

/// Element of ℝ, ℂ or ℍ.
///
/// Multiplication need not commute. Vectors over the field are right
/// modules, so projections are written `u * (u^* v)`.
pub trait Scalar:
    Copy
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const FIELD: FieldTag;
    /// Real dimension `d`.
    const D: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn abs2(self) -> f64;
    fn scale(self, r: f64) -> Self;

    /// Real coordinates `(w, x, y, z)`, zero padded past `D`.
    fn components(self) -> [f64; 4];
    /// Inverse of [`Scalar::components`]; reads the first `D` entries.
    fn from_components(c: &[f64]) -> Self;

    /// Split `q = a + b j` with complex `a`, `b`.
    fn to_complex_pair(self) -> (Complex64, Complex64);
    fn from_complex_pair(a: Complex64, b: Complex64) -> Self;

    fn abs(self) -> f64 {
        self.abs2().sqrt()
    }

    fn is_finite(self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }

    /// Standard Gaussian with density `π^{-d/2} exp(-|z|^2)`: every real
    /// component has variance 1/2.
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut c = [0.0; 4];
        for v in c.iter_mut().take(Self::D) {
            let g: f64 = rng.sample(StandardNormal);
            *v = g * std::f64::consts::FRAC_1_SQRT_2;
        }
        Self::from_components(&c)
    }
}

impl Scalar for f64 {
    const FIELD: FieldTag = FieldTag::Real;
    const D: usize = 1;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn scale(self, r: f64) -> Self {
        self * r
    }
    fn components(self) -> [f64; 4] {
        [self, 0.0, 0.0, 0.0]
    }
    fn from_components(c: &[f64]) -> Self {
        c[0]
    }
    fn to_complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self, 0.0), Complex64::new(0.0, 0.0))
    }
    fn from_complex_pair(a: Complex64, _b: Complex64) -> Self {
        a.re
    }
}

impl Scalar for Complex64 {
    const FIELD: FieldTag = FieldTag::Complex;
    const D: usize = 2;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn scale(self, r: f64) -> Self {
        self * r
    }
    fn components(self) -> [f64; 4] {
        [self.re, self.im, 0.0, 0.0]
    }
    fn from_components(c: &[f64]) -> Self {
        Complex64::new(c[0], c[1])
    }
    fn to_complex_pair(self) -> (Complex64, Complex64) {
        (self, Complex64::new(0.0, 0.0))
    }
    fn from_complex_pair(a: Complex64, _b: Complex64) -> Self {
        a
    }
}

/// Quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub fn norm(self) -> f64 {
        self.abs2().sqrt()
    }

    /// Multiplicative inverse; infinite components for zero.
    pub fn inverse(self) -> Self {
        let n = self.abs2();
        Scalar::conj(self).scale(1.0 / n)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    /// Hamilton product.
    #[inline]
    fn mul(self, o: Self) -> Self {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Scalar for Quaternion {
    const FIELD: FieldTag = FieldTag::Quaternion;
    const D: usize = 4;

    fn zero() -> Self {
        Quaternion::new(0.0, 0.0, 0.0, 0.0)
    }
    fn one() -> Self {
        Quaternion::new(1.0, 0.0, 0.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }
    fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }
    fn re(self) -> f64 {
        self.w
    }
    fn abs2(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }
    fn scale(self, r: f64) -> Self {
        Quaternion::new(self.w * r, self.x * r, self.y * r, self.z * r)
    }
    fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
    fn from_components(c: &[f64]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }
    fn to_complex_pair(self) -> (Complex64, Complex64) {
        // w + x i + (y + z i) j = w + x i + y j + z k
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }
    fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Quaternion::new(a.re, a.im, b.re, b.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quat() -> impl Strategy<Value = Quaternion> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
            .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
    }

    #[test]
    fn hamilton_units() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        let m1 = -Quaternion::one();
        assert_eq!(i * i, m1);
        assert_eq!(j * j, m1);
        assert_eq!(k * k, m1);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(i * j * k, m1);
    }

    #[test]
    fn field_tag_parses() {
        assert_eq!("H".parse::<FieldTag>().unwrap(), FieldTag::Quaternion);
        assert_eq!("complex".parse::<FieldTag>().unwrap(), FieldTag::Complex);
        assert!("Q".parse::<FieldTag>().is_err());
        for f in FieldTag::ALL {
            assert_eq!(FieldTag::from_d(f.d()), Some(f));
        }
    }

    #[test]
    fn complex_pair_roundtrip() {
        let q = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let (a, b) = q.to_complex_pair();
        assert_eq!(Quaternion::from_complex_pair(a, b), q);
    }

    proptest! {
        #[test]
        fn conj_is_anti_automorphism(a in quat(), b in quat()) {
            let lhs = (a * b).conj();
            let rhs = b.conj() * a.conj();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            let lhs = (a * b).abs();
            prop_assert!((lhs - a.abs() * b.abs()).abs() < 1e-12 * (1.0 + lhs));
        }

        #[test]
        fn product_is_associative(a in quat(), b in quat(), c in quat()) {
            prop_assert!(((a * b) * c - a * (b * c)).abs() < 1e-11);
        }
    }
}
