//! Scalar Gamma function on the real line and in the complex plane.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real `x`.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// ln Γ(x) for real `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Γ(z) for complex `z` (Lanczos approximation with reflection).
pub fn gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI, 0.0) / (s * gamma_complex(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// True when `x` is a pole of Γ (a non-positive integer).
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() <= 1e-14 * x.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn complex_matches_real_axis() {
        for &x in &[0.1, 0.5, 1.0, 1.5, 2.25, 3.7, 7.5, 12.0, -0.5, -1.3] {
            let c = gamma_complex(Complex64::new(x, 0.0));
            assert!((c.re - gamma(x)).abs() < 1e-12 * gamma(x).abs(), "x={x}");
            assert!(c.im.abs() < 1e-12 * gamma(x).abs());
        }
    }

    #[test]
    fn complex_recurrence_and_reflection() {
        let z = Complex64::new(1.3, 0.7);
        let lhs = gamma_complex(z + 1.0);
        let rhs = z * gamma_complex(z);
        assert!((lhs - rhs).norm() < 1e-13 * lhs.norm());
        // |Γ(iy)|^2 = π / (y sinh(πy))
        let y = 0.8;
        let g = gamma_complex(Complex64::new(0.0, y));
        assert!((g.norm_sqr() - PI / (y * (PI * y).sinh())).abs() < 1e-12);
    }

    #[test]
    fn poles() {
        assert!(is_gamma_pole(0.0));
        assert!(is_gamma_pole(-3.0));
        assert!(!is_gamma_pole(-2.5));
        assert!(!is_gamma_pole(1.0));
    }
}
