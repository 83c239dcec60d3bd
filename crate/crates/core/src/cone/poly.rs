//! Sparse real polynomials in a fixed number of variables.

use std::collections::BTreeMap;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u16>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, 1.0);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: f64) {
        debug_assert_eq!(m.len(), self.nvars);
        if c == 0.0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            let key: Vec<_> = self.terms.iter().filter(|(_, &v)| v == 0.0).map(|(k, _)| k.clone()).collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in o.terms() {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, r: f64) -> Poly {
        let mut p = Self::zero(self.nvars);
        for (m, c) in self.terms() {
            p.add_term(m.clone(), c * r);
        }
        p
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Self::zero(self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in o.terms() {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                p.add_term(m, ca * cb);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, 1.0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut p = Self::zero(self.nvars);
        for (m, c) in self.terms() {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                p.add_term(m2, c * m[i] as f64);
            }
        }
        p
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        self.terms()
            .map(|(m, c)| c * m.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product::<f64>())
            .sum()
    }

    /// Total degree when every monomial has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (m, _) in self.terms() {
            let d: u32 = m.iter().map(|&e| e as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }
}
