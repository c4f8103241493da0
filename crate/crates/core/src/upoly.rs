//! Dense univariate polynomials over a base ring, used as the coefficient
//! ring carrying one transcendental parameter `t`.
//!
//! Only ring operations and exact zero testing are needed for the generic
//! substitution checks, so no fraction field is introduced: a substitution
//! preserves an ideal over `K[t]` exactly when every stray coefficient is
//! the zero polynomial.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ring::Ring;

/// Coefficients in ascending degree with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly<E> {
    coeffs: Vec<E>,
}

impl<E> UPoly<E> {
    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending degree.
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }
}

/// Polynomial ring `base[t]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UPolyRing<R> {
    base: R,
}

impl<R: Ring> UPolyRing<R> {
    /// Ring of univariate polynomials over `base`.
    pub fn new(base: R) -> Self {
        UPolyRing { base }
    }

    /// The base ring.
    pub fn base(&self) -> &R {
        &self.base
    }

    /// The parameter `t`.
    pub fn parameter(&self) -> UPoly<R::Elem> {
        self.normalize(vec![self.base.zero(), self.base.one()])
    }

    /// Constant polynomial.
    pub fn constant(&self, c: R::Elem) -> UPoly<R::Elem> {
        self.normalize(vec![c])
    }

    fn normalize(&self, mut coeffs: Vec<R::Elem>) -> UPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }
}

impl<R: Ring> Ring for UPolyRing<R> {
    type Elem = UPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        UPoly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.coeffs.len() == 1 && self.base.is_unit(&a.coeffs[0])
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let zero = self.base.zero();
            let x = a.coeffs.get(k).unwrap_or(&zero);
            let y = b.coeffs.get(k).unwrap_or(&zero);
            out.push(self.base.add(x, y));
        }
        self.normalize(out)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        UPoly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.normalize(out)
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.coeffs.is_empty() {
            return None;
        }
        if a.coeffs.is_empty() {
            return Some(self.zero());
        }
        if a.coeffs.len() < b.coeffs.len() {
            return None;
        }
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.base.zero(); a.coeffs.len() - b.coeffs.len() + 1];
        let lead = b.coeffs.last().unwrap();
        for k in (0..quot.len()).rev() {
            let top = rem[k + b.coeffs.len() - 1].clone();
            if self.base.is_zero(&top) {
                continue;
            }
            let q = self.base.exact_div(&top, lead)?;
            for (j, c) in b.coeffs.iter().enumerate() {
                rem[k + j] = self.base.sub(&rem[k + j], &self.base.mul(&q, c));
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| self.base.is_zero(c)) {
            Some(self.normalize(quot))
        } else {
            None
        }
    }

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    fn display(&self, a: &Self::Elem) -> String {
        if a.coeffs.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, c) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match k {
                0 => out.push_str(&self.base.display(c)),
                _ => {
                    out.push_str(&self.base.display(c));
                    out.push_str(if k == 1 { "*t" } else { "*t^" });
                    if k > 1 {
                        out.push_str(&alloc::format!("{k}"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};

    #[test]
    fn arithmetic_over_rationals() {
        let r = UPolyRing::new(Rationals);
        let t = r.parameter();
        let one = r.one();
        // (1 + t)^2 = 1 + 2t + t^2
        let sum = r.add(&one, &t);
        let sq = r.mul(&sum, &sum);
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(r.display(&sq), "1 + 2*t + 1*t^2");
        // exact division recovers the factor
        assert_eq!(r.exact_div(&sq, &sum), Some(sum.clone()));
        assert_eq!(r.exact_div(&r.add(&sq, &one), &sum), None);
    }

    #[test]
    fn char_two_kills_cross_terms() {
        let r = UPolyRing::new(PrimeField::new(2));
        let t = r.parameter();
        let one = r.one();
        let sum = r.add(&one, &t);
        let sq = r.mul(&sum, &sum);
        // (1 + t)^2 = 1 + t^2 over F_2
        assert_eq!(sq.coeffs(), &[1, 0, 1]);
        assert_eq!(r.characteristic(), 2);
    }

    #[test]
    fn units_are_nonzero_constants() {
        let r = UPolyRing::new(Rationals);
        assert!(r.is_unit(&r.from_i64(3)));
        assert!(!r.is_unit(&r.parameter()));
        assert!(!r.is_unit(&r.zero()));
    }
}
