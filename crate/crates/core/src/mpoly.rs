//! Sparse multivariate polynomials over a base ring.
//!
//! These carry the undetermined coefficients of coset substitutions through
//! the fiber computations. Exponent vectors reuse `Monomial`, whose graded
//! order is a proper monomial order, so leading-term exact division and
//! fraction-free elimination both work over this ring.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::monomial::Monomial;
use crate::ring::Ring;

/// Terms keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> MPoly<E> {
    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    /// Whether the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    /// The single term, when there is exactly one.
    pub fn single_term(&self) -> Option<(&Monomial, &E)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

/// Polynomial ring `base[a_1, ..., a_k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MPolyRing<R> {
    base: R,
    nvars: usize,
}

impl<R: Ring> MPolyRing<R> {
    /// Ring in `nvars` parameters over `base`.
    pub fn new(base: R, nvars: usize) -> Self {
        MPolyRing { base, nvars }
    }

    /// The base ring.
    pub fn base(&self) -> &R {
        &self.base
    }

    /// Number of parameters.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The `i`-th parameter as a polynomial.
    pub fn parameter(&self, i: usize) -> MPoly<R::Elem> {
        self.term(Monomial::var(self.nvars, i), self.base.one())
    }

    /// Single-term polynomial `c * a^m`.
    pub fn term(&self, m: Monomial, c: R::Elem) -> MPoly<R::Elem> {
        debug_assert_eq!(m.nvars(), self.nvars);
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Constant polynomial.
    pub fn constant(&self, c: R::Elem) -> MPoly<R::Elem> {
        self.term(Monomial::one(self.nvars), c)
    }

    /// Evaluate at a full point of base ring values.
    pub fn eval(&self, f: &MPoly<R::Elem>, point: &[R::Elem]) -> R::Elem {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = self.base.zero();
        for (m, c) in &f.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = self.base.mul(&term, &point[i]);
                }
            }
            acc = self.base.add(&acc, &term);
        }
        acc
    }

    /// Substitute a polynomial for every parameter (composition). Used to
    /// confirm interpolated relations symbolically.
    pub fn compose(&self, f: &MPoly<R::Elem>, images: &[MPoly<R::Elem>]) -> MPoly<R::Elem> {
        debug_assert_eq!(images.len(), self.nvars);
        let mut acc = self.zero();
        for (m, c) in &f.terms {
            let mut term = self.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = self.mul(&term, &images[i]);
                }
            }
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// All total weights `sum of exps * weights` occurring among the terms;
    /// a homogeneity check for integer weight vectors.
    pub fn term_weights(&self, f: &MPoly<R::Elem>, weights: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let dim = weights.first().map_or(0, Vec::len);
        let mut seen: Vec<Vec<i64>> = Vec::new();
        for m in f.terms.keys() {
            let mut w = alloc::vec![0i64; dim];
            for (i, &e) in m.exps().iter().enumerate() {
                for (k, wk) in weights[i].iter().enumerate() {
                    w[k] += i64::from(e) * wk;
                }
            }
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        seen
    }
}

impl<R: Ring> Ring for MPolyRing<R> {
    type Elem = MPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        MPoly { terms: BTreeMap::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        match a.single_term() {
            Some((m, c)) => m.is_constant() && self.base.is_unit(c),
            None => false,
        }
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            match terms.get_mut(m) {
                Some(existing) => {
                    *existing = self.base.add(existing, c);
                    if self.base.is_zero(existing) {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MPoly { terms }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        MPoly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.base.neg(c))).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = self.base.mul(ca, cb);
                match terms.get_mut(&m) {
                    Some(existing) => {
                        *existing = self.base.add(existing, &c);
                        if self.base.is_zero(existing) {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        if !self.base.is_zero(&c) {
                            terms.insert(m, c);
                        }
                    }
                }
            }
        }
        MPoly { terms }
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.terms.is_empty() {
            return None;
        }
        let (lead_m, lead_c) = b.terms.iter().next_back().unwrap();
        let mut rem = a.clone();
        let mut quot = self.zero();
        while let Some((top_m, top_c)) = rem.terms.iter().next_back() {
            let qm = top_m.div(lead_m)?;
            let qc = self.base.exact_div(top_c, lead_c)?;
            let qt = self.term(qm, qc);
            rem = self.sub(&rem, &self.mul(&qt, b));
            quot = self.add(&quot, &qt);
        }
        Some(quot)
    }

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    fn display(&self, a: &Self::Elem) -> String {
        crate::mpoly::display_with(self, a, &default_names(self.nvars))
    }
}

fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| alloc::format!("a{}", i + 1)).collect()
}

/// Render with explicit parameter names.
pub fn display_with<R: Ring>(ring: &MPolyRing<R>, f: &MPoly<R::Elem>, names: &[String]) -> String {
    if f.terms.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    // highest term first reads naturally
    for (m, c) in f.terms.iter().rev() {
        let shown = ring.base().display(c);
        let (negative, magnitude) = match shown.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, shown.as_str()),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if magnitude != "1" || m.is_constant() {
            factors.push(String::from(magnitude));
        }
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                factors.push(names[i].clone());
            } else {
                factors.push(alloc::format!("{}^{}", names[i], e));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
