//! Truncated multivariate polynomials and variable substitutions.
//!
//! A `TPoly` is a polynomial in the ambient `x` variables with coefficients
//! in an arbitrary exact ring; a cutoff `N` marks the working precision:
//! products discard terms of total degree `N` and above. The sentinel
//! `UNBOUNDED` disables truncation, which the ideal preservation tests use
//! to expand images exactly.
//!
//! A `Substitution` maps each variable to a polynomial with zero constant
//! term and generically invertible linear part. It acts on polynomials by
//! evaluation, composes, and (over a field) inverts degree by degree.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::monomial::{monomials_below, Monomial};
use crate::ring::{Field, Ring};

/// Cutoff value meaning "never truncate".
pub const UNBOUNDED: u32 = u32::MAX;

/// Polynomial with coefficients in `E`, truncated at a degree cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly<E> {
    nvars: usize,
    cutoff: u32,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq + Eq + core::fmt::Debug> TPoly<E> {
    /// The zero polynomial.
    pub fn zero(nvars: usize, cutoff: u32) -> Self {
        TPoly { nvars, cutoff, terms: BTreeMap::new() }
    }

    /// Single term `c * m`, dropped if beyond the cutoff.
    pub fn term<R: Ring<Elem = E>>(ring: &R, m: Monomial, c: E, cutoff: u32) -> Self {
        let nvars = m.nvars();
        let mut out = TPoly::zero(nvars, cutoff);
        if m.degree() < cutoff && !ring.is_zero(&c) {
            out.terms.insert(m, c);
        }
        out
    }

    /// The monomial `m` with coefficient one.
    pub fn monomial<R: Ring<Elem = E>>(ring: &R, m: Monomial, cutoff: u32) -> Self {
        TPoly::term(ring, m, ring.one(), cutoff)
    }

    /// Build from terms, combining duplicates.
    pub fn from_terms<R, I>(ring: &R, nvars: usize, cutoff: u32, terms: I) -> Self
    where
        R: Ring<Elem = E>,
        I: IntoIterator<Item = (Monomial, E)>,
    {
        let mut out = TPoly::zero(nvars, cutoff);
        for (m, c) in terms {
            out.add_term(ring, m, c);
        }
        out
    }

    /// Number of ambient variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Current cutoff.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// True when no terms are stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    /// Coefficient of `m`, if present.
    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// Monomials with nonzero coefficient.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// Least total degree among the terms, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Drop terms of degree `cutoff` and above.
    pub fn truncate(&self, cutoff: u32) -> Self {
        let mut out = self.clone();
        out.cutoff = cutoff.min(self.cutoff);
        out.terms.retain(|m, _| m.degree() < cutoff);
        out
    }

    /// Re-label the cutoff, treating the stored terms as exact. Terms at or
    /// above the new cutoff are dropped.
    pub fn with_cutoff(&self, cutoff: u32) -> Self {
        let mut out = self.clone();
        out.cutoff = cutoff;
        out.terms.retain(|m, _| m.degree() < cutoff);
        out
    }

    fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, m: Monomial, c: E) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if m.degree() >= self.cutoff || ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = ring.add(existing, &c);
                if ring.is_zero(existing) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Sum; the result keeps the smaller cutoff.
    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(other.cutoff);
        out.terms.retain(|m, _| m.degree() < out.cutoff);
        for (m, c) in &other.terms {
            out.add_term(ring, m.clone(), c.clone());
        }
        out
    }

    /// Negation.
    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = ring.neg(c);
        }
        out
    }

    /// Difference.
    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    /// Product truncated at the shared cutoff.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = TPoly::zero(self.nvars, cutoff);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if cutoff != UNBOUNDED && ma.degree() + mb.degree() >= cutoff {
                    continue;
                }
                out.add_term(ring, ma.mul(mb), ring.mul(ca, cb));
            }
        }
        out
    }

    /// Scale by a ring element.
    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        let mut out = TPoly::zero(self.nvars, self.cutoff);
        for (m, coeff) in &self.terms {
            out.add_term(ring, m.clone(), ring.mul(coeff, c));
        }
        out
    }

    /// `self` to the `k`-th power.
    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, k: u32) -> Self {
        let mut acc = TPoly::monomial(ring, Monomial::one(self.nvars), self.cutoff);
        for _ in 0..k {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Termwise `p`-th power: the Frobenius image in characteristic `p`.
    pub fn frobenius<R: Ring<Elem = E>>(&self, ring: &R, p: u32) -> Self {
        debug_assert_eq!(ring.characteristic(), p);
        let mut out = TPoly::zero(self.nvars, self.cutoff);
        for (m, c) in &self.terms {
            let mut cp = c.clone();
            for _ in 1..p {
                cp = ring.mul(&cp, c);
            }
            out.add_term(ring, m.stretch(p), cp);
        }
        out
    }

    /// Whether every monomial of the support lies in `ideal`.
    pub fn supported_in(&self, ideal: &MonomialIdeal) -> bool {
        self.terms.keys().all(|m| ideal.contains(m))
    }

    /// Human-readable rendering.
    pub fn display<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let cs = ring.display(c);
            if m.is_constant() {
                out.push_str(&cs);
            } else if cs == "1" {
                out.push_str(&alloc::format!("{m}"));
            } else {
                out.push_str(&alloc::format!("({cs})*{m}"));
            }
        }
        out
    }
}

/// Map of each variable to its image polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution<E> {
    nvars: usize,
    cutoff: u32,
    images: Vec<TPoly<E>>,
}

impl<E: Clone + PartialEq + Eq + core::fmt::Debug> Substitution<E> {
    /// Checked constructor: one image per variable, no constant terms, and
    /// a linear part with nonzero determinant (generic invertibility; over
    /// a coefficient ring with parameters the determinant may be a nonunit).
    pub fn new<R: Ring<Elem = E>>(
        ring: &R,
        images: Vec<TPoly<E>>,
        cutoff: u32,
    ) -> Result<Self> {
        let nvars = images.len();
        for img in &images {
            if img.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: img.nvars() });
            }
            if img.coeff(&Monomial::one(nvars)).is_some() {
                return Err(Error::ConstantMonomial);
            }
        }
        let s = Substitution { nvars, cutoff, images };
        let det = linalg::determinant(ring, &s.linear_matrix(ring));
        if ring.is_zero(&det) {
            return Err(Error::SingularLinearPart);
        }
        Ok(s)
    }

    /// The identity substitution.
    pub fn identity<R: Ring<Elem = E>>(ring: &R, nvars: usize, cutoff: u32) -> Self {
        let images = (0..nvars)
            .map(|i| TPoly::monomial(ring, Monomial::var(nvars, i), cutoff))
            .collect();
        Substitution { nvars, cutoff, images }
    }

    /// Elementary substitution `x_i -> x_i + c * f`, all other variables
    /// fixed. `f` must have positive degree.
    pub fn elementary<R: Ring<Elem = E>>(
        ring: &R,
        nvars: usize,
        cutoff: u32,
        i: usize,
        f: &Monomial,
        c: E,
    ) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::ConstantMonomial);
        }
        if f.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: f.nvars() });
        }
        let mut s = Self::identity(ring, nvars, cutoff);
        let bump = TPoly::term(ring, f.clone(), c, cutoff);
        s.images[i] = s.images[i].add(ring, &bump);
        let det = linalg::determinant(ring, &s.linear_matrix(ring));
        if ring.is_zero(&det) {
            return Err(Error::SingularLinearPart);
        }
        Ok(s)
    }

    /// Number of ambient variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Working cutoff.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Image of the `i`-th variable.
    pub fn image(&self, i: usize) -> &TPoly<E> {
        &self.images[i]
    }

    /// Matrix of the induced map on the degree-one part.
    pub fn linear_matrix<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        (0..self.nvars)
            .map(|i| {
                (0..self.nvars)
                    .map(|j| {
                        self.images[i]
                            .coeff(&Monomial::var(self.nvars, j))
                            .cloned()
                            .unwrap_or_else(|| ring.zero())
                    })
                    .collect()
            })
            .collect()
    }

    /// Apply to a polynomial, truncating products at `workspace`.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, f: &TPoly<E>, workspace: u32) -> TPoly<E> {
        debug_assert_eq!(f.nvars(), self.nvars);
        let mut powers: Vec<Vec<TPoly<E>>> = (0..self.nvars)
            .map(|_| alloc::vec![TPoly::monomial(ring, Monomial::one(self.nvars), workspace)])
            .collect();
        let mut out = TPoly::zero(self.nvars, workspace);
        for (m, c) in f.terms() {
            let mut term = TPoly::term(ring, Monomial::one(self.nvars), c.clone(), workspace);
            for i in 0..self.nvars {
                let e = m.exp(i) as usize;
                while powers[i].len() <= e {
                    let next = powers[i]
                        .last()
                        .unwrap()
                        .mul(ring, &self.images[i].with_cutoff(workspace));
                    powers[i].push(next);
                }
                term = term.mul(ring, &powers[i][e]);
            }
            out = out.add(ring, &term);
        }
        out
    }

    /// Apply with truncation at the substitution's own cutoff.
    pub fn substitute<R: Ring<Elem = E>>(&self, ring: &R, f: &TPoly<E>) -> TPoly<E> {
        self.apply(ring, f, self.cutoff.min(f.cutoff()))
    }

    /// Apply with no truncation at all; exact polynomial expansion.
    pub fn substitute_exact<R: Ring<Elem = E>>(&self, ring: &R, f: &TPoly<E>) -> TPoly<E> {
        self.apply(ring, f, UNBOUNDED)
    }

    /// Composition: the result acts as `self` after `other`, so applying it
    /// to `f` equals applying `self` to `other`'s images inside `f`.
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        let cutoff = self.cutoff.min(other.cutoff);
        let images = (0..self.nvars)
            .map(|i| self.apply(ring, &other.images[i], cutoff))
            .collect();
        Substitution::new(ring, images, cutoff)
    }

    /// Whether every generator of `ideal` maps into the ideal, using exact
    /// untruncated expansion of the images.
    pub fn preserves_ideal<R: Ring<Elem = E>>(&self, ring: &R, ideal: &MonomialIdeal) -> bool {
        ideal.gens().iter().all(|g| {
            let img = self.substitute_exact(ring, &TPoly::monomial(ring, g.clone(), UNBOUNDED));
            img.supported_in(ideal)
        })
    }

    /// Compositional inverse modulo degree `n`, over a field.
    pub fn invert<F: Field<Elem = E>>(&self, field: &F, n: u32) -> Result<Self> {
        if n == UNBOUNDED {
            return Err(Error::CutoffTooSmall { required: 2, found: n });
        }
        let lin = self.linear_matrix(field);
        let inv_lin = invert_matrix(field, &lin).ok_or(Error::SingularLinearPart)?;
        self.complete_inverse(field, inv_lin, n)
    }

    /// Compositional inverse modulo degree `n` when the linear part is the
    /// identity plus a nilpotent matrix. Works over any coefficient ring
    /// because the linear inverse is a terminating Neumann series.
    pub fn invert_unipotent<R: Ring<Elem = E>>(&self, ring: &R, n: u32) -> Result<Self> {
        if n == UNBOUNDED {
            return Err(Error::CutoffTooSmall { required: 2, found: n });
        }
        let lin = self.linear_matrix(ring);
        let id: Vec<Vec<E>> = (0..self.nvars)
            .map(|i| (0..self.nvars).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        let neg: Vec<Vec<E>> = (0..self.nvars)
            .map(|i| (0..self.nvars).map(|j| ring.sub(&id[i][j], &lin[i][j])).collect())
            .collect();
        let mut inv_lin = id.clone();
        let mut power = neg.clone();
        for _ in 1..=self.nvars {
            for i in 0..self.nvars {
                for j in 0..self.nvars {
                    inv_lin[i][j] = ring.add(&inv_lin[i][j], &power[i][j]);
                }
            }
            power = mat_mul(ring, &power, &neg);
        }
        if mat_mul(ring, &lin, &inv_lin) != id {
            return Err(Error::SingularLinearPart);
        }
        self.complete_inverse(ring, inv_lin, n)
    }

    fn complete_inverse<R: Ring<Elem = E>>(
        &self,
        ring: &R,
        inv_lin: Vec<Vec<E>>,
        n: u32,
    ) -> Result<Self> {
        // start from the inverse of the linear part
        let mut images: Vec<TPoly<E>> = (0..self.nvars)
            .map(|i| {
                let mut img = TPoly::zero(self.nvars, n);
                for j in 0..self.nvars {
                    img = img.add(
                        ring,
                        &TPoly::term(ring, Monomial::var(self.nvars, j), inv_lin[i][j].clone(), n),
                    );
                }
                img
            })
            .collect();
        let inv_linear_subst = Substitution { nvars: self.nvars, cutoff: n, images: images.clone() };
        for _degree in 2..n {
            // residual of v(s(x)) = x at the lowest unresolved degree
            let current = Substitution { nvars: self.nvars, cutoff: n, images: images.clone() };
            let mut done = true;
            for i in 0..self.nvars {
                let composed = self.apply(ring, &current.images[i], n);
                let target = TPoly::monomial(ring, Monomial::var(self.nvars, i), n);
                let residual = target.sub(ring, &composed);
                if residual.is_zero() {
                    continue;
                }
                done = false;
                let d = residual.order().unwrap();
                let lowest = TPoly::from_terms(
                    ring,
                    self.nvars,
                    n,
                    residual.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())),
                );
                // a degree-d correction only sees the linear part of s
                let correction = inv_linear_subst.apply(ring, &lowest, n);
                images[i] = images[i].add(ring, &correction);
            }
            if done {
                break;
            }
        }
        Substitution::new(ring, images, n)
    }
}

fn mat_mul<R: Ring>(ring: &R, a: &[Vec<R::Elem>], b: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = ring.zero();
                    for (k, row) in b.iter().enumerate() {
                        acc = ring.add(&acc, &ring.mul(&a[i][k], &row[j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}


fn invert_matrix<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    let pivots = linalg::rref(field, &mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| p != k) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row span of the images of an ideal's multiples below the cutoff, as a
/// subspace of the monomials of degree `< cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace<E> {
    nvars: usize,
    cutoff: u32,
    basis: Vec<Monomial>,
    rows: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq + Eq + core::fmt::Debug> RowSpace<E> {
    /// Reduce raw coefficient rows over the monomial basis of degree
    /// `< cutoff`.
    pub fn from_polys<F: Field<Elem = E>>(
        field: &F,
        nvars: usize,
        cutoff: u32,
        polys: &[TPoly<E>],
    ) -> Self {
        let basis = monomials_below(nvars, cutoff);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut rows = Vec::new();
        for p in polys {
            let mut row = alloc::vec![field.zero(); basis.len()];
            for (m, c) in p.terms() {
                if m.degree() < cutoff {
                    row[index[m]] = c.clone();
                }
            }
            rows.push(row);
        }
        linalg::rref(field, &mut rows);
        RowSpace { nvars, cutoff, basis, rows }
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Ambient cutoff.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Reduced rows, for reporting.
    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Basis monomials labelling the columns.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Rebuild the reduced rows as polynomials.
    pub fn row_polys<F: Field<Elem = E>>(&self, field: &F) -> Vec<TPoly<E>> {
        self.rows
            .iter()
            .map(|row| {
                TPoly::from_terms(
                    field,
                    self.nvars,
                    self.cutoff,
                    row.iter()
                        .enumerate()
                        .filter(|(_, c)| !field.is_zero(c))
                        .map(|(k, c)| (self.basis[k].clone(), c.clone())),
                )
            })
            .collect()
    }

    /// Membership of a polynomial in the span.
    pub fn contains_poly<F: Field<Elem = E>>(&self, field: &F, p: &TPoly<E>) -> bool {
        let mut target = alloc::vec![field.zero(); self.basis.len()];
        for (m, c) in p.terms() {
            if m.degree() >= self.cutoff {
                return false;
            }
            let k = self.basis.iter().position(|b| b == m).unwrap();
            target[k] = c.clone();
        }
        linalg::in_row_span(field, &self.rows, &target)
    }

    /// Sum of two subspaces over the same basis.
    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        debug_assert_eq!(self.cutoff, other.cutoff);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        linalg::rref(field, &mut rows);
        RowSpace { nvars: self.nvars, cutoff: self.cutoff, basis: self.basis.clone(), rows }
    }

    /// Span of pairwise products, truncated at the shared cutoff.
    pub fn product<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut prods = Vec::new();
        for a in self.row_polys(field) {
            for b in other.row_polys(field) {
                prods.push(a.mul(field, &b));
            }
        }
        RowSpace::from_polys(field, self.nvars, self.cutoff, &prods)
    }

    /// Span of termwise `p`-th powers of the reduced rows.
    pub fn frobenius<F: Field<Elem = E>>(&self, field: &F, p: u32) -> Self {
        let polys: Vec<TPoly<E>> = self
            .row_polys(field)
            .into_iter()
            .map(|poly| poly.frobenius(field, p))
            .collect();
        RowSpace::from_polys(field, self.nvars, self.cutoff, &polys)
    }

    /// The unit of the product operation: the span of the constant 1.
    pub fn unit_space<F: Field<Elem = E>>(field: &F, nvars: usize, cutoff: u32) -> Self {
        let one = TPoly::monomial(field, Monomial::one(nvars), cutoff);
        RowSpace::from_polys(field, nvars, cutoff, &[one])
    }
}

/// Span of the image of `ideal` under `s` in the quotient by degree
/// `cutoff`: the reduced row space of the images of all ideal multiples of
/// degree below the cutoff.
pub fn ideal_image_space<F, E>(
    field: &F,
    s: &Substitution<E>,
    ideal: &MonomialIdeal,
    cutoff: u32,
) -> Result<RowSpace<E>>
where
    E: Clone + PartialEq + Eq + core::fmt::Debug,
    F: Field<Elem = E>,
{
    let nilp = ideal.nilpotency_index()?;
    if cutoff < nilp {
        return Err(Error::CutoffTooSmall { required: nilp, found: cutoff });
    }
    let mut images = Vec::new();
    for source in ideal.members_below(cutoff) {
        let poly = TPoly::monomial(field, source, cutoff);
        images.push(s.apply(field, &poly, cutoff));
    }
    Ok(RowSpace::from_polys(field, ideal.nvars(), cutoff, &images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};
    use crate::upoly::UPolyRing;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn elementary_binomial_expansion() {
        // x -> x + t y applied to x^2 over Q[t]
        let r = UPolyRing::new(Rationals);
        let t = r.parameter();
        let s = Substitution::elementary(&r, 2, UNBOUNDED, 0, &mono(&[0, 1]), t.clone()).unwrap();
        let x2 = TPoly::monomial(&r, mono(&[2, 0]), UNBOUNDED);
        let img = s.substitute_exact(&r, &x2);
        let t2 = r.mul(&t, &t);
        assert_eq!(img.coeff(&mono(&[2, 0])), Some(&r.one()));
        assert_eq!(img.coeff(&mono(&[1, 1])), Some(&r.mul(&r.from_i64(2), &t)));
        assert_eq!(img.coeff(&mono(&[0, 2])), Some(&t2));
        // over F_2[t] the cross term vanishes
        let r2 = UPolyRing::new(PrimeField::new(2));
        let t = r2.parameter();
        let s = Substitution::elementary(&r2, 2, UNBOUNDED, 0, &mono(&[0, 1]), t).unwrap();
        let x2 = TPoly::monomial(&r2, mono(&[2, 0]), UNBOUNDED);
        let img = s.substitute_exact(&r2, &x2);
        assert_eq!(img.coeff(&mono(&[1, 1])), None);
        assert!(img.coeff(&mono(&[0, 2])).is_some());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let q = Rationals;
        let s = Substitution::elementary(&q, 2, 4, 0, &mono(&[0, 2]), q.one()).unwrap();
        let x2 = TPoly::monomial(&q, mono(&[2, 0]), 4);
        // (x + y^2)^2 = x^2 + 2xy^2 + y^4; the last term exceeds the cutoff
        let img = s.substitute(&q, &x2);
        assert_eq!(img.coeff(&mono(&[0, 4])), None);
        assert_eq!(img.coeff(&mono(&[1, 2])), Some(&q.from_i64(2)));
        let exact = s.substitute_exact(&q, &x2);
        assert_eq!(exact.coeff(&mono(&[0, 4])), Some(&q.one()));
    }

    #[test]
    fn constant_term_rejected() {
        let q = Rationals;
        let img = TPoly::from_terms(
            &q,
            1,
            8,
            [(Monomial::one(1), q.one()), (mono(&[1]), q.one())],
        );
        assert_eq!(
            Substitution::new(&q, alloc::vec![img], 8),
            Err(Error::ConstantMonomial)
        );
    }

    #[test]
    fn singular_linear_part_rejected() {
        let q = Rationals;
        // x -> y, y -> y has a rank one linear part
        let images = alloc::vec![
            TPoly::monomial(&q, mono(&[0, 1]), 8),
            TPoly::monomial(&q, mono(&[0, 1]), 8),
        ];
        assert_eq!(Substitution::new(&q, images, 8), Err(Error::SingularLinearPart));
    }

    #[test]
    fn generically_invertible_parameter_scaling_allowed() {
        // x -> x + t x: determinant 1 + t is nonzero though not a unit
        let r = UPolyRing::new(Rationals);
        let t = r.parameter();
        let s = Substitution::elementary(&r, 1, 8, 0, &mono(&[1]), t);
        assert!(s.is_ok());
    }

    #[test]
    fn compose_then_invert_round_trip() {
        let q = Rationals;
        let n = 5;
        let s = Substitution::elementary(&q, 2, n, 0, &mono(&[0, 2]), q.one()).unwrap();
        let inv = s.invert(&q, n).unwrap();
        // x -> x + y^2 inverts to x -> x - y^2 exactly
        assert_eq!(inv.image(0).coeff(&mono(&[0, 2])), Some(&q.from_i64(-1)));
        let id = s.compose(&q, &inv).unwrap();
        for i in 0..2 {
            let expect = TPoly::monomial(&q, Monomial::var(2, i), n);
            assert_eq!(id.image(i), &expect, "image {i}");
        }
        let id2 = inv.compose(&q, &s).unwrap();
        for i in 0..2 {
            let expect = TPoly::monomial(&q, Monomial::var(2, i), n);
            assert_eq!(id2.image(i), &expect);
        }
    }

    #[test]
    fn invert_nonlinear_example() {
        let q = Rationals;
        let n = 6;
        // x -> x + x y + y^3, y -> y - x^2
        let imgs = alloc::vec![
            TPoly::from_terms(
                &q,
                2,
                n,
                [
                    (mono(&[1, 0]), q.one()),
                    (mono(&[1, 1]), q.one()),
                    (mono(&[0, 3]), q.one()),
                ],
            ),
            TPoly::from_terms(&q, 2, n, [(mono(&[0, 1]), q.one()), (mono(&[2, 0]), q.from_i64(-1))]),
        ];
        let s = Substitution::new(&q, imgs, n).unwrap();
        let inv = s.invert(&q, n).unwrap();
        let id = s.compose(&q, &inv).unwrap();
        for i in 0..2 {
            assert_eq!(id.image(i), &TPoly::monomial(&q, Monomial::var(2, i), n));
        }
    }

    #[test]
    fn preserves_ideal_examples() {
        let i = MonomialIdeal::new(2, alloc::vec![mono(&[2, 0]), mono(&[0, 2])]).unwrap();
        // x -> x + t y fails over Q[t] (cross term) but works over F_2[t]
        let rq = UPolyRing::new(Rationals);
        let t = rq.parameter();
        let s = Substitution::elementary(&rq, 2, UNBOUNDED, 0, &mono(&[0, 1]), t).unwrap();
        assert!(!s.preserves_ideal(&rq, &i));
        let r2 = UPolyRing::new(PrimeField::new(2));
        let t = r2.parameter();
        let s = Substitution::elementary(&r2, 2, UNBOUNDED, 0, &mono(&[0, 1]), t).unwrap();
        assert!(s.preserves_ideal(&r2, &i));
    }

    #[test]
    fn image_space_of_identity_is_ideal_span() {
        let q = Rationals;
        let i = MonomialIdeal::new(2, alloc::vec![mono(&[1, 0]), mono(&[0, 2])]).unwrap();
        let id = Substitution::identity(&q, 2, 4);
        let space = ideal_image_space(&q, &id, &i, 4).unwrap();
        // members of (x, y^2) below degree 4: x, y^2, x^2, xy, xy^2, x^3, x^2 y, y^3
        assert_eq!(space.dim(), 8);
        let x = TPoly::monomial(&q, mono(&[1, 0]), 4);
        assert!(space.contains_poly(&q, &x));
        let y = TPoly::monomial(&q, mono(&[0, 1]), 4);
        assert!(!space.contains_poly(&q, &y));
    }

    #[test]
    fn image_space_tracks_substitution() {
        let q = Rationals;
        let i = MonomialIdeal::new(2, alloc::vec![mono(&[1, 0]), mono(&[0, 4])]).unwrap();
        // x -> x + y^2 + y^3 with numeric coefficients
        let img = TPoly::from_terms(
            &q,
            2,
            4,
            [
                (mono(&[1, 0]), q.one()),
                (mono(&[0, 2]), q.one()),
                (mono(&[0, 3]), q.one()),
            ],
        );
        let s = Substitution::new(
            &q,
            alloc::vec![img, TPoly::monomial(&q, mono(&[0, 1]), 4)],
            4,
        )
        .unwrap();
        let space = ideal_image_space(&q, &s, &i, 4).unwrap();
        let probe = TPoly::from_terms(
            &q,
            2,
            4,
            [
                (mono(&[1, 0]), q.one()),
                (mono(&[0, 2]), q.one()),
                (mono(&[0, 3]), q.one()),
            ],
        );
        assert!(space.contains_poly(&q, &probe));
        let probe2 = TPoly::from_terms(
            &q,
            2,
            4,
            [(mono(&[1, 1]), q.one()), (mono(&[0, 3]), q.one())],
        );
        assert!(space.contains_poly(&q, &probe2));
        assert!(!space.contains_poly(&q, &TPoly::monomial(&q, mono(&[1, 0]), 4)));
    }

    #[test]
    fn cutoff_too_small_is_reported() {
        let q = Rationals;
        let i = MonomialIdeal::new(2, alloc::vec![mono(&[1, 0]), mono(&[0, 4])]).unwrap();
        let id = Substitution::identity(&q, 2, 3);
        assert_eq!(
            ideal_image_space(&q, &id, &i, 3),
            Err(Error::CutoffTooSmall { required: 4, found: 3 })
        );
    }

    #[test]
    fn row_space_products() {
        let q = Rationals;
        let x = TPoly::monomial(&q, mono(&[1, 0]), 4);
        let y = TPoly::monomial(&q, mono(&[0, 1]), 4);
        let u = RowSpace::from_polys(&q, 2, 4, &[x]);
        let v = RowSpace::from_polys(&q, 2, 4, &[y]);
        let p = u.product(&q, &v);
        assert_eq!(p.dim(), 1);
        assert!(p.contains_poly(&q, &TPoly::monomial(&q, mono(&[1, 1]), 4)));
        let s = u.sum(&q, &v);
        assert_eq!(s.dim(), 2);
    }
}
