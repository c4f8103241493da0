//! Monomial ideals with eagerly minimalized generating sets.
//!
//! Generators are kept sorted and minimal at all times, so structural
//! equality of two values is equality of the ideals. The unit ideal is
//! represented by the single generator `1`; the zero ideal by no generators.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::monomial::{monomials_below, monomials_of_degree, Monomial};

/// A monomial ideal in `nvars` power series variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Ideal generated by the given monomials; the set is minimalized.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: g.nvars() });
            }
        }
        Ok(Self::from_unchecked(nvars, gens))
    }

    fn from_unchecked(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(gens.len());
        // ascending order: earlier generators can only divide later ones
        for g in gens {
            if !minimal.iter().any(|h| h.divides(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal { nvars, gens: minimal }
    }

    /// The zero ideal.
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    /// The unit ideal.
    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// The maximal ideal generated by all variables.
    pub fn maximal(nvars: usize) -> Self {
        let gens = (0..nvars).map(|i| Monomial::var(nvars, i)).collect();
        MonomialIdeal { nvars, gens }
    }

    /// The `k`-th power of the maximal ideal.
    pub fn maximal_power(nvars: usize, k: u32) -> Self {
        if k == 0 {
            return Self::unit(nvars);
        }
        MonomialIdeal { nvars, gens: monomials_of_degree(nvars, k) }
    }

    /// Number of ambient variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The minimal generators, in canonical order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// True for the zero ideal.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_constant())
    }

    /// Largest total degree among the minimal generators (zero ideal: none).
    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    /// Membership of a monomial.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Containment of a whole ideal.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Colon ideal `(self : f)` by a single monomial.
    pub fn colon(&self, f: &Monomial) -> Result<MonomialIdeal> {
        if f.nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: f.nvars() });
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                Monomial::new(
                    g.exps()
                        .iter()
                        .zip(f.exps())
                        .map(|(&a, &b)| a.saturating_sub(b))
                        .collect(),
                )
            })
            .collect();
        Ok(Self::from_unchecked(self.nvars, gens))
    }

    /// Sum of two ideals.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_unchecked(self.nvars, gens))
    }

    /// Product of two ideals.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(Self::from_unchecked(self.nvars, gens))
    }

    /// Intersection of two ideals (pairwise least common multiples).
    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::from_unchecked(self.nvars, gens))
    }

    /// The `k`-th power; the zeroth power is the unit ideal.
    pub fn pow(&self, k: u32) -> MonomialIdeal {
        let mut acc = Self::unit(self.nvars);
        for _ in 0..k {
            acc = acc.product(self).expect("same ambient arity");
        }
        acc
    }

    /// Frobenius power: every generator raised to `p^k`.
    pub fn frobenius_power(&self, p: u32, k: u32) -> MonomialIdeal {
        let factor = p.pow(k);
        let gens = self.gens.iter().map(|g| g.stretch(factor)).collect();
        // stretching preserves divisibility, so minimality is preserved
        MonomialIdeal { nvars: self.nvars, gens }
    }

    /// Reindex variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<MonomialIdeal> {
        if perm.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: perm.len() });
        }
        let gens = self.gens.iter().map(|g| g.permute(perm)).collect();
        Ok(Self::from_unchecked(self.nvars, gens))
    }

    /// For each variable, the least `d` with `x_i^d` in the ideal, if any.
    ///
    /// All entries exist exactly when the colength is finite. The unit
    /// ideal yields all zeros.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let mut bounds = vec![u32::MAX; self.nvars];
        for g in &self.gens {
            if g.is_constant() {
                return Some(vec![0; self.nvars]);
            }
            let support: Vec<usize> =
                (0..self.nvars).filter(|&i| g.exp(i) > 0).collect();
            if let [i] = support[..] {
                bounds[i] = bounds[i].min(g.exp(i));
            }
        }
        if bounds.contains(&u32::MAX) {
            None
        } else {
            Some(bounds)
        }
    }

    /// Monomials outside the ideal, in canonical order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let bounds = self.pure_power_bounds().ok_or(Error::InfiniteColength)?;
        let mut out = Vec::new();
        let mut current = vec![0u32; self.nvars];
        self.fill_standard(0, &bounds, &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    fn fill_standard(
        &self,
        i: usize,
        bounds: &[u32],
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == self.nvars {
            let m = Monomial::new(current.clone());
            if !self.contains(&m) {
                out.push(m);
            }
            return;
        }
        for e in 0..bounds[i].max(1) {
            current[i] = e;
            self.fill_standard(i + 1, bounds, current, out);
        }
        current[i] = 0;
    }

    /// Dimension of the quotient ring as a vector space.
    pub fn colength(&self) -> Result<u64> {
        Ok(self.standard_monomials()?.len() as u64)
    }

    /// Least `N` with every monomial of degree `N` in the ideal.
    pub fn nilpotency_index(&self) -> Result<u32> {
        if self.is_unit() {
            return Ok(0);
        }
        let bounds = self.pure_power_bounds().ok_or(Error::InfiniteColength)?;
        // every standard monomial has exponents below the pure power bounds
        let cap: u32 = bounds.iter().map(|&d| d - 1).sum::<u32>() + 1;
        for n in 1..=cap {
            if monomials_of_degree(self.nvars, n).iter().all(|m| self.contains(m)) {
                return Ok(n);
            }
        }
        Ok(cap)
    }

    /// Monomials of the ideal with total degree strictly below `bound`.
    pub fn members_below(&self, bound: u32) -> Vec<Monomial> {
        monomials_below(self.nvars, bound)
            .into_iter()
            .filter(|m| self.contains(m))
            .collect()
    }

    /// Monomials of positive degree outside the ideal, below `bound`.
    pub fn complement_below(&self, bound: u32) -> Vec<Monomial> {
        monomials_below(self.nvars, bound)
            .into_iter()
            .filter(|m| !m.is_constant() && !self.contains(m))
            .collect()
    }

    fn check_arity(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // reading order: low degree first, earlier variables first
        let mut shown = self.gens.clone();
        shown.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exps().cmp(a.exps())));
        write!(f, "[")?;
        for (i, g) in shown.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
