//! Monomials in a fixed tuple of power series variables.
//!
//! A monomial is an exponent vector; the ambient variable count is part of
//! the value and all binary operations insist that it matches. The derived
//! order is graded (total degree first, then lexicographic on the exponent
//! vector), which makes it a monomial order: products preserve comparisons
//! and every nonempty set has a least element.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a single monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Monomial with the given exponents.
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The variable `x_{i+1}` as a monomial (`i` is zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Number of ambient variables.
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Exponent of the `i`-th variable.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Exponents as a slice.
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Degree weighted by `w`.
    pub fn weighted_degree(&self, w: &WeightVector) -> u64 {
        self.exps
            .iter()
            .zip(w.entries())
            .map(|(&e, &wi)| u64::from(e) * wi)
            .sum()
    }

    /// True for the constant monomial.
    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// `self` raised to the `k`-th power.
    pub fn pow(&self, k: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&e| e * k).collect() }
    }

    /// Exponents multiplied by `factor`; the image under iterated Frobenius
    /// when `factor` is a power of the characteristic.
    pub fn stretch(&self, factor: u32) -> Monomial {
        self.pow(factor)
    }

    /// Reindex the variables: exponent `i` moves to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut exps = vec![0; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Monomial { exps }
    }

    /// Base-`p` digit layers `f_0, f_1, ..., f_m` with
    /// `f = f_0 * f_1^p * ... * f_m^(p^m)` and every layer `p`-th power free.
    ///
    /// Trailing constant layers are trimmed but at least one layer is kept,
    /// so the constant monomial decomposes as a single constant layer.
    pub fn base_p_layers(&self, p: u32) -> Vec<Monomial> {
        assert!(p >= 2, "base must be a prime characteristic");
        let mut rem = self.exps.clone();
        let mut layers = Vec::new();
        while rem.iter().any(|&e| e > 0) {
            let digits: Vec<u32> = rem.iter().map(|&e| e % p).collect();
            for e in rem.iter_mut() {
                *e /= p;
            }
            layers.push(Monomial { exps: digits });
        }
        if layers.is_empty() {
            layers.push(Monomial::one(self.exps.len()));
        }
        layers
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Positive integer weights, one per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    entries: Vec<u64>,
}

impl WeightVector {
    /// Weights all equal to one; weighted degree reduces to total degree.
    pub fn ones(nvars: usize) -> Self {
        WeightVector { entries: vec![1; nvars] }
    }

    /// Checked constructor; every weight must be at least one.
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::ConstantMonomial);
        }
        Ok(WeightVector { entries })
    }

    /// Weight entries.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Number of variables covered.
    pub fn nvars(&self) -> usize {
        self.entries.len()
    }
}

/// Weighted degree sequence of the base-`p` layers of a monomial.
///
/// In characteristic zero there is a single part, the weighted degree. In
/// characteristic `p`, part `k` is the weighted degree of the `k`-th digit
/// layer, so the parts reconstruct the weighted degree via powers of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentType {
    parts: Vec<u64>,
    characteristic: u32,
}

impl ExponentType {
    /// Exponent type of `m` in the given characteristic and weights.
    pub fn of(m: &Monomial, characteristic: u32, w: &WeightVector) -> Result<Self> {
        if w.nvars() != m.nvars() {
            return Err(Error::DimensionMismatch { expected: m.nvars(), found: w.nvars() });
        }
        if characteristic == 0 {
            return Ok(ExponentType { parts: vec![m.weighted_degree(w)], characteristic: 0 });
        }
        let mut parts: Vec<u64> = m
            .base_p_layers(characteristic)
            .iter()
            .map(|layer| layer.weighted_degree(w))
            .collect();
        while parts.len() > 1 && *parts.last().unwrap() == 0 {
            parts.pop();
        }
        Ok(ExponentType { parts, characteristic })
    }

    /// The layer weights, lowest layer first.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Characteristic the type was computed in (zero allowed).
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Total weighted degree reconstructed from the parts.
    pub fn total_weight(&self) -> u128 {
        if self.characteristic == 0 {
            return u128::from(self.parts[0]);
        }
        let p = u128::from(self.characteristic);
        let mut pw = 1u128;
        let mut total = 0u128;
        for &a in &self.parts {
            total += u128::from(a) * pw;
            pw *= p;
        }
        total
    }

    /// Whether `self <= other` in the layer order: every partial sum
    /// `sum_{i<=k} a_i p^i` is bounded by the corresponding partial sum of
    /// `other`, with equality once both sequences are exhausted. Types of
    /// different total weight are incomparable.
    pub fn leq(&self, other: &ExponentType) -> Result<bool> {
        if self.characteristic != other.characteristic {
            return Err(Error::CharacteristicMismatch {
                left: self.characteristic,
                right: other.characteristic,
            });
        }
        if self.characteristic == 0 {
            return Ok(self.parts == other.parts);
        }
        let p = u128::from(self.characteristic);
        let len = self.parts.len().max(other.parts.len());
        let mut pw = 1u128;
        let (mut lhs, mut rhs) = (0u128, 0u128);
        for k in 0..len {
            lhs += u128::from(self.parts.get(k).copied().unwrap_or(0)) * pw;
            rhs += u128::from(other.parts.get(k).copied().unwrap_or(0)) * pw;
            if lhs > rhs {
                return Ok(false);
            }
            pw *= p;
        }
        Ok(lhs == rhs)
    }

    /// Whether the two types are comparable in either direction.
    pub fn comparable(&self, other: &ExponentType) -> Result<bool> {
        Ok(self.leq(other)? || other.leq(self)?)
    }
}

impl fmt::Display for ExponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All monomials of the exact total degree `d`, in canonical order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill_degree(nvars, d, 0, &mut current, &mut out);
    out.sort();
    out
}

fn fill_degree(nvars: usize, left: u32, i: usize, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i + 1 == nvars {
        current[i] = left;
        out.push(Monomial::new(current.clone()));
        current[i] = 0;
        return;
    }
    for e in 0..=left {
        current[i] = e;
        fill_degree(nvars, left - e, i + 1, current, out);
    }
    current[i] = 0;
}

/// All monomials of total degree strictly below `bound`, in canonical order.
pub fn monomials_below(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..bound {
        out.extend(monomials_of_degree(nvars, d));
    }
    out
}
