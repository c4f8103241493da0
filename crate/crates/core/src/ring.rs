//! Exact coefficient rings: the rationals and prime fields, plus the ring
//! and field traits the polynomial and linear algebra code is generic over.
//!
//! Ring values are plain data; the ring object carries the context (such as
//! the modulus) and performs all arithmetic. Every ring here is an integral
//! domain with decidable zero testing and exact division, which is all that
//! fraction-free elimination needs.

use alloc::string::String;
use alloc::string::ToString;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative integral domain with exact operations.
pub trait Ring: Clone {
    /// Element representation.
    type Elem: Clone + PartialEq + Eq + Debug;

    /// Additive identity.
    fn zero(&self) -> Self::Elem;
    /// Multiplicative identity.
    fn one(&self) -> Self::Elem;
    /// Embedding of a small integer.
    #[allow(clippy::wrong_self_convention)] // the receiver is the ring, not the element
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Zero test.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` has a multiplicative inverse in the ring.
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Sum.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Additive inverse.
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Product.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Quotient when `b` divides `a` exactly, `None` otherwise.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// Characteristic of the ring (zero or a prime here).
    fn characteristic(&self) -> u32;
    /// Rendering used by reports and debugging output.
    fn display(&self, a: &Self::Elem) -> String;

    /// Difference.
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// Ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Quotient by a nonzero element.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }
}

/// The field of rational numbers with unbounded integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }

    fn characteristic(&self) -> u32 {
        0
    }

    fn display(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Parse `num` or `num/den` into a rational.
pub fn rational_from_str(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = text.trim().parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

/// Render a rational with a guaranteed `num/den` form only when needed.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

/// Whether a rational is negative (used to normalize reported signs).
pub fn rational_is_negative(q: &BigRational) -> bool {
    q.is_negative()
}

/// Prime field `F_p` for a small prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Field of the given prime order. Primality is asserted because every
    /// nonzero element must be invertible.
    pub fn new(p: u32) -> Self {
        assert!(p >= 2 && is_small_prime(p), "modulus must be prime");
        PrimeField { p }
    }

    /// The modulus.
    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(i64::from(self.p)) as u64
    }
}

fn is_small_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % u64::from(self.p)
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % u64::from(self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            u64::from(self.p) - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % u64::from(self.p)
    }

    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p
        let mut base = *a;
        let mut exp = u64::from(self.p) - 2;
        let mut acc = 1u64;
        let p = u64::from(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc)
    }
}
