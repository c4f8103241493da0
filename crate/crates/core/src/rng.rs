//! Small deterministic generator for seeded randomized checks.
//!
//! The verification routines in this crate only need a reproducible stream
//! of small integers, identical across platforms, so a splitmix step is
//! used directly instead of pulling a full RNG stack into the no_std core.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Splitmix64 state.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    /// Generator seeded with the given value.
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Next raw 64-bit value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound` must be positive; the modulo
    /// bias is irrelevant at the bounds used here).
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Uniform signed value in `-bound..=bound`.
    pub fn signed(&mut self, bound: u64) -> i64 {
        self.below(2 * bound + 1) as i64 - bound as i64
    }

    /// Small rational with numerator in `-num_bound..=num_bound` and
    /// denominator in `1..=den_bound`.
    pub fn rational(&mut self, num_bound: u64, den_bound: u64) -> BigRational {
        let num = self.signed(num_bound);
        let den = 1 + self.below(den_bound) as i64;
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Small nonzero rational.
    pub fn nonzero_rational(&mut self, num_bound: u64, den_bound: u64) -> BigRational {
        loop {
            let q = self.rational(num_bound, den_bound);
            if !num_traits::Zero::is_zero(&q) {
                return q;
            }
        }
    }

    /// Reference to a uniformly chosen slice element.
    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}
