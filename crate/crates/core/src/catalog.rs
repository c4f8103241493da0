//! Fixed catalog of small ideal sequences used as shared fixtures by the
//! test suites and the `check` command, plus a seeded generator of random
//! sequences for sweep-style checks.

use alloc::vec::Vec;

use crate::error::Result;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::parse::parse_ideal_sequence;
use crate::rng::Rng;

/// One named sequence. `expected_dimension` is the characteristic-zero
/// total dimension (sum of measure colengths) where it has been pinned
/// down by hand; entries without it are still swept by structural checks.
pub struct CatalogEntry {
    pub name: &'static str,
    pub input: &'static str,
    pub expected_dimension: Option<u64>,
}

impl CatalogEntry {
    pub fn ideals(&self) -> Result<Vec<MonomialIdeal>> {
        parse_ideal_sequence(self.input)
    }
}

/// Every entry has at most three variables and colength at most eight per
/// ideal, small enough for the brute-force oracles.
pub fn catalog() -> Vec<CatalogEntry> {
    let entry = |name, input, expected_dimension| CatalogEntry { name, input, expected_dimension };
    alloc::vec![
        entry("line.2", "[x1^2]", Some(1)),
        entry("line.4", "[x1^4]", Some(1)),
        entry("point", "[x1, x2]", Some(2)),
        entry("square", "[x1^2, x1*x2, x2^2]", Some(2)),
        entry("curvi.2", "[x1, x2^2]", Some(3)),
        entry("curvi.3", "[x1, x2^3]", Some(4)),
        entry("curvi.4", "[x1, x2^4]", Some(5)),
        entry("curvi.5", "[x1, x2^5]", Some(6)),
        entry("curvi.6", "[x1, x2^6]", Some(7)),
        entry("curvi.7", "[x1, x2^7]", Some(8)),
        entry("fat.22", "[x1^2, x2^2]", Some(4)),
        entry("fat.32", "[x1^3, x2^2]", Some(5)),
        entry("cusp", "[x1^2, x1*x2, x2^3]", Some(3)),
        entry("pair.nested", "[x1, x2^4]; [x1, x2^2]", Some(5)),
        entry("pair.curvi", "[x1, x2^2]; [x1, x2^3]", Some(4)),
        entry("space.point", "[x1, x2, x3^2]", Some(5)),
        entry("space.plane", "[x1, x2^2, x3^2]", Some(8)),
        entry("space.fat", "[x1^2, x2^2, x3^2]", Some(12)),
    ]
}

/// Seeded random sequences for sweeps: one to two ideals in one to three
/// variables, each of finite colength by construction (a pure power of
/// every variable is always included).
pub fn random_sequences(seed: u64, count: usize) -> Vec<Vec<MonomialIdeal>> {
    let mut rng = Rng::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let nvars = 1 + rng.below(3) as usize;
        let r = 1 + rng.below(2) as usize;
        let mut seq = Vec::with_capacity(r);
        for _ in 0..r {
            seq.push(random_ideal(&mut rng, nvars));
        }
        out.push(seq);
    }
    out
}

fn random_ideal(rng: &mut Rng, nvars: usize) -> MonomialIdeal {
    let max_pure = if nvars == 3 { 2 } else { 3 };
    let mut gens: Vec<Monomial> = (0..nvars)
        .map(|i| {
            let d = 1 + rng.below(max_pure) as u32;
            Monomial::new((0..nvars).map(|j| if j == i { d } else { 0 }).collect())
        })
        .collect();
    let extras = rng.below(3);
    for _ in 0..extras {
        let m = Monomial::new(
            (0..nvars).map(|_| rng.below(3) as u32).collect(),
        );
        if !m.is_constant() {
            gens.push(m);
        }
    }
    MonomialIdeal::new(nvars, gens).expect("generators are built in the right ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_parse_within_caps() {
        let entries = catalog();
        let mut pinned = 0;
        for entry in &entries {
            let ideals = entry.ideals().unwrap();
            assert!(!ideals.is_empty(), "{}", entry.name);
            for ideal in &ideals {
                assert!(ideal.nvars() <= 3, "{}", entry.name);
                assert!(ideal.colength().unwrap() <= 8, "{}", entry.name);
            }
            if entry.expected_dimension.is_some() {
                pinned += 1;
            }
        }
        assert!(pinned >= 12);
    }

    #[test]
    fn catalog_names_are_unique() {
        let entries = catalog();
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                assert_ne!(a.name, b.name);
            }
        }
    }

    #[test]
    fn random_sequences_are_deterministic_and_finite() {
        let a = random_sequences(7, 20);
        let b = random_sequences(7, 20);
        assert_eq!(a.len(), 20);
        for (sa, sb) in a.iter().zip(&b) {
            assert_eq!(sa, sb);
            for ideal in sa {
                assert!(ideal.colength().is_ok());
                assert_eq!(ideal.nvars(), sa[0].nvars());
            }
        }
        let c = random_sequences(8, 20);
        assert_ne!(a, c);
    }
}
