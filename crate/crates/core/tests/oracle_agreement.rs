//! The measuring pipeline against both brute-force oracles: derivation
//! ranks in characteristic zero, exhaustive image enumeration over small
//! prime fields.

use align_core::catalog::catalog;
use align_core::error::Error;
use align_core::ideal::MonomialIdeal;
use align_core::measuring::MeasuringSequence;
use align_core::oracle::{default_tangent_cutoff, enumerate_images, tangent_orbit_dimension};

fn colength_sum(ms: &MeasuringSequence) -> u64 {
    ms.measures().iter().map(|a| a.colength().unwrap()).sum()
}

#[test]
fn tangent_dimension_matches_measuring_on_catalog() {
    for entry in catalog() {
        let ideals = entry.ideals().unwrap();
        let ms = MeasuringSequence::compute(&ideals, 0).unwrap();
        let total = colength_sum(&ms);
        let cutoff = default_tangent_cutoff(&ideals).unwrap();
        let oracle = tangent_orbit_dimension(&ideals, cutoff).unwrap();
        assert_eq!(total, oracle, "{}: measuring vs derivation rank", entry.name);
        if let Some(expected) = entry.expected_dimension {
            assert_eq!(total, expected, "{}: pinned dimension", entry.name);
        }
    }
}

#[test]
fn enumeration_matches_measuring_over_small_fields() {
    let mut checked = 0;
    for entry in catalog() {
        let ideals = entry.ideals().unwrap();
        if ideals[0].nvars() != 2 {
            continue;
        }
        let nilp = ideals
            .iter()
            .map(|i| i.nilpotency_index().unwrap())
            .max()
            .unwrap();
        let cutoff = nilp.max(2);
        if cutoff > 4 {
            continue;
        }
        for p in [2u32, 3] {
            let ms = MeasuringSequence::compute(&ideals, p).unwrap();
            let clip = MonomialIdeal::maximal_power(2, cutoff);
            for i in 0..2 {
                let enumerated = match enumerate_images(i, &ideals, p, cutoff) {
                    Ok(found) => found,
                    Err(Error::SearchSpaceTooLarge(_)) => continue,
                    Err(e) => panic!("{} p={p} i={i}: {e}", entry.name),
                };
                let clipped = ms.measure(i).sum(&clip).unwrap();
                assert_eq!(
                    enumerated, clipped,
                    "{} p={p} i={i}: enumeration vs measuring",
                    entry.name
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 30, "only {checked} enumeration cases ran");
}

#[test]
fn enumeration_is_stable_under_a_larger_cutoff() {
    // growing the window only adds monomials already inside the measure
    let ideals = vec![
        align_core::parse::parse_ideal("[x1^2, x2^2]", 0).unwrap(),
    ];
    for p in [2u32, 3] {
        let at3 = enumerate_images(0, &ideals, p, 3).unwrap();
        let at4 = enumerate_images(0, &ideals, p, 4).unwrap();
        let clip = MonomialIdeal::maximal_power(2, 3);
        assert_eq!(at4.sum(&clip).unwrap(), at3, "p={p}");
    }
}
