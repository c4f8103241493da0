//! Acceptance gate: eight pinned criteria, one test each, so the harness
//! prints one pass/fail line per criterion. Every comparison is exact.

use std::time::{Duration, Instant};

use align_cli::checks::run_sequence_checks;
use align_cli::job::descending_wedge_order;
use align_core::catalog::{catalog, random_sequences};
use align_core::classify::{classify, UniversalityVerdict};
use align_core::error::Error;
use align_core::fiber::{
    boundary_probe, interpolate_image_equations, plucker_map, quotient_frame, toric_check,
    CosetParametrization,
};
use align_core::flags::{coordinate_set, etale_degree, VariableOrder};
use align_core::ideal::MonomialIdeal;
use align_core::linalg;
use align_core::measuring::MeasuringSequence;
use align_core::monomial::{monomials_of_degree, Monomial};
use align_core::mpoly::MPoly;
use align_core::oracle::{default_tangent_cutoff, enumerate_images, tangent_orbit_dimension};
use align_core::parse::{parse_ideal, parse_ideal_sequence};
use align_core::ring::{Rationals, Ring};
use align_core::tpoly::TPoly;
use num_rational::BigRational;

const NESTED: &str = "[x1, x2^4]; [x1, x2^2]";

fn mono(exps: &[u32]) -> Monomial {
    Monomial::new(exps.to_vec())
}

fn q(n: i64) -> BigRational {
    Rationals.from_i64(n)
}

/// Coefficient vector of `f` over an explicit monomial basis; coordinates
/// missing from the basis are required to be absent from `f`.
fn coeff_vector(f: &MPoly<BigRational>, basis: &[Monomial]) -> Vec<BigRational> {
    let mut out = vec![q(0); basis.len()];
    for (m, c) in f.terms() {
        let pos = basis.iter().position(|b| b == m).expect("term inside the basis");
        out[pos] = c.clone();
    }
    out
}

fn spans_equal(rows: &[Vec<BigRational>], others: &[Vec<BigRational>]) -> bool {
    let a = linalg::rank(&Rationals, rows.to_vec());
    let b = linalg::rank(&Rationals, others.to_vec());
    let mut joint = rows.to_vec();
    joint.extend(others.to_vec());
    let c = linalg::rank(&Rationals, joint);
    a == b && b == c
}

fn span_contains(rows: &[Vec<BigRational>], target: &[BigRational]) -> bool {
    let a = linalg::rank(&Rationals, rows.to_vec());
    let mut joint = rows.to_vec();
    joint.push(target.to_vec());
    a == linalg::rank(&Rationals, joint)
}

#[test]
fn criterion_1_worked_example_regression() {
    let start = Instant::now();
    let ideals = parse_ideal_sequence(NESTED).unwrap();
    let ms = MeasuringSequence::compute(&ideals, 0).unwrap();
    let order = VariableOrder::from_measures(&ms).unwrap();
    let flag = order.default_flag();

    let coords = coordinate_set(&ms, &order, &flag).unwrap();
    assert_eq!(coords, vec![(0, mono(&[0, 2])), (0, mono(&[0, 3]))]);

    let param = CosetParametrization::from_measures(&ms, &order, &flag).unwrap();
    let frame = quotient_frame(&param, &ideals[0], 4).unwrap();
    assert_eq!(*frame.j1(), parse_ideal("[x1, x2^2]", 2).unwrap());
    assert_eq!(*frame.j2(), parse_ideal("[x1^2, x1*x2^2, x2^4]", 2).unwrap());
    assert_eq!(
        frame.basis(),
        &[mono(&[1, 0]), mono(&[0, 2]), mono(&[1, 1]), mono(&[0, 3])]
    );

    let map = plucker_map(&param, &frame).unwrap();
    let wedge = descending_wedge_order(&map);
    assert_eq!(wedge.sign, -1, "documented global sign");
    let ring = *map.ring();
    let a = ring.parameter(0);
    let b = ring.parameter(1);
    // reference tuple (-b, a^2, a, a, 1, 0), highest-first wedge order
    let reference = [ring.neg(&b),
        ring.mul(&a, &a),
        a.clone(),
        a.clone(),
        ring.one(),
        ring.zero()];
    let descending = wedge.relabel_tuple(|c| ring.neg(c), map.coordinates());
    let signed: Vec<MPoly<BigRational>> = reference.iter().map(|c| ring.neg(c)).collect();
    assert_eq!(descending, signed, "coordinates match up to the global sign");

    let spaces = interpolate_image_equations(&map, 2, 24, 0).unwrap();
    let names: Vec<Monomial> = (0..6).map(|k| Monomial::var(6, k)).collect();
    let linear: Vec<Vec<BigRational>> = spaces[0]
        .iter()
        .map(|f| coeff_vector(&wedge.relabel_equation(&ring_x(), f), &names))
        .collect();
    // span{x5, x2 - x3} in descending coordinates
    let x5 = coeff_vector(&ring_x().parameter(5), &names);
    let mut x2_minus_x3 = coeff_vector(&ring_x().parameter(2), &names);
    x2_minus_x3[3] = q(-1);
    assert!(spans_equal(&linear, &[x5, x2_minus_x3]), "degree one span");

    let quad_basis = monomials_of_degree(6, 2);
    let quads: Vec<Vec<BigRational>> = spaces[1]
        .iter()
        .map(|f| coeff_vector(&wedge.relabel_equation(&ring_x(), f), &quad_basis))
        .collect();
    let xr = ring_x();
    let target = xr.sub(
        &xr.mul(&xr.parameter(1), &xr.parameter(4)),
        &xr.mul(&xr.parameter(2), &xr.parameter(2)),
    );
    assert!(
        span_contains(&quads, &coeff_vector(&target, &quad_basis)),
        "x1*x4 - x2^2 lies in the degree two space"
    );

    // the candidate boundary line: alpha*x1*x2 + beta*x2^2 next to x1^2,
    // x1*x2^2, x2^3
    let fam_ring = align_core::mpoly::MPolyRing::new(Rationals, 2);
    let alpha = fam_ring.parameter(0);
    let beta = fam_ring.parameter(1);
    let cutoff = frame.cutoff();
    let family = vec![
        TPoly::from_terms(
            &fam_ring,
            2,
            cutoff,
            [(mono(&[1, 1]), alpha), (mono(&[0, 2]), beta)],
        ),
        TPoly::monomial(&fam_ring, mono(&[2, 0]), cutoff),
        TPoly::monomial(&fam_ring, mono(&[1, 2]), cutoff),
        TPoly::monomial(&fam_ring, mono(&[0, 3]), cutoff),
    ];
    let equations: Vec<MPoly<BigRational>> = spaces.into_iter().flatten().collect();
    let probe = boundary_probe(&map, &fam_ring, &family, &equations).unwrap();
    assert!(probe.equations_vanish, "family satisfies every equation");
    assert!(probe.separated, "no parameter point reaches the family");
    let point = wedge.relabel_tuple(|c| fam_ring.neg(c), &probe.point);
    let expected: Vec<MPoly<BigRational>> = vec![
        fam_ring.neg(&fam_ring.parameter(0)),
        fam_ring.neg(&fam_ring.parameter(1)),
        fam_ring.zero(),
        fam_ring.zero(),
        fam_ring.zero(),
        fam_ring.zero(),
    ];
    assert_eq!(point, expected, "boundary line matches up to the global sign");
    // beta = 0 pins the cone point: a single nonzero coordinate
    let at_cone: Vec<BigRational> =
        point.iter().map(|c| fam_ring.eval(c, &[q(1), q(0)])).collect();
    assert!(!Rationals.is_zero(&at_cone[0]));
    assert!(at_cone[1..].iter().all(|c| Rationals.is_zero(c)));

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "ran in {elapsed:.2?}");
    println!("criterion 1 pass: worked example reproduced exactly, global sign -1 ({elapsed:.2?})");
}

fn ring_x() -> align_core::mpoly::MPolyRing<Rationals> {
    align_core::mpoly::MPolyRing::new(Rationals, 6)
}

#[test]
fn criterion_2_dimension_formula() {
    let start = Instant::now();
    let mut verified = 0;
    let mut pinned = Vec::new();
    for entry in catalog() {
        let ideals = entry.ideals().unwrap();
        let ms = MeasuringSequence::compute(&ideals, 0).unwrap();
        let total: u64 =
            ms.measures().iter().map(|a| a.colength().unwrap()).sum();
        let cutoff = default_tangent_cutoff(&ideals).unwrap();
        let tangent = tangent_orbit_dimension(&ideals, cutoff).unwrap();
        assert_eq!(total, tangent, "{}: colength sum vs derivation rank", entry.name);
        if let Some(expected) = entry.expected_dimension {
            assert_eq!(total, expected, "{}: pinned dimension", entry.name);
            pinned.push((entry.name, expected));
        }
        verified += 1;
    }
    assert!(verified >= 12, "catalog has {verified} sequences");
    for (name, dim) in [("curvi.2", 3), ("fat.22", 4), ("pair.nested", 5)] {
        assert!(pinned.contains(&(name, dim)), "{name} pinned to {dim}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "ran in {elapsed:.2?}");
    println!("criterion 2 pass: dimension formula exact on {verified} sequences ({elapsed:.2?})");
}

#[test]
fn criterion_3_small_field_enumeration() {
    let start = Instant::now();
    let mut cases = 0;
    for p in [2u32, 3] {
        for entry in catalog() {
            let ideals = entry.ideals().unwrap();
            if ideals[0].nvars() != 2 {
                continue;
            }
            let mut cutoff = 2;
            for ideal in &ideals {
                cutoff = cutoff.max(ideal.nilpotency_index().unwrap());
            }
            if cutoff > 4 {
                continue;
            }
            let ms = MeasuringSequence::compute(&ideals, p).unwrap();
            let clip = MonomialIdeal::maximal_power(2, cutoff);
            for i in 0..2 {
                let found = enumerate_images(i, &ideals, p, cutoff).unwrap();
                let clipped = ms.measure(i).sum(&clip).unwrap();
                assert_eq!(found, clipped, "{} at p = {p}, variable {i}", entry.name);
                cases += 1;
            }
        }
    }
    assert!(cases >= 30, "only {cases} enumeration cases ran");

    // Frobenius rigidity: squares over F_2 admit no extra images
    let fat = parse_ideal_sequence("[x1^2, x2^2]").unwrap();
    let ms = MeasuringSequence::compute(&fat, 2).unwrap();
    let maximal = parse_ideal("[x1, x2]", 2).unwrap();
    assert_eq!(ms.measures(), vec![maximal.clone(), maximal]);
    let total: u64 = ms.measures().iter().map(|a| a.colength().unwrap()).sum();
    assert_eq!(total, 2);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "ran in {elapsed:.2?}");
    println!("criterion 3 pass: enumeration agrees on {cases} cases, rigidity pinned ({elapsed:.2?})");
}

#[test]
fn criterion_4_etale_degree() {
    let pinned = [("[x1^2, x2^2]", 0, 2u64), ("[x1, x2^2]", 0, 1), ("[x1^2, x2^2]", 2, 1)];
    for (input, p, expected) in pinned {
        let ideals = parse_ideal_sequence(input).unwrap();
        let ms = MeasuringSequence::compute(&ideals, p).unwrap();
        assert_eq!(etale_degree(&ms).unwrap(), expected, "{input} at characteristic {p}");
    }
    println!("criterion 4 pass: etale degrees 2, 1, 1 as pinned");
}

#[test]
fn criterion_5_containment_sweep() {
    let start = Instant::now();
    let mut swept = 0;
    for entry in catalog() {
        let ideals = entry.ideals().unwrap();
        for p in [0u32, 2, 3] {
            let ms = MeasuringSequence::compute(&ideals, p).unwrap();
            assert!(
                ms.containment_violations().is_empty(),
                "{} at characteristic {p}",
                entry.name
            );
        }
        swept += 1;
    }
    for (k, ideals) in random_sequences(0x5eed, 100).iter().enumerate() {
        for p in [0u32, 2] {
            let ms = MeasuringSequence::compute(ideals, p).unwrap();
            assert!(
                ms.containment_violations().is_empty(),
                "random sequence {k} at characteristic {p}"
            );
        }
        swept += 1;
    }
    let elapsed = start.elapsed();
    println!("criterion 5 pass: zero containment violations over {swept} sequences ({elapsed:.2?})");
}

#[test]
fn criterion_6_classifier_sweep() {
    for m in 1u32..=6 {
        let input = format!("[x1, x2^{}]", m + 1);
        let ideals = parse_ideal_sequence(&input).unwrap();
        let verdict = classify(&ideals, 0).unwrap();
        let ok = match m {
            1 => matches!(verdict, UniversalityVerdict::TrivialFiber),
            2 => matches!(verdict, UniversalityVerdict::Dominates { .. }),
            _ => matches!(verdict, UniversalityVerdict::NonUniversal),
        };
        assert!(ok, "m = {m} gave {verdict}");
    }
    let nested = parse_ideal_sequence(NESTED).unwrap();
    assert!(matches!(classify(&nested, 0).unwrap(), UniversalityVerdict::NonUniversal));
    println!("criterion 6 pass: curvilinear sweep and the nested pair classify as pinned");
}

#[test]
fn criterion_7_monomial_coordinates() {
    let start = Instant::now();
    let mut frames = 0;
    let mut monomial_frames = 0;
    for entry in catalog() {
        let ideals = entry.ideals().unwrap();
        let ms = MeasuringSequence::compute(&ideals, 0).unwrap();
        let order = VariableOrder::from_measures(&ms).unwrap();
        let flag = order.default_flag();
        let param = CosetParametrization::from_measures(&ms, &order, &flag).unwrap();
        for ideal in &ideals {
            let frame =
                quotient_frame(&param, ideal, ideal.nilpotency_index().unwrap()).unwrap();
            if frame.dimension() == 0 {
                continue;
            }
            let map = match plucker_map(&param, &frame) {
                Ok(map) => map,
                Err(Error::RankDeficient { .. }) => continue,
                Err(e) => panic!("{}: {e}", entry.name),
            };
            let toric = toric_check(&map, &param);
            assert!(toric.weight_homogeneous, "{}: weight homogeneity", entry.name);
            if toric.independent {
                assert!(toric.all_monomial, "{}: independent weights", entry.name);
                monomial_frames += 1;
            }
            frames += 1;
        }
    }
    assert!(frames >= 10, "only {frames} frames had geometry");
    assert!(monomial_frames >= 3, "only {monomial_frames} frames had independent weights");
    let elapsed = start.elapsed();
    println!(
        "criterion 7 pass: {frames} frames weight homogeneous, {monomial_frames} monomial ({elapsed:.2?})"
    );
}

#[test]
fn criterion_8_structural_suites() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for entry in catalog() {
        let ideals = entry.ideals().unwrap();
        for case in run_sequence_checks(entry.name, &ideals, 0, 50, 0x5eed) {
            if !case.passed {
                failures.push(format!("{}: {}", case.name, case.detail));
            }
            cases += 1;
        }
    }
    // one four-variable preorder so the completion counter sees a fan
    let wide = parse_ideal_sequence("[x1, x2^2, x3^2, x4^2]").unwrap();
    for case in run_sequence_checks("wide", &wide, 0, 50, 0x5eed) {
        if !case.passed {
            failures.push(format!("{}: {}", case.name, case.detail));
        }
        cases += 1;
    }
    assert!(failures.is_empty(), "violations:\n{}", failures.join("\n"));
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "ran in {elapsed:.2?}");
    println!("criterion 8 pass: {cases} structural cases, zero violations ({elapsed:.2?})");
}
