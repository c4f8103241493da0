//! The self-validation suite behind `check`: structural facts the pipeline
//! promises, verified on a concrete ideal sequence. Every case is exact;
//! randomized cases draw from a seeded generator.

use align_core::classify::classify;
use align_core::error::Error;
use align_core::fiber::{
    coset_normal_form, plucker_map, quotient_frame, toric_check, CosetParametrization,
};
use align_core::flags::{dimension_report, etale_degree, VariableOrder};
use align_core::ideal::MonomialIdeal;
use align_core::measuring::{measures_by_colon, MeasuringSequence};
use align_core::monomial::Monomial;
use align_core::oracle::{default_tangent_cutoff, enumerate_images, tangent_orbit_dimension};
use align_core::ring::{PrimeField, Rationals};
use align_core::rng::Rng;
use align_core::tpoly::Substitution;
use num_rational::BigRational;

use crate::report::{CheckCase, CheckFixture};

/// Largest ambient size for the factorial linear-extension counter.
const EXTENSION_COUNT_LIMIT: usize = 6;

/// Fiber cases are skipped above this parameter count to keep minors small.
const FIBER_PARAMETER_LIMIT: usize = 4;

struct Suite<'a> {
    label: &'a str,
    ideals: &'a [MonomialIdeal],
    characteristic: u32,
    trials: usize,
    seed: u64,
    cases: Vec<CheckCase>,
}

impl<'a> Suite<'a> {
    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.cases.push(CheckCase {
            name: format!("{}/{}", self.label, name),
            passed,
            detail,
        });
    }

    fn fail(&mut self, name: &str, detail: String) {
        self.push(name, false, detail);
    }
}

/// Run every applicable check on one sequence. `trials` controls each of
/// the randomized cases; the seed makes them reproducible.
pub fn run_sequence_checks(
    label: &str,
    ideals: &[MonomialIdeal],
    characteristic: u32,
    trials: usize,
    seed: u64,
) -> Vec<CheckCase> {
    let mut suite = Suite { label, ideals, characteristic, trials, seed, cases: Vec::new() };
    let ms = match MeasuringSequence::compute(ideals, characteristic) {
        Ok(ms) => ms,
        Err(e) => {
            suite.fail("measuring", format!("failed to compute: {e}"));
            return suite.cases;
        }
    };
    let order = match VariableOrder::from_measures(&ms) {
        Ok(order) => order,
        Err(e) => {
            suite.fail("preorder", format!("relation not a preorder: {e}"));
            return suite.cases;
        }
    };

    containment(&mut suite, &ms);
    elementary_membership(&mut suite, &ms);
    colon_agreement(&mut suite, &ms);
    dimension_identity(&mut suite, &ms, &order);
    completion_count(&mut suite, &order);
    etale(&mut suite, &ms);
    verdict(&mut suite);
    tangent_agreement(&mut suite, &ms);
    enumeration_agreement(&mut suite, &ms);
    coset_membership(&mut suite, &ms);
    induced_map(&mut suite, &ms, &order);
    coset_uniqueness(&mut suite, &ms, &order);
    fiber_structure(&mut suite, &ms, &order);
    suite.cases
}

/// Sweep a fixture catalog: the full suite per sequence, plus a pinned
/// total dimension wherever the fixture records one.
pub fn run_fixture_checks(
    fixture: &CheckFixture,
    trials: usize,
    seed: u64,
) -> Result<Vec<CheckCase>, Error> {
    let mut cases = Vec::new();
    for seq in &fixture.sequences {
        let ideals = align_core::parse::parse_ideal_sequence(&seq.input)?;
        cases.extend(run_sequence_checks(&seq.name, &ideals, seq.characteristic, trials, seed));
        if let Some(expected) = seq.expected_dimension {
            let total = MeasuringSequence::compute(&ideals, seq.characteristic)?
                .measures()
                .iter()
                .map(MonomialIdeal::colength)
                .sum::<Result<u64, Error>>()?;
            cases.push(CheckCase {
                name: format!("{}/pinned-dimension", seq.name),
                passed: total == expected,
                detail: format!("total {total} vs pinned {expected}"),
            });
        }
    }
    Ok(cases)
}

fn containment(suite: &mut Suite, ms: &MeasuringSequence) {
    let violations = ms.containment_violations();
    suite.push(
        "containment",
        violations.is_empty(),
        if violations.is_empty() {
            "factor ideals of all members contained".to_string()
        } else {
            format!("{} violations, first {:?}", violations.len(), violations[0])
        },
    );
}

fn elementary_membership(suite: &mut Suite, ms: &MeasuringSequence) {
    let ok = ms.passing_set_is_ideal();
    suite.push(
        "elementary-membership",
        ok,
        if ok {
            "members pass and non-members fail, all variables".to_string()
        } else {
            "membership and the elementary test disagree".to_string()
        },
    );
}

fn colon_agreement(suite: &mut Suite, ms: &MeasuringSequence) {
    if suite.characteristic != 0 {
        return;
    }
    match measures_by_colon(suite.ideals) {
        Ok(by_colon) => {
            let ok = by_colon == ms.measures();
            suite.push(
                "colon-agreement",
                ok,
                if ok {
                    "colon criterion reproduces the measures".to_string()
                } else {
                    "colon criterion disagrees with the elementary test".to_string()
                },
            );
        }
        Err(e) => suite.fail("colon-agreement", format!("{e}")),
    }
}

fn dimension_identity(suite: &mut Suite, ms: &MeasuringSequence, order: &VariableOrder) {
    let mut counts = Vec::new();
    for completion in order.completions() {
        let flag = match order.flag(&completion) {
            Ok(flag) => flag,
            Err(e) => return suite.fail("dimension-identity", format!("{e}")),
        };
        match dimension_report(ms, order, &flag) {
            Ok(report) if report.consistent() => counts.push(report.coordinates),
            Ok(report) => {
                return suite.fail(
                    "dimension-identity",
                    format!("{} + {} + {} != {}", report.base, report.flag, report.coordinates, report.colength_sum),
                )
            }
            Err(e) => return suite.fail("dimension-identity", format!("{e}")),
        }
    }
    let invariant = counts.windows(2).all(|w| w[0] == w[1]);
    suite.push(
        "dimension-identity",
        invariant,
        if invariant {
            format!("holds on all {} completions", counts.len())
        } else {
            "coordinate count depends on the completion".to_string()
        },
    );
}

fn completion_count(suite: &mut Suite, order: &VariableOrder) {
    let n = order.nvars();
    if n > EXTENSION_COUNT_LIMIT {
        suite.push("completion-count", true, format!("skipped, {n} variables"));
        return;
    }
    let classes = order.classes().len();
    let computed = order.completions().len();
    // independent counter: class orderings realized by brute force
    let mut expected = 0usize;
    for perm in permutations(classes) {
        let ok = (0..classes).all(|pos| {
            perm[pos + 1..].iter().all(|&b| {
                let a = perm[pos];
                !(order.class_leq(b, a) && !order.class_leq(a, b))
            })
        });
        if ok {
            expected += 1;
        }
    }
    suite.push(
        "completion-count",
        computed == expected,
        format!("{computed} completions vs {expected} brute-force linear extensions"),
    );
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..=rest.len() {
            let mut next = rest.clone();
            next.insert(slot, n - 1);
            out.push(next);
        }
    }
    out
}

fn etale(suite: &mut Suite, ms: &MeasuringSequence) {
    match etale_degree(ms) {
        Ok(degree) => {
            let mut bound = 1u64;
            for k in 1..=ms.nvars() as u64 {
                bound *= k;
            }
            let ok = degree >= 1 && bound.is_multiple_of(degree);
            suite.push(
                "etale-degree",
                ok,
                format!("degree {degree}, divides {}!", ms.nvars()),
            );
        }
        Err(e) => suite.fail("etale-degree", format!("{e}")),
    }
}

fn verdict(suite: &mut Suite) {
    if suite.ideals.len() != 1 {
        return;
    }
    match classify(suite.ideals, suite.characteristic) {
        Ok(v) => suite.push("classify", true, format!("{v}")),
        Err(e) => suite.fail("classify", format!("{e}")),
    }
}

fn tangent_agreement(suite: &mut Suite, ms: &MeasuringSequence) {
    if suite.characteristic != 0 {
        return;
    }
    let total = match ms.measures().iter().map(MonomialIdeal::colength).sum::<Result<u64, Error>>()
    {
        Ok(total) => total,
        Err(e) => return suite.fail("tangent-dimension", format!("{e}")),
    };
    let cutoff = match default_tangent_cutoff(suite.ideals) {
        Ok(c) => c,
        Err(e) => return suite.fail("tangent-dimension", format!("{e}")),
    };
    match tangent_orbit_dimension(suite.ideals, cutoff) {
        Ok(dim) => suite.push(
            "tangent-dimension",
            dim == total,
            format!("derivation rank {dim} vs colength sum {total}"),
        ),
        Err(e) => suite.fail("tangent-dimension", format!("{e}")),
    }
}

fn enumeration_agreement(suite: &mut Suite, ms: &MeasuringSequence) {
    let p = suite.characteristic;
    if !(p == 2 || p == 3) {
        return;
    }
    let nvars = ms.nvars();
    if nvars != 2 {
        suite.push("enumeration", true, format!("skipped, {nvars} variables"));
        return;
    }
    let cutoff = ms.cutoff().max(2);
    if cutoff > 4 {
        suite.push("enumeration", true, format!("skipped, cutoff {cutoff} out of range"));
        return;
    }
    let clip = MonomialIdeal::maximal_power(nvars, cutoff);
    for i in 0..nvars {
        let found = match enumerate_images(i, suite.ideals, p, cutoff) {
            Ok(found) => found,
            Err(Error::SearchSpaceTooLarge(budget)) => {
                suite.push("enumeration", true, format!("skipped, budget {budget}"));
                return;
            }
            Err(e) => return suite.fail("enumeration", format!("{e}")),
        };
        let clipped = match ms.measure(i).sum(&clip) {
            Ok(c) => c,
            Err(e) => return suite.fail("enumeration", format!("{e}")),
        };
        if found != clipped {
            return suite.fail(
                "enumeration",
                format!("variable {} enumerates {found}, measuring gives {clipped}", i + 1),
            );
        }
    }
    suite.push("enumeration", true, format!("all images match at cutoff {cutoff}"));
}

fn coset_membership(suite: &mut Suite, ms: &MeasuringSequence) {
    let trials = suite.trials;
    let mut rng = Rng::new(suite.seed ^ 0x0063_6f73_6574);
    let ok = if suite.characteristic == 0 {
        ms.coset_preserves_measures(&Rationals, &mut rng, trials, |r| r.rational(6, 4))
    } else {
        let field = PrimeField::new(suite.characteristic);
        ms.coset_preserves_measures(&field, &mut rng, trials, move |r| {
            r.below(u64::from(field.modulus()))
        })
    };
    suite.push(
        "coset-membership",
        ok,
        if ok {
            format!("{trials} random measure-shaped substitutions preserve all measures")
        } else {
            "a measure-shaped substitution moved a measuring ideal".to_string()
        },
    );
}

/// Random coset-normal substitution over the rationals: the identity plus
/// sampled multiples of the coordinate monomials.
fn sample_coset(
    param: &CosetParametrization,
    rng: &mut Rng,
    cutoff: u32,
) -> Result<Substitution<BigRational>, Error> {
    let point: Vec<BigRational> =
        (0..param.parameter_count()).map(|_| rng.rational(6, 4)).collect();
    param.specialize(&point, cutoff)
}

fn induced_map(suite: &mut Suite, ms: &MeasuringSequence, order: &VariableOrder) {
    if suite.characteristic != 0 {
        return;
    }
    let flag = order.default_flag();
    let param = match CosetParametrization::from_measures(ms, order, &flag) {
        Ok(param) => param,
        Err(e) => return suite.fail("induced-map", format!("{e}")),
    };
    // every ideal must show a member inside the window
    let headroom = suite
        .ideals
        .iter()
        .filter_map(|i| i.gens().iter().map(Monomial::degree).min())
        .map(|d| d + 1)
        .max()
        .unwrap_or(2);
    let cutoff = ms.cutoff().max(headroom);
    let mut rng = Rng::new(suite.seed ^ 0x696e_6475_6365);
    for trial in 0..suite.trials {
        let g = match sample_coset(&param, &mut rng, cutoff) {
            Ok(g) => g,
            Err(e) => return suite.fail("induced-map", format!("{e}")),
        };
        let j = trial % suite.ideals.len();
        match ms.induced_image_matches(&Rationals, &g, j, cutoff) {
            Ok(true) => {}
            Ok(false) => {
                return suite.fail(
                    "induced-map",
                    format!("image span of ideal {} not assembled from measures", j + 1),
                )
            }
            Err(e) => return suite.fail("induced-map", format!("{e}")),
        }
    }
    suite.push(
        "induced-map",
        true,
        format!("{} random coset substitutions factor through the measures", suite.trials),
    );
}

fn coset_uniqueness(suite: &mut Suite, ms: &MeasuringSequence, order: &VariableOrder) {
    if suite.characteristic != 0 {
        return;
    }
    let flag = order.default_flag();
    let param = match CosetParametrization::from_measures(ms, order, &flag) {
        Ok(param) => param,
        Err(e) => return suite.fail("coset-uniqueness", format!("{e}")),
    };
    let nvars = ms.nvars();
    let cutoff = ms.cutoff().max(2);
    let mut rng = Rng::new(suite.seed ^ 0x756e_6971_7565);
    for _ in 0..suite.trials {
        let g = match sample_coset(&param, &mut rng, cutoff) {
            Ok(g) => g,
            Err(e) => return suite.fail("coset-uniqueness", format!("{e}")),
        };
        if !coset_normal_form(&param, &g, cutoff) {
            return suite.fail(
                "coset-uniqueness",
                "specialized parametrization not in normal form".to_string(),
            );
        }
        // one stabilizer-shaped move: a measure member of degree >= 2
        let i = rng.below(nvars as u64) as usize;
        let pool: Vec<Monomial> = ms
            .measure(i)
            .members_below(cutoff + 1)
            .into_iter()
            .filter(|m| m.degree() >= 2)
            .collect();
        if pool.is_empty() {
            continue;
        }
        let tail = rng.choose(&pool).clone();
        let h = match Substitution::elementary(
            &Rationals,
            nvars,
            cutoff,
            i,
            &tail,
            rng.nonzero_rational(6, 4),
        ) {
            Ok(h) => h,
            Err(e) => return suite.fail("coset-uniqueness", format!("{e}")),
        };
        let composed = match g.compose(&Rationals, &h) {
            Ok(c) => c,
            Err(e) => return suite.fail("coset-uniqueness", format!("{e}")),
        };
        if coset_normal_form(&param, &composed, cutoff) && composed != g {
            return suite.fail(
                "coset-uniqueness",
                "two distinct normal forms in one coset".to_string(),
            );
        }
    }
    suite.push(
        "coset-uniqueness",
        true,
        format!("{} stabilizer moves all left normal form", suite.trials),
    );
}

fn fiber_structure(suite: &mut Suite, ms: &MeasuringSequence, order: &VariableOrder) {
    if suite.characteristic != 0 {
        return;
    }
    let flag = order.default_flag();
    let param = match CosetParametrization::from_measures(ms, order, &flag) {
        Ok(param) => param,
        Err(e) => return suite.fail("fiber", format!("{e}")),
    };
    if param.parameter_count() > FIBER_PARAMETER_LIMIT {
        suite.push(
            "fiber",
            true,
            format!("skipped, {} parameters", param.parameter_count()),
        );
        return;
    }
    let mut nondegenerate = 0;
    for (j, ideal) in suite.ideals.iter().enumerate() {
        let nilp = match ideal.nilpotency_index() {
            Ok(n) => n,
            Err(e) => return suite.fail("fiber", format!("{e}")),
        };
        let frame = match quotient_frame(&param, ideal, nilp) {
            Ok(frame) => frame,
            Err(e) => return suite.fail("fiber", format!("{e}")),
        };
        if frame.dimension() == 0 {
            continue;
        }
        let map = match plucker_map(&param, &frame) {
            Ok(map) => map,
            Err(Error::RankDeficient { .. }) => continue,
            Err(e) => return suite.fail("fiber", format!("{e}")),
        };
        nondegenerate += 1;
        if !map.exchange_relations_hold() {
            return suite.fail(
                "fiber",
                format!("exchange relations fail over ideal {}", j + 1),
            );
        }
        let toric = toric_check(&map, &param);
        if !toric.weight_homogeneous {
            return suite.fail(
                "fiber",
                format!("coordinates not weight homogeneous over ideal {}", j + 1),
            );
        }
        if toric.independent && !toric.all_monomial {
            return suite.fail(
                "fiber",
                format!("independent weights but non-monomial coordinate over ideal {}", j + 1),
            );
        }
    }
    suite.push(
        "fiber",
        true,
        format!("{nondegenerate} frames checked: exchange relations and gradings hold"),
    );
}
