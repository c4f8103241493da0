//! Runners behind the subcommands: each one takes a parsed job, drives the
//! core pipeline, and produces a serializable report.

use align_core::classify::{classify, UniversalityVerdict};
use align_core::error::{Error, Result};
use align_core::fiber::{
    boundary_probe, interpolate_image_equations, plucker_map, quotient_frame,
    CosetParametrization, PluckerMap, QuotientFrame,
};
use align_core::flags::{coordinate_set, dimension_report, etale_degree, Flag, VariableOrder};
use align_core::ideal::MonomialIdeal;
use align_core::measuring::MeasuringSequence;
use align_core::monomial::{Monomial, WeightVector};
use align_core::mpoly::{display_with, MPoly, MPolyRing};
use align_core::oracle::{default_tangent_cutoff, enumerate_images, tangent_orbit_dimension};
use align_core::parse::parse_parametrized_poly;
use align_core::ring::{Rationals, Ring};
use align_core::tpoly::TPoly;
use num_rational::BigRational;

use crate::report::{
    BoundaryFixture, BoundaryProbeReport, ClassifyReport, CoordinateEntry, CoordsReport,
    DimsReport, EquationSpace, EtaleReport, FiberReport, FlagsReport, FrameReport, ImageEntry,
    MeasureReport, OracleReport, ParameterEntry, ToricSummary,
};

pub struct JobSpec {
    pub ideals: Vec<MonomialIdeal>,
    pub characteristic: u32,
    pub weights: Option<WeightVector>,
    pub flag: Option<String>,
    pub cutoff: Option<u32>,
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
}

pub fn variable_name(i: usize) -> String {
    format!("x{}", i + 1)
}

fn parameter_name(k: usize) -> String {
    format!("a{}", k + 1)
}

fn class_names(order: &VariableOrder, class: usize) -> Vec<String> {
    order.classes()[class].iter().map(|&v| variable_name(v)).collect()
}

/// All strict relations between classes, display-ready.
fn class_relations(order: &VariableOrder) -> Vec<String> {
    let count = order.classes().len();
    let mut out = Vec::new();
    for a in 0..count {
        for b in 0..count {
            if a != b && order.class_leq(a, b) && !order.class_leq(b, a) {
                out.push(format!(
                    "{{{}}} < {{{}}}",
                    class_names(order, a).join(", "),
                    class_names(order, b).join(", ")
                ));
            }
        }
    }
    out
}

fn pipeline(spec: &JobSpec) -> Result<(MeasuringSequence, VariableOrder)> {
    let ms = MeasuringSequence::compute(&spec.ideals, spec.characteristic)?;
    let order = VariableOrder::from_measures(&ms)?;
    Ok((ms, order))
}

/// Resolve the requested flag, or fall back to the default completion.
/// Returns the flag and whether other completions were silently skipped.
pub fn resolve_flag(spec: &JobSpec, order: &VariableOrder) -> Result<(Flag, bool)> {
    match &spec.flag {
        Some(text) => Ok((parse_flag(text, order)?, false)),
        None => {
            let ambiguous = order.completions().len() > 1;
            Ok((order.default_flag(), ambiguous))
        }
    }
}

/// Parse a flag written as class steps separated by `<`, variables inside
/// a step separated by commas: `x2 < x1, x3`.
fn parse_flag(text: &str, order: &VariableOrder) -> Result<Flag> {
    let mut class_order = Vec::new();
    for step in text.split('<') {
        let mut vars = Vec::new();
        for name in step.split(',') {
            let name = name.trim();
            let index = name
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&k| k >= 1 && k <= order.nvars())
                .ok_or_else(|| {
                    Error::IncompatibleFlag(format!("unknown variable {name:?} in flag"))
                })?;
            vars.push(index - 1);
        }
        vars.sort_unstable();
        let class = (0..order.classes().len())
            .find(|&a| {
                let mut members = order.classes()[a].clone();
                members.sort_unstable();
                members == vars
            })
            .ok_or_else(|| {
                Error::IncompatibleFlag(format!("step {step:?} is not a variable class"))
            })?;
        class_order.push(class);
    }
    order.flag(&class_order)
}

pub fn run_measure(spec: &JobSpec) -> Result<MeasureReport> {
    let (ms, order) = pipeline(spec)?;
    Ok(MeasureReport {
        characteristic: spec.characteristic,
        cutoff: ms.cutoff(),
        ideals: spec.ideals.iter().map(|i| i.to_string()).collect(),
        measures: ms.measures().iter().map(|a| a.to_string()).collect(),
        classes: order
            .default_completion()
            .into_iter()
            .map(|a| class_names(&order, a))
            .collect(),
        relations: class_relations(&order),
    })
}

pub fn run_flags(spec: &JobSpec) -> Result<FlagsReport> {
    let (_, order) = pipeline(spec)?;
    Ok(FlagsReport {
        characteristic: spec.characteristic,
        classes: (0..order.classes().len()).map(|a| class_names(&order, a)).collect(),
        completions: order.completions(),
        default_completion: order.default_completion(),
    })
}

pub fn run_coords(spec: &JobSpec) -> Result<(CoordsReport, bool)> {
    let (ms, order) = pipeline(spec)?;
    let (flag, ambiguous) = resolve_flag(spec, &order)?;
    if let Some(w) = &spec.weights {
        if w.nvars() != ms.nvars() {
            return Err(Error::DimensionMismatch { expected: ms.nvars(), found: w.nvars() });
        }
    }
    let coords = coordinate_set(&ms, &order, &flag)?;
    let entries = coords
        .iter()
        .map(|(i, v)| CoordinateEntry {
            variable: variable_name(*i),
            monomial: v.to_string(),
            weighted_degree: spec.weights.as_ref().map(|w| v.weighted_degree(w)),
        })
        .collect();
    Ok((
        CoordsReport {
            characteristic: spec.characteristic,
            flag: flag.order().to_vec(),
            steps: flag.steps().iter().map(|s| s.iter().map(|&v| variable_name(v)).collect()).collect(),
            coordinates: entries,
        },
        ambiguous,
    ))
}

pub fn run_dims(spec: &JobSpec) -> Result<(DimsReport, bool)> {
    let (ms, order) = pipeline(spec)?;
    let (flag, ambiguous) = resolve_flag(spec, &order)?;
    let report = dimension_report(&ms, &order, &flag)?;
    Ok((
        DimsReport {
            characteristic: spec.characteristic,
            flag: flag.order().to_vec(),
            base: report.base,
            flag_dimension: report.flag,
            coordinate_count: report.coordinates,
            colength_sum: report.colength_sum,
            total: report.total(),
            consistent: report.consistent(),
        },
        ambiguous,
    ))
}

pub fn run_etale(spec: &JobSpec) -> Result<EtaleReport> {
    let ms = MeasuringSequence::compute(&spec.ideals, spec.characteristic)?;
    Ok(EtaleReport { characteristic: spec.characteristic, degree: etale_degree(&ms)? })
}

pub fn run_classify(spec: &JobSpec) -> Result<ClassifyReport> {
    let verdict = classify(&spec.ideals, spec.characteristic)?;
    let (kind, case, m, l) = match verdict {
        UniversalityVerdict::TrivialFiber => ("trivial-fiber", None, None, None),
        UniversalityVerdict::NonUniversal => ("non-universal", None, None, None),
        UniversalityVerdict::Dominates { case, m, l } => {
            ("dominates", Some(case), Some(m), Some(l))
        }
        UniversalityVerdict::Unresolved { case, m, l } => {
            ("unresolved", Some(case), Some(m), Some(l))
        }
    };
    Ok(ClassifyReport {
        characteristic: spec.characteristic,
        kind: kind.to_string(),
        case,
        class_size: m,
        monomial_class_size: l,
    })
}

/// Wedge coordinates are reported with the quotient basis listed highest
/// first. Relative to the ascending internal order this relabels position
/// `t` to `sigma(t)` and multiplies every minor by a fixed global sign.
pub struct WedgeOrder {
    /// Involution sending ascending wedge positions to descending ones.
    pub relabel: Vec<usize>,
    /// Sign picked up by reversing the columns of each minor.
    pub sign: i64,
}

pub fn descending_wedge_order(map: &PluckerMap) -> WedgeOrder {
    let b = map.frame().dimension();
    let subsets = map.subsets();
    let relabel: Vec<usize> = subsets
        .iter()
        .map(|s| {
            let mut reversed: Vec<usize> = s.iter().map(|&c| b - 1 - c).collect();
            reversed.sort_unstable();
            subsets.iter().position(|t| *t == reversed).expect("closed under reversal")
        })
        .collect();
    let r = map.rank();
    let sign = if (r * (r - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    WedgeOrder { relabel, sign }
}

impl WedgeOrder {
    /// Rewrite a polynomial in ascending wedge variables to descending
    /// ones. Homogeneous inputs keep their zero set; the result is sign
    /// normalized on its highest term.
    pub fn relabel_equation(
        &self,
        ring: &MPolyRing<Rationals>,
        f: &MPoly<BigRational>,
    ) -> MPoly<BigRational> {
        let mut out = ring.zero();
        for (m, c) in f.terms() {
            let mut exps = vec![0u32; self.relabel.len()];
            for (pos, &e) in m.exps().iter().enumerate() {
                exps[self.relabel[pos]] = e;
            }
            let sign = if self.sign == 1 || m.degree() % 2 == 0 { 1 } else { -1 };
            let coeff = if sign == 1 { c.clone() } else { Rationals.neg(c) };
            out = ring.add(&out, &ring.term(Monomial::new(exps), coeff));
        }
        normalize_sign(ring, out)
    }

    /// Reindex and sign a coordinate tuple computed in ascending order.
    pub fn relabel_tuple<E: Clone>(
        &self,
        negate: impl Fn(&E) -> E,
        tuple: &[E],
    ) -> Vec<E> {
        (0..tuple.len())
            .map(|t| {
                let source = &tuple[self.relabel[t]];
                if self.sign == 1 {
                    source.clone()
                } else {
                    negate(source)
                }
            })
            .collect()
    }
}

fn normalize_sign(ring: &MPolyRing<Rationals>, f: MPoly<BigRational>) -> MPoly<BigRational> {
    let negative =
        f.terms().last().is_some_and(|(_, c)| Rationals.display(c).starts_with('-'));
    if negative {
        ring.neg(&f)
    } else {
        f
    }
}

fn wedge_names(count: usize) -> Vec<String> {
    (0..count).map(|t| format!("x{t}")).collect()
}

struct FiberData {
    param: CosetParametrization,
    frames: Vec<Option<(QuotientFrame, PluckerMap)>>,
}

fn fiber_data(spec: &JobSpec, ms: &MeasuringSequence, order: &VariableOrder, flag: &Flag) -> Result<FiberData> {
    let param = CosetParametrization::from_measures(ms, order, flag)?;
    let mut frames = Vec::new();
    for ideal in &spec.ideals {
        let nilp = ideal.nilpotency_index()?;
        let cutoff = match spec.cutoff {
            Some(c) => {
                if c < nilp {
                    return Err(Error::CutoffTooSmall { required: nilp, found: c });
                }
                c
            }
            None => nilp,
        };
        let frame = quotient_frame(&param, ideal, cutoff)?;
        if frame.dimension() == 0 {
            frames.push(None);
            continue;
        }
        match plucker_map(&param, &frame) {
            Ok(map) => frames.push(Some((frame, map))),
            Err(Error::RankDeficient { .. }) => frames.push(None),
            Err(e) => return Err(e),
        }
    }
    Ok(FiberData { param, frames })
}

/// The fiber machinery is exact over the rationals; callers must pass a
/// characteristic-zero spec.
pub fn run_fiber(
    spec: &JobSpec,
    boundary: Option<&BoundaryFixture>,
) -> Result<(FiberReport, bool)> {
    let (ms, order) = pipeline(spec)?;
    let (flag, ambiguous) = resolve_flag(spec, &order)?;
    if let Some(w) = &spec.weights {
        if w.nvars() != ms.nvars() {
            return Err(Error::DimensionMismatch { expected: ms.nvars(), found: w.nvars() });
        }
    }
    let data = fiber_data(spec, &ms, &order, &flag)?;
    let param = &data.param;

    let parameters: Vec<ParameterEntry> = param
        .coordinates()
        .iter()
        .enumerate()
        .map(|(k, (i, v))| ParameterEntry {
            name: parameter_name(k),
            variable: variable_name(*i),
            monomial: v.to_string(),
        })
        .collect();
    let parameter_names: Vec<String> =
        (0..param.parameter_count()).map(parameter_name).collect();

    let mut frames = Vec::new();
    for (ideal, entry) in spec.ideals.iter().zip(&data.frames) {
        let Some((frame, map)) = entry else {
            frames.push(FrameReport {
                ideal: ideal.to_string(),
                cutoff: spec.cutoff.unwrap_or(ideal.nilpotency_index()?),
                degenerate: true,
                basis: Vec::new(),
                rank: 0,
                subsets: Vec::new(),
                coordinates: Vec::new(),
                equations: Vec::new(),
                toric: None,
                exchange_relations: true,
            });
            continue;
        };
        let wedge = descending_wedge_order(map);
        let mut basis: Vec<String> = frame.basis().iter().map(|m| m.to_string()).collect();
        basis.reverse();
        let reversed: Vec<usize> = (0..frame.dimension()).rev().collect();
        let coordinates: Vec<String> = map
            .reordered_coordinates(&reversed)?
            .iter()
            .map(|c| display_with(map.ring(), c, &parameter_names))
            .collect();

        let x_ring = MPolyRing::new(Rationals, map.subsets().len());
        let names = wedge_names(map.subsets().len());
        let spaces = interpolate_image_equations(map, spec.degree, spec.samples, spec.seed)?;
        let equations: Vec<EquationSpace> = spaces
            .iter()
            .enumerate()
            .map(|(d, eqs)| EquationSpace {
                degree: d as u32 + 1,
                dimension: eqs.len(),
                equations: eqs
                    .iter()
                    .map(|f| display_with(&x_ring, &wedge.relabel_equation(&x_ring, f), &names))
                    .collect(),
            })
            .collect();

        let toric = align_core::fiber::toric_check(map, param);
        let user_weight_homogeneous = spec.weights.as_ref().map(|w| {
            let user: Vec<Vec<i64>> = param
                .coordinates()
                .iter()
                .map(|(i, v)| {
                    vec![w.entries()[*i] as i64 - v.weighted_degree(w) as i64]
                })
                .collect();
            map.coordinates().iter().all(|c| map.ring().term_weights(c, &user).len() <= 1)
        });

        frames.push(FrameReport {
            ideal: ideal.to_string(),
            cutoff: frame.cutoff(),
            degenerate: false,
            basis,
            rank: map.rank(),
            subsets: map.subsets().to_vec(),
            coordinates,
            equations,
            toric: Some(ToricSummary {
                weights: toric.weights,
                independent: toric.independent,
                all_monomial: toric.all_monomial,
                weight_homogeneous: toric.weight_homogeneous,
                user_weight_homogeneous,
            }),
            exchange_relations: map.exchange_relations_hold(),
        });
    }

    let boundary = match boundary {
        Some(fixture) => Some(run_boundary(spec, &data, fixture)?),
        None => None,
    };

    Ok((
        FiberReport {
            characteristic: spec.characteristic,
            degree: spec.degree,
            samples: spec.samples,
            seed: spec.seed,
            parameters,
            frames,
            boundary,
        },
        ambiguous,
    ))
}

fn run_boundary(
    spec: &JobSpec,
    data: &FiberData,
    fixture: &BoundaryFixture,
) -> Result<BoundaryProbeReport> {
    let index = fixture.frame;
    let entry = data
        .frames
        .get(index.wrapping_sub(1))
        .ok_or_else(|| Error::IncompatibleFlag(format!("no frame {index} in the sequence")))?;
    let Some((frame, map)) = entry else {
        return Err(Error::RankDeficient { expected: 1, found: 0 });
    };

    let family_ring = MPolyRing::new(Rationals, fixture.parameters.len());
    let param_names: Vec<&str> = fixture.parameters.iter().map(String::as_str).collect();
    let nvars = data.param.nvars();
    let mut family = Vec::new();
    for text in &fixture.family {
        let mut terms = Vec::new();
        for t in parse_parametrized_poly(text, &param_names)? {
            // parsed monomials carry only the variables they mention
            if t.monomial.nvars() > nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: t.monomial.nvars(),
                });
            }
            let mut exps = t.monomial.exps().to_vec();
            exps.resize(nvars, 0);
            let mut coeff = family_ring.constant(t.coeff);
            for (k, &e) in t.params.iter().enumerate() {
                for _ in 0..e {
                    coeff = family_ring.mul(&coeff, &family_ring.parameter(k));
                }
            }
            terms.push((Monomial::new(exps), coeff));
        }
        family.push(TPoly::from_terms(&family_ring, nvars, frame.cutoff(), terms));
    }

    let canonical: Vec<MPoly<BigRational>> =
        interpolate_image_equations(map, spec.degree, spec.samples, spec.seed)?
            .into_iter()
            .flatten()
            .collect();
    let probe = boundary_probe(map, &family_ring, &family, &canonical)?;
    let wedge = descending_wedge_order(map);
    let point = wedge
        .relabel_tuple(|c: &MPoly<BigRational>| family_ring.neg(c), &probe.point)
        .iter()
        .map(|c| display_with(&family_ring, c, &fixture.parameters))
        .collect();
    let mut chart_indices: Vec<usize> =
        probe.chart_indices.iter().map(|&c| wedge.relabel[c]).collect();
    chart_indices.sort_unstable();
    Ok(BoundaryProbeReport {
        frame: index,
        point,
        equations_vanish: probe.equations_vanish,
        chart_indices,
        separated: probe.separated,
    })
}

pub fn run_oracle(spec: &JobSpec) -> Result<OracleReport> {
    let ms = MeasuringSequence::compute(&spec.ideals, spec.characteristic)?;
    let mut total = 0u64;
    for a in ms.measures() {
        total += a.colength()?;
    }
    if spec.characteristic == 0 {
        let cutoff = match spec.cutoff {
            Some(c) => c,
            None => default_tangent_cutoff(&spec.ideals)?,
        };
        let dim = tangent_orbit_dimension(&spec.ideals, cutoff)?;
        Ok(OracleReport {
            characteristic: 0,
            mode: "derivation".to_string(),
            cutoff,
            orbit_dimension: Some(dim),
            total_dimension: total,
            images: None,
            agreement: dim == total,
        })
    } else {
        let p = spec.characteristic;
        let mut nilp = 0;
        for ideal in &spec.ideals {
            nilp = nilp.max(ideal.nilpotency_index()?);
        }
        let cutoff = spec.cutoff.unwrap_or_else(|| nilp.max(2));
        let nvars = spec.ideals[0].nvars();
        let clip = MonomialIdeal::maximal_power(nvars, cutoff);
        let mut images = Vec::new();
        let mut agreement = true;
        for i in 0..nvars {
            let found = enumerate_images(i, &spec.ideals, p, cutoff)?;
            agreement &= found == ms.measure(i).sum(&clip)?;
            images.push(ImageEntry { variable: variable_name(i), ideal: found.to_string() });
        }
        Ok(OracleReport {
            characteristic: p,
            mode: "enumeration".to_string(),
            cutoff,
            orbit_dimension: None,
            total_dimension: total,
            images: Some(images),
            agreement,
        })
    }
}
