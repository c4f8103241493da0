//! Universality verdicts from the coordinate equivalence structure.
//!
//! With two or more inequivalent free coordinates, no finite-type variety
//! dominates every fiber compactification, so the answer is `NonUniversal`.
//! An empty coordinate set means the fiber is a point. A single coordinate
//! class is matched against four shapes; small class sizes then certify
//! domination, while the remaining shapes are left `Unresolved` rather
//! than guessed.

use alloc::string::String;
use core::fmt;

use crate::error::{Error, Result};
use crate::flags::{coordinate_classes, coordinate_set, VariableOrder};
use crate::ideal::MonomialIdeal;
use crate::measuring::MeasuringSequence;
use crate::monomial::Monomial;

/// Outcome of the universality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalityVerdict {
    /// The fiber is a single point; domination is trivial.
    TrivialFiber,
    /// At least two inequivalent coordinates: nothing finite dominates.
    NonUniversal,
    /// The single coordinate class has a recognized shape and its sizes
    /// certify domination. `m` is the size of the variable class of `i`,
    /// `l` the relevant monomial-side class size.
    Dominates { case: u8, m: usize, l: usize },
    /// Recognized shape, but the size conditions fail; left open.
    Unresolved { case: u8, m: usize, l: usize },
}

impl fmt::Display for UniversalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniversalityVerdict::TrivialFiber => write!(f, "trivial fiber"),
            UniversalityVerdict::NonUniversal => write!(f, "non-universal"),
            UniversalityVerdict::Dominates { case, m, l } => {
                write!(f, "dominates (case {case}, m={m}, l={l})")
            }
            UniversalityVerdict::Unresolved { case, m, l } => {
                write!(f, "unresolved (case {case}, m={m}, l={l})")
            }
        }
    }
}

/// Full pipeline: measure, order, take the default flag, classify.
pub fn classify(ideals: &[MonomialIdeal], characteristic: u32) -> Result<UniversalityVerdict> {
    let ms = MeasuringSequence::compute(ideals, characteristic)?;
    let order = VariableOrder::from_measures(&ms)?;
    let flag = order.default_flag();
    let coords = coordinate_set(&ms, &order, &flag)?;
    classify_structure(&coords, &order, characteristic)
}

/// Verdict from an explicit coordinate set and variable order. Exposed so
/// shapes beyond the small-ideal catalog can be exercised directly.
pub fn classify_structure(
    coords: &[(usize, Monomial)],
    order: &VariableOrder,
    characteristic: u32,
) -> Result<UniversalityVerdict> {
    if coords.is_empty() {
        return Ok(UniversalityVerdict::TrivialFiber);
    }
    let classes = coordinate_classes(coords, order);
    if classes.len() >= 2 {
        return Ok(UniversalityVerdict::NonUniversal);
    }
    // one class; its members share the variable class of i and the degree
    // profile of v, so a single representative determines the shape
    let (i0, v0) = &coords[0];
    let m = order.classes()[order.class_of(*i0)].len();
    let class_size = |j: usize| order.classes()[order.class_of(j)].len();
    match v0.degree() {
        1 => {
            let j = support(v0)[0];
            let l = class_size(j);
            Ok(sized(1, m, l, m == 1 || l == 1))
        }
        2 => {
            let sup = support(v0);
            let (j, k) = if sup.len() == 1 { (sup[0], sup[0]) } else { (sup[0], sup[1]) };
            if order.equivalent(j, k) {
                let l = class_size(j);
                let has_square = coords.iter().any(|(_, v)| (0..v.nvars()).any(|t| v.exp(t) == 2));
                if characteristic == 2 && !has_square {
                    // strictly mixed quadratic class
                    Ok(sized(3, m, l, l == 2))
                } else {
                    Ok(sized(2, m, l, l == 1))
                }
            } else {
                if characteristic != 2 {
                    return Err(Error::UnmatchedCoordinateShape(String::from(
                        "mixed quadratic across inequivalent variables outside characteristic 2",
                    )));
                }
                let (lj, lk) = (class_size(j), class_size(k));
                if lj != 1 && lk != 1 {
                    return Err(Error::UnmatchedCoordinateShape(String::from(
                        "mixed quadratic with no singleton variable class",
                    )));
                }
                // the singleton factor plays the distinguished role; the
                // size condition sees the other factor's class
                let l = if lj == 1 && lk == 1 { 1 } else { lj.max(lk) };
                Ok(sized(4, m, l, m == 1 || l == 1))
            }
        }
        d => Err(Error::UnmatchedCoordinateShape(alloc::format!(
            "single class of degree {d} monomials"
        ))),
    }
}

fn sized(case: u8, m: usize, l: usize, dominates: bool) -> UniversalityVerdict {
    if dominates {
        UniversalityVerdict::Dominates { case, m, l }
    } else {
        UniversalityVerdict::Unresolved { case, m, l }
    }
}

fn support(v: &Monomial) -> alloc::vec::Vec<usize> {
    (0..v.nvars()).filter(|&t| v.exp(t) > 0).collect()
}
