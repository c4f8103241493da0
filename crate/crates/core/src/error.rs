//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by the exact computations in this crate.
///
/// Every variant reports a definite structural problem with the input or
/// with a requested truncation order; nothing here is a numerical tolerance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Ambient variable counts of two inputs disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// The ideal does not contain a power of every variable.
    InfiniteColength,
    /// Permutation enumeration is capped at this many variables.
    AmbientTooLarge(usize),
    /// An exhaustive search would exceed the configured budget.
    SearchSpaceTooLarge(u64),
    /// The requested truncation order cannot support the computation.
    CutoffTooSmall { required: u32, found: u32 },
    /// The linear part of a substitution is not invertible.
    SingularLinearPart,
    /// The variable relation induced by a measuring sequence failed
    /// transitivity, so the sequence is not one this crate could produce.
    NonTransitiveRelation { i: usize, j: usize, k: usize },
    /// The supplied flag is not a completion of the computed preorder.
    IncompatibleFlag(String),
    /// A fiber matrix dropped rank at generic parameter values.
    RankDeficient { expected: usize, found: usize },
    /// Interpolation could not be confirmed symbolically from the samples.
    InsufficientSamples { samples: usize },
    /// A single coordinate class fit none of the recognized shapes.
    UnmatchedCoordinateShape(String),
    /// Exponent types over different characteristics are incomparable.
    CharacteristicMismatch { left: u32, right: u32 },
    /// A constant was supplied where a positive-degree term is required.
    ConstantMonomial,
    /// The zero ideal admits none of the finite-colength operations.
    ZeroIdeal,
    /// A sequence of ideals contained no proper ideal to measure.
    EmptySequence,
    /// Input text did not match the ideal or polynomial grammar.
    Parse(ParseError),
}

/// Position-tagged failure from the text grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input at which parsing failed.
    pub pos: usize,
    /// Human-readable description of what was expected.
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} variables, found {found}")
            }
            Error::InfiniteColength => write!(f, "ideal has infinite colength"),
            Error::AmbientTooLarge(n) => {
                write!(f, "permutation search not supported for {n} variables")
            }
            Error::SearchSpaceTooLarge(n) => {
                write!(f, "search space of {n} substitutions exceeds the budget")
            }
            Error::CutoffTooSmall { required, found } => {
                write!(f, "cutoff {found} too small, need at least {required}")
            }
            Error::SingularLinearPart => write!(f, "linear part is not invertible"),
            Error::NonTransitiveRelation { i, j, k } => write!(
                f,
                "variable relation is not transitive on x{} <= x{} <= x{}",
                i + 1,
                j + 1,
                k + 1
            ),
            Error::IncompatibleFlag(why) => write!(f, "incompatible flag: {why}"),
            Error::RankDeficient { expected, found } => {
                write!(f, "expected generic rank {expected}, found {found}")
            }
            Error::InsufficientSamples { samples } => {
                write!(f, "{samples} samples were not enough to confirm the equations")
            }
            Error::UnmatchedCoordinateShape(why) => {
                write!(f, "unmatched coordinate shape: {why}")
            }
            Error::CharacteristicMismatch { left, right } => {
                write!(f, "cannot compare exponent types over characteristics {left} and {right}")
            }
            Error::ConstantMonomial => write!(f, "constant monomial not allowed here"),
            Error::ZeroIdeal => write!(f, "operation is undefined for the zero ideal"),
            Error::EmptySequence => write!(f, "no proper ideal to measure"),
            Error::Parse(e) => e.fmt(f),
        }
    }
}

#[cfg(feature = "std")]
extern crate std;

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
