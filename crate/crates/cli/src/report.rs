//! Report structures for every subcommand. Each report serializes to JSON
//! losslessly and renders to a stable, deterministic text form; exact
//! values travel as strings in the input grammar.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub characteristic: u32,
    pub cutoff: u32,
    pub ideals: Vec<String>,
    pub measures: Vec<String>,
    /// Variable classes of the induced preorder, in default completion
    /// order.
    pub classes: Vec<Vec<String>>,
    /// Strict relations between classes, rendered `{..} < {..}`.
    pub relations: Vec<String>,
}

impl MeasureReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "characteristic {}, cutoff {}", self.characteristic, self.cutoff);
        for (k, ideal) in self.ideals.iter().enumerate() {
            let _ = writeln!(out, "I{} = {}", k + 1, ideal);
        }
        for (k, measure) in self.measures.iter().enumerate() {
            let _ = writeln!(out, "A{} = {}", k + 1, measure);
        }
        let _ = writeln!(out, "classes: {}", render_classes(&self.classes));
        if !self.relations.is_empty() {
            let _ = writeln!(out, "order: {}", self.relations.join(", "));
        }
        out
    }
}

fn render_classes(classes: &[Vec<String>]) -> String {
    classes
        .iter()
        .map(|c| format!("{{{}}}", c.join(", ")))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlagsReport {
    pub characteristic: u32,
    pub classes: Vec<Vec<String>>,
    /// Admissible completions as sequences of class indices.
    pub completions: Vec<Vec<usize>>,
    pub default_completion: Vec<usize>,
}

impl FlagsReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "classes: {}", render_classes(&self.classes));
        let _ = writeln!(out, "completions: {}", self.completions.len());
        for completion in &self.completions {
            let marker =
                if *completion == self.default_completion { " (default)" } else { "" };
            let _ = writeln!(out, "  {}{}", self.render_completion(completion), marker);
        }
        out
    }

    fn render_completion(&self, completion: &[usize]) -> String {
        completion
            .iter()
            .map(|&a| format!("{{{}}}", self.classes[a].join(", ")))
            .collect::<Vec<_>>()
            .join(" < ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoordinateEntry {
    pub variable: String,
    pub monomial: String,
    /// Weighted degree under the user-supplied grading, when one is given.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weighted_degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoordsReport {
    pub characteristic: u32,
    pub flag: Vec<usize>,
    pub steps: Vec<Vec<String>>,
    pub coordinates: Vec<CoordinateEntry>,
}

impl CoordsReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let steps = self
            .steps
            .iter()
            .map(|s| format!("{{{}}}", s.join(", ")))
            .collect::<Vec<_>>()
            .join(" < ");
        let _ = writeln!(out, "flag: {steps}");
        let _ = writeln!(out, "coordinates: {}", self.coordinates.len());
        for c in &self.coordinates {
            match c.weighted_degree {
                Some(w) => {
                    let _ = writeln!(out, "  ({}, {})  weight {}", c.variable, c.monomial, w);
                }
                None => {
                    let _ = writeln!(out, "  ({}, {})", c.variable, c.monomial);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimsReport {
    pub characteristic: u32,
    pub flag: Vec<usize>,
    pub base: usize,
    pub flag_dimension: usize,
    pub coordinate_count: usize,
    pub colength_sum: u64,
    pub total: u64,
    pub consistent: bool,
}

impl DimsReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "total dimension {} = {} (base) + {} (flag) + {} (coordinates)",
            self.total, self.base, self.flag_dimension, self.coordinate_count
        );
        let _ = writeln!(
            out,
            "colength sum {} ({})",
            self.colength_sum,
            if self.consistent { "consistent" } else { "INCONSISTENT" }
        );
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaleReport {
    pub characteristic: u32,
    pub degree: u64,
}

impl EtaleReport {
    pub fn render(&self) -> String {
        format!("etale degree {}\n", self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub characteristic: u32,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub monomial_class_size: Option<usize>,
}

impl ClassifyReport {
    pub fn render(&self) -> String {
        let mut out = self.kind.clone();
        if let (Some(case), Some(m), Some(l)) = (self.case, self.class_size, self.monomial_class_size)
        {
            let _ = write!(out, " (case {case}, m={m}, l={l})");
        }
        out.push('\n');
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterEntry {
    pub name: String,
    pub variable: String,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationSpace {
    pub degree: u32,
    pub dimension: usize,
    pub equations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToricSummary {
    /// One weight vector per fiber parameter.
    pub weights: Vec<Vec<i64>>,
    pub independent: bool,
    pub all_monomial: bool,
    pub weight_homogeneous: bool,
    /// Homogeneity under the user-supplied ambient grading, when given.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub user_weight_homogeneous: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub ideal: String,
    pub cutoff: u32,
    /// No free geometry over this ideal: empty basis or rank zero.
    pub degenerate: bool,
    /// Quotient basis, highest first; wedge coordinates follow this order.
    pub basis: Vec<String>,
    pub rank: usize,
    pub subsets: Vec<Vec<usize>>,
    pub coordinates: Vec<String>,
    pub equations: Vec<EquationSpace>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub toric: Option<ToricSummary>,
    pub exchange_relations: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryProbeReport {
    /// Which frame the probe ran against (1-based ideal index).
    pub frame: usize,
    pub point: Vec<String>,
    pub equations_vanish: bool,
    pub chart_indices: Vec<usize>,
    pub separated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberReport {
    pub characteristic: u32,
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub parameters: Vec<ParameterEntry>,
    pub frames: Vec<FrameReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boundary: Option<BoundaryProbeReport>,
}

impl FiberReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let params = self
            .parameters
            .iter()
            .map(|p| format!("{} on ({}, {})", p.name, p.variable, p.monomial))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "parameters: {}", if params.is_empty() { "none" } else { &params });
        for frame in &self.frames {
            let _ = writeln!(out, "frame over {}:", frame.ideal);
            if frame.degenerate {
                let _ = writeln!(out, "  degenerate (no free geometry)");
                continue;
            }
            let _ = writeln!(out, "  basis (highest first): {}", frame.basis.join(", "));
            let _ = writeln!(out, "  rank {}", frame.rank);
            let _ = writeln!(out, "  plucker: ({})", frame.coordinates.join(", "));
            for space in &frame.equations {
                let _ = writeln!(
                    out,
                    "  degree {} equations (dimension {}): {{{}}}",
                    space.degree,
                    space.dimension,
                    space.equations.join(", ")
                );
            }
            if let Some(toric) = &frame.toric {
                let _ = writeln!(
                    out,
                    "  toric: independent={} all_monomial={} weight_homogeneous={}",
                    toric.independent, toric.all_monomial, toric.weight_homogeneous
                );
                if let Some(user) = toric.user_weight_homogeneous {
                    let _ = writeln!(out, "  user grading homogeneous: {user}");
                }
            }
            let _ = writeln!(out, "  exchange relations: {}", self.render_bool(frame.exchange_relations));
        }
        if let Some(probe) = &self.boundary {
            let _ = writeln!(out, "boundary probe (frame {}):", probe.frame);
            let _ = writeln!(out, "  point: ({})", probe.point.join(", "));
            let _ = writeln!(out, "  equations vanish: {}", self.render_bool(probe.equations_vanish));
            let _ = writeln!(
                out,
                "  chart coordinates {:?} vanish on family: {}",
                probe.chart_indices,
                self.render_bool(probe.separated)
            );
        }
        out
    }

    fn render_bool(&self, b: bool) -> &'static str {
        if b {
            "yes"
        } else {
            "no"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub variable: String,
    pub ideal: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub characteristic: u32,
    pub mode: String,
    pub cutoff: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit_dimension: Option<u64>,
    pub total_dimension: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub images: Option<Vec<ImageEntry>>,
    pub agreement: bool,
}

impl OracleReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode: {} (cutoff {})", self.mode, self.cutoff);
        if let Some(dim) = self.orbit_dimension {
            let _ = writeln!(out, "orbit dimension {dim}");
        }
        let _ = writeln!(out, "total dimension {}", self.total_dimension);
        if let Some(images) = &self.images {
            for entry in images {
                let _ = writeln!(out, "images of {}: {}", entry.variable, entry.ideal);
            }
        }
        let _ = writeln!(out, "agreement: {}", if self.agreement { "yes" } else { "NO" });
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckCase {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub cases: Vec<CheckCase>,
    pub passed: bool,
}

impl CheckReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if case.passed { "pass" } else { "FAIL" },
                case.name,
                case.detail
            );
        }
        let _ = writeln!(out, "{}", if self.passed { "all checks passed" } else { "CHECKS FAILED" });
        out
    }
}

/// Catalog fixture consumed by `check --fixture`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckFixture {
    pub sequences: Vec<FixtureSequence>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureSequence {
    pub name: String,
    pub input: String,
    #[serde(default)]
    pub characteristic: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected_dimension: Option<u64>,
}

/// Boundary family fixture consumed by `fiber --fixture`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryFixture {
    /// 1-based index of the ideal whose frame the family probes.
    #[serde(default = "default_frame")]
    pub frame: usize,
    pub parameters: Vec<String>,
    /// Spanning polynomials of the family, in the parametrized grammar.
    pub family: Vec<String>,
}

fn default_frame() -> usize {
    1
}
