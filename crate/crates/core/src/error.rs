use std::fmt;

use thiserror::Error;

/// The condition of a relative structure that failed validation, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `p <' q` holds but `p < q` does not.
    NotWeaker { p: String, q: String },
    /// `J1 *' J2` is not an order ideal of the strong order.
    StarClosure {
        left: Vec<String>,
        right: Vec<String>,
        result: Vec<String>,
    },
    /// A marked element `p` has `p <' q`.
    MarkedNotMaximal { p: String, q: String },
    /// Marked `p < q` with `lambda_p < lambda_q`.
    Dominance { p: String, q: String },
    /// A minimal or maximal element is not marked.
    MinMax { p: String },
}

impl Violation {
    /// Short tag naming the violated condition: `i`, `ii`, `iii`, `dominance` or `minmax`.
    pub fn tag(&self) -> &'static str {
        match self {
            Violation::NotWeaker { .. } => "i",
            Violation::StarClosure { .. } => "ii",
            Violation::MarkedNotMaximal { .. } => "iii",
            Violation::Dominance { .. } => "dominance",
            Violation::MinMax { .. } => "minmax",
        }
    }
}

fn braces(set: &[String]) -> String {
    format!("{{{}}}", set.join(","))
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotWeaker { p, q } => {
                write!(f, "condition (i): {p} <' {q} but not {p} < {q}")
            }
            Violation::StarClosure {
                left,
                right,
                result,
            } => write!(
                f,
                "condition (ii): {} *' {} = {} is not an order ideal",
                braces(left),
                braces(right),
                braces(result)
            ),
            Violation::MarkedNotMaximal { p, q } => {
                write!(f, "condition (iii): marked element {p} has {p} <' {q}")
            }
            Violation::Dominance { p, q } => {
                write!(f, "dominance: {p} < {q} but lambda_{p} < lambda_{q}")
            }
            Violation::MinMax { p } => {
                write!(f, "minmax: extremal element {p} is not marked")
            }
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("cover relations contain a cycle: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("poset has {size} elements, exhaustive enumeration is bounded by {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("posets are limited to {max} elements, got {size}")]
    TooManyElements { size: usize, max: usize },
    #[error("{0}")]
    ConditionViolated(Violation),
    #[error("not a sublattice: {0}")]
    NotASublattice(String),
    #[error("sublattice has no maximal chain of length {expected}")]
    HeightDeficient { expected: usize },
    #[error("internal closure failure: {0}")]
    InternalClosureFailure(String),
    #[error("point is not a lattice point of dilation {m}")]
    NotALatticePoint { m: usize },
    #[error("point is not in the order polytope")]
    NotInOrderPolytope,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("presentation kind mismatch: {0}")]
    KindMismatch(String),
    #[error("weight vector lies outside the closed cone ({} violated pairs)", .0.len())]
    OutsideCone(Vec<(Vec<String>, Vec<String>)>),
    #[error("weight vector has {got} entries, lattice has {expected} ideals")]
    WeightLength { expected: usize, got: usize },
    #[error("marking is not dominant: {p} < {q} but lambda_{p} < lambda_{q}")]
    NotDominant { p: String, q: String },
    #[error("structure carries no marking")]
    MarkingMissing,
    #[error("marking does not match the marked set of the structure")]
    MarkingMismatch,
    #[error("not a partition of the unmarked elements: {0}")]
    NotAPartition(String),
    #[error("independent constructions disagree: {0}")]
    TheoremViolation(String),
    #[error("invalid dimension sequence: {0}")]
    InvalidDims(String),
    #[error("Pluecker mode {mode} needs Grassmannian dims {{0,k,n}}")]
    ModeDimsMismatch { mode: String },
    #[error("invalid Pluecker index: {0}")]
    InvalidIndex(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
