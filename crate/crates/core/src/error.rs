use thiserror::Error;

use crate::exact_linalg::LatticeVector;
use crate::fan::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero ray")]
    ZeroRay,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grade overflow: cannot wedge a grade-{grade} multivector in dimension {dim}")]
    GradeOverflow { grade: usize, dim: usize },

    #[error("input vectors are linearly dependent")]
    Dependent,

    #[error("ambient dimension {0} exceeds the hard cap of {cap}", cap = crate::exact_linalg::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("non-primitive ray {0}")]
    NonPrimitiveRay(LatticeVector),

    #[error("malformed fan document: {0}")]
    Malformed(String),

    #[error("invalid fan structure: {0}")]
    Structure(String),

    #[error("fan failed validation ({} violation(s))", .0.diagnostics.len())]
    Invalid(Box<ValidationReport>),

    #[error("polytope unbounded: fan not complete")]
    Unbounded,

    #[error("weight {0} not in P_Δ")]
    NotInPolytope(LatticeVector),

    #[error("k = {k} out of range 0..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("singular ray matrix for cone {0}")]
    SingularCone(usize),

    #[error("margin must be at least 1, got {0}")]
    Margin(i64),

    #[error("unknown fan family `{0}`")]
    UnknownFamily(String),

    #[error("invalid family parameters: {0}")]
    FamilyParams(String),

    #[error("unknown dimension method `{0}`")]
    UnknownMethod(String),
}
