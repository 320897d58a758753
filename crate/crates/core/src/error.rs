use alloc::string::String;
use alloc::vec::Vec;

use crate::Phase;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exponent {point:?} lies outside the cochain window")]
    OutOfWindow { point: Vec<i64> },
    #[error("window too small to evaluate any triple")]
    WindowTooSmall,
    #[error("matrix is not antisymmetric mod {modulus}")]
    NotAntisymmetric { modulus: i64 },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("sublattice basis has rank {rank} < {dim}; the quotient is infinite")]
    RankDeficient { rank: usize, dim: usize },
    #[error("cocycle does not descend: antisymmetrization is nontrivial on {lattice_vector:?}")]
    DescentObstruction { lattice_vector: Vec<i64> },
    #[error("degenerate pairing: {element:?} lies in the kernel of the sharp map")]
    DegeneratePairing { element: Vec<u64> },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("translation parameter has a zero component at position {0}")]
    ZeroComponent(usize),
    #[error("period matrix entry ({0}, {1}) is zero")]
    ZeroPeriod(usize, usize),
    #[error("support escapes the cochain window at {point:?}")]
    SupportEscapesWindow { point: Vec<i64> },
    #[error("cocycle identity fails at ({g1}, {g2}, {g3}): defect {defect}")]
    NotACocycle { g1: usize, g2: usize, g3: usize, defect: Phase },
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("element {0:?} is not in the group")]
    NotInGroup(Vec<u64>),
    #[error("orbit is not free: {0}")]
    NotFree(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid group presentation: {0}")]
    InvalidGroup(String),
}
