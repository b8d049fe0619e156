use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rank {rank} is out of bounds for series {series}")]
    InvalidRank { series: char, rank: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid BD triple: {0}")]
    InvalidTriple(String),
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("J must be a subset of the mu-fixed simple roots")]
    JNotFixed,
    #[error("involution does not preserve the Cartan subalgebra")]
    NotCartanPreserving,
    #[error("involution does not map the simple roots to plus or minus the simple roots")]
    NotPlusMinusDelta,
    #[error("no Gaussian-rational rescaling: need |d|^2 = {required} for simple root {root}")]
    NoGaussianSolution { root: usize, required: String },
    #[error("operation requires a canonical involution")]
    NotCanonical,
    #[error("BD triple is not {0}")]
    IncompatibleTriple(String),
    #[error("invalid continuous parameter: {0}")]
    InvalidParameter(String),
    #[error("t must be nonzero")]
    ZeroT,
    #[error("r0 is triangular: CYB(r0) = 0, outside the almost-factorizable branch")]
    Triangular,
    #[error("r0 is not of almost-factorizable form: {0}")]
    NotAlmostFactorizable(String),
    #[error("H is not regular: centralizer has dimension {0}")]
    NotRegular(usize),
    #[error("datum is not {0}")]
    WrongBranch(String),
    #[error("linear system has no solution")]
    Inconsistent,
}

pub type Result<T> = std::result::Result<T, Error>;
