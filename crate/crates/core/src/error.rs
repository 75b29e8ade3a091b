//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element is zero")]
    ZeroElement,
    #[error("element is a zero divisor modulo the minimal polynomial: {0}")]
    ZeroDivisor(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("minimal polynomial must be monic of degree >= 1")]
    BadMinPoly,
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("integral basis matrix is not invertible")]
    SingularBasis,
    #[error("2 must be inverted in the base ring")]
    TwoNotInverted,
    #[error("kernel of the integral system has rank {0}, expected 1")]
    KernelRankError(usize),
    #[error("no free generator of the module of integrals was certified")]
    NoFreeGenerator,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("generic fiber is not separable (trace form degenerate)")]
    NotSeparable,
    #[error("counit image of the integrals is not a unit times the square of the witness")]
    NotASquare,
    #[error("lattice admits no free basis among the bounded search candidates")]
    LatticeNotFree,
    #[error("kernel fixed points and theta-dual image disagree as lattices")]
    FixedLatticeMismatch,
    #[error("hypothesis H1 fails: {0}")]
    H1Failure(String),
    #[error("hypothesis H2 fails: {0}")]
    H2Failure(String),
    #[error("form is not equivariant")]
    NotEquivariant,
    #[error("module could not be certified free over the dual Hopf algebra")]
    FreenessUncertified,
    #[error("codifferent dual-lattice computation disagrees with Lambda^-1 B")]
    DualLatticeMismatch,
    #[error("form is singular")]
    SingularForm,
    #[error("element is not a unit of the base ring")]
    NotAUnit,
    #[error("bad group table: {0}")]
    BadGroupTable(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
