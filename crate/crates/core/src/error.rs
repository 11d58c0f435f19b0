use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::LatticePoint;

/// Errors produced by the library. Every variant names the precondition that
/// was violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a polytope needs at least one generator point")]
    EmptyGenerators,

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: BigInt },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("degenerate polytope: affine dimension {affine_dim} has no facets")]
    Degenerate { affine_dim: usize },

    #[error("polytope must lie in the non-negative orthant; found {point}")]
    NegativeCoordinate { point: LatticePoint },

    #[error("simplex size {requested} is smaller than the polytope size {size}")]
    SizeTooSmall { requested: BigInt, size: BigInt },

    #[error("point set is not dps: {0}")]
    NotDps(String),

    #[error("polytope is not maximal dps: {lattice_points} lattice points in dimension {dim}")]
    NotMaximalDps { dim: usize, lattice_points: usize },

    #[error("lift needs a source dimension of at least 2, got {0}")]
    LiftDimension(usize),

    #[error("difference set is empty")]
    EmptyDifferenceSet,

    #[error("lift matrix fails separation at difference {0}")]
    SeparationFailed(LatticePoint),

    #[error("Newton cage not halvable: vertex {vertex} has an odd coordinate")]
    CageNotHalvable { vertex: LatticePoint },

    #[error("zero polynomial has no Newton cage")]
    ZeroPolynomial,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
