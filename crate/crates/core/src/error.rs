use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("empty index set")]
    EmptyIndexSet,
    #[error("modules are over different base algebras")]
    AlgebraMismatch,
    #[error("module is not finitely generated projective: the dual-basis system is infeasible")]
    NotProjective,
    #[error("invalid dual bases: {0}")]
    InvalidDualBases(String),
    #[error("not a bimodule map: {0}")]
    NotBimoduleMap(String),
    #[error("braid equation fails: {0}")]
    NotYangBaxter(String),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("braiding is not dualizable: {0}")]
    NotDualizable(String),
    #[error("relations are not homogeneous; use the filtered quotient")]
    InhomogeneousRelations,
    #[error("elements belong to different generator bundles")]
    BundleMismatch,
    #[error("degree {degree} exceeds the materialized truncation {limit}")]
    TruncationExceeded { degree: usize, limit: usize },
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("face weight outside the face support: {0}")]
    NotFaceSupported(String),
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("base algebra is not separable: {0}")]
    NotSeparable(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
