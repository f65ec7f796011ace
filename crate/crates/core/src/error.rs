//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Hessenberg vector: {0}")]
    InvalidHessenberg(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("self-relation undefined; use arrow")]
    SelfRelation,

    #[error("empty subset")]
    EmptySubset,

    #[error("element {0} out of range")]
    ElementOutOfRange(u8),

    #[error("too few variables: need at least {needed}, have {have}")]
    TooFewVariables { needed: usize, have: usize },

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("insufficient colors for faithful expansion: {vertices} vertices but only {colors} colors")]
    InsufficientColors { vertices: usize, colors: usize },

    #[error("sequence has repeated elements")]
    RepeatedElements,

    #[error("supports overlap")]
    OverlappingSupports,

    #[error("supports do not cover the ground set")]
    NonCoveringSupports,

    #[error("partition weight {weight} does not match element count {n}")]
    WeightMismatch { weight: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no anchor convention passes calibration:\n{0}")]
    CalibrationFailed(String),

    #[error("internal consistency violation: {0}")]
    Internal(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}
