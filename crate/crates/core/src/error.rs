use std::path::PathBuf;

use crate::expr::{EvalError, ParseError};

/// Errors produced across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("null residual at Gram-Schmidt step {index}")]
    NullResidual { index: usize },

    #[error("linear dependence at Gram-Schmidt step {index}")]
    LinearDependence { index: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("at s = {s}: {source}")]
    Eval {
        s: f64,
        #[source]
        source: EvalError,
    },

    #[error("curvature k{index} degenerate at node {node} (|k| = {value:e})")]
    DegenerateCurvature {
        index: usize,
        node: usize,
        value: f64,
    },

    #[error("curvature k{index} vanishes at node {node}")]
    CurvatureZero { index: usize, node: usize },

    #[error("trace violates its speed invariant at node {node} (<x',x'> = {value})")]
    NotUnitSpeed { node: usize, value: f64 },

    #[error("frame drift {residual:e} exceeds tolerance {tol:e} at node {node}")]
    DriftExceeded {
        residual: f64,
        tol: f64,
        node: usize,
    },

    #[error("invalid curvature spec: {0}")]
    Spec(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("{field}: {message}")]
    Validation { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Node index for numeric failures that carry one.
    pub fn node(&self) -> Option<usize> {
        match self {
            Error::DegenerateCurvature { node, .. }
            | Error::CurvatureZero { node, .. }
            | Error::NotUnitSpeed { node, .. }
            | Error::DriftExceeded { node, .. } => Some(*node),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
