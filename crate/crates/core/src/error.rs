use thiserror::Error;

pub type Result<T> = std::result::Result<T, FocalError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FocalError {
    #[error("dimension mismatch: {0}-vector combined with {1}-vector")]
    DimensionMismatch(usize, usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid curve definition: {0}")]
    InvalidCurve(String),

    #[error("domain error in `{expr}` at t = {t}: {reason}")]
    Domain {
        expr: String,
        t: f64,
        reason: String,
    },

    #[error("curve leaves the unit de Sitter sphere: residual {residual:e} at t = {t}")]
    NotOnSphere { residual: f64, t: f64 },

    #[error("parameter {t} lies outside the curve domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    /// Evaluation too close to a lightlike point for arc-length machinery.
    #[error("ill-conditioned at t = {t}: {reason}")]
    Conditioning { t: f64, reason: String },

    /// A quantity that must be nonzero vanished (curvature, torsion, ...).
    #[error("degenerate configuration at t = {t}: {reason}")]
    Degenerate { t: f64, reason: String },

    /// A chart parameter fell outside the admissible range.
    #[error("out of admissible range: {0}")]
    OutOfRange(String),

    #[error("refinement failed: {0}")]
    Refinement(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("empty result: {0}")]
    Empty(String),
}

/// Coarse split used by the command line for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: malformed files, wrong dimensions, inapplicable request.
    Usage,
    /// Numerical or geometric failure on otherwise valid input.
    Numeric,
}

impl FocalError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            FocalError::Parse { .. }
            | FocalError::InvalidCurve(_)
            | FocalError::DimensionMismatch(..)
            | FocalError::NotApplicable(_) => ErrorKind::Usage,
            _ => ErrorKind::Numeric,
        }
    }

    pub(crate) fn degenerate(t: f64, reason: impl Into<String>) -> Self {
        FocalError::Degenerate {
            t,
            reason: reason.into(),
        }
    }

    pub(crate) fn conditioning(t: f64, reason: impl Into<String>) -> Self {
        FocalError::Conditioning {
            t,
            reason: reason.into(),
        }
    }
}
