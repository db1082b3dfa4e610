pub mod causal;
pub mod chart;
pub mod curve;
pub mod curve_dsl;
pub mod error;
pub mod focal_desitter;
pub mod focal_r31;
pub mod frenet;
pub mod metric;
pub mod minkowski;
pub mod singularity;
pub mod taylor;
pub mod tolerance;
pub mod verify;

pub use curve::Curve;
pub use curve_dsl::{parse_curve, CurveDef, Domain, Space};
pub use error::{ErrorKind, FocalError, Result};
pub use minkowski::{causal_type, CausalType, MVector};
pub use taylor::{Scalar, Taylor};
pub use tolerance::Tolerances;
