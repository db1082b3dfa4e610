use std::ops::Deref;

use crate::curve_dsl::{validate_on_sphere, CurveDef};
use crate::error::{FocalError, Result};
use crate::tolerance::Tolerances;

const MEDIAN_SAMPLES: usize = 1025;
const SPHERE_SAMPLES: usize = 1001;
const SPHERE_TOL: f64 = 1e-9;

/// A validated curve with the cached data the analyses share.
///
/// Dereferences to its [`CurveDef`].
#[derive(Debug, Clone)]
pub struct Curve {
    def: CurveDef,
    tol: Tolerances,
    median_speed: f64,
}

impl Curve {
    pub fn new(def: CurveDef) -> Result<Self> {
        Curve::with_tolerances(def, Tolerances::default())
    }

    pub fn with_tolerances(def: CurveDef, tol: Tolerances) -> Result<Self> {
        if def.space.is_de_sitter() {
            let chk = validate_on_sphere(&def, SPHERE_SAMPLES, SPHERE_TOL);
            if !chk.on_sphere {
                return Err(FocalError::NotOnSphere {
                    residual: chk.worst_residual,
                    t: chk.worst_t,
                });
            }
        }
        let mut speeds: Vec<f64> = def
            .domain
            .grid(MEDIAN_SAMPLES)
            .filter_map(|t| def.derivative(t, 1).ok())
            .map(|d| d.norm())
            .filter(|s| s.is_finite())
            .collect();
        if speeds.is_empty() {
            return Err(FocalError::InvalidCurve(
                "curve cannot be evaluated anywhere on its domain".into(),
            ));
        }
        speeds.sort_by(|a, b| a.total_cmp(b));
        let median_speed = speeds[speeds.len() / 2];
        Ok(Curve {
            def,
            tol,
            median_speed,
        })
    }

    pub fn def(&self) -> &CurveDef {
        &self.def
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn set_tolerances(&mut self, tol: Tolerances) {
        self.tol = tol;
    }

    /// Median of `‖γ'‖` over the domain.
    pub fn median_speed(&self) -> f64 {
        self.median_speed
    }

    /// Below this `‖γ'‖` the arc-length machinery refuses to run.
    pub fn guard_threshold(&self) -> f64 {
        self.tol.guard * self.median_speed
    }
}

impl Deref for Curve {
    type Target = CurveDef;
    fn deref(&self) -> &CurveDef {
        &self.def
    }
}
