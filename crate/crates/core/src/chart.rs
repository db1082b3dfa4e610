//! Focal charts behind one trait, looked up by space and chart name.

use crate::curve::Curve;
use crate::curve_dsl::Space;
use crate::error::{FocalError, Result};
use crate::focal_desitter::{
    beta_lambda, spherical_bif_lightlike, spherical_focal_curve, spherical_focal_surface, Branch,
    SphericalFocalSample,
};
use crate::focal_r31::{bif_lightlike_chart, focal_surface, ChartParams, FocalSample};
use crate::metric::{MetricClass, TangentMetric};
use crate::minkowski::MVector;
use crate::singularity::SingClass;

/// A focal sample in chart-independent form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartSample {
    pub point: MVector,
    pub params: ChartParams,
    pub branch: Branch,
    pub metric: Option<TangentMetric>,
    pub sing: SingClass,
    pub boundary: bool,
    /// `|<p,p> - 1|` for de Sitter outputs.
    pub sphere_residual: Option<f64>,
}

impl ChartSample {
    pub fn metric_class(&self) -> Option<MetricClass> {
        self.metric.map(|m| m.class)
    }

    pub fn det_gram(&self) -> Option<f64> {
        self.metric.map(|m| m.det)
    }
}

impl From<FocalSample> for ChartSample {
    fn from(s: FocalSample) -> Self {
        ChartSample {
            point: s.point,
            params: s.chart,
            branch: Branch::Plus,
            metric: Some(s.metric),
            sing: s.sing,
            boundary: false,
            sphere_residual: None,
        }
    }
}

impl From<SphericalFocalSample> for ChartSample {
    fn from(s: SphericalFocalSample) -> Self {
        ChartSample {
            point: s.point,
            params: s.chart,
            branch: s.branch,
            metric: s.metric,
            sing: s.sing,
            boundary: s.boundary,
            sphere_residual: Some(s.sphere_residual),
        }
    }
}

pub trait FocalChart: Send + Sync {
    fn space(&self) -> Space;

    /// `"frenet"` or `"lightlike"`.
    fn chart(&self) -> &'static str;

    fn name(&self) -> String {
        format!("{}/{}", self.space(), self.chart())
    }

    /// 2 for focal surfaces, 1 for focal curves (the `μ` argument is ignored).
    fn dimension(&self) -> usize;

    fn branches(&self) -> &'static [Branch] {
        &[Branch::Plus]
    }

    fn default_mu_range(&self) -> (f64, f64);

    fn sample(&self, curve: &Curve, t: f64, mu: f64, branch: Branch) -> Result<ChartSample>;
}

struct R31Frenet;
struct R31Lightlike;
struct S21Frenet;
struct S21Lightlike;
struct S31Frenet;
struct S31Lightlike;

impl FocalChart for R31Frenet {
    fn space(&self) -> Space {
        Space::R31
    }
    fn chart(&self) -> &'static str {
        "frenet"
    }
    fn dimension(&self) -> usize {
        2
    }
    fn default_mu_range(&self) -> (f64, f64) {
        (-2.0, 2.0)
    }
    fn sample(&self, curve: &Curve, t: f64, mu: f64, _: Branch) -> Result<ChartSample> {
        focal_surface(curve, t, mu).map(Into::into)
    }
}

impl FocalChart for R31Lightlike {
    fn space(&self) -> Space {
        Space::R31
    }
    fn chart(&self) -> &'static str {
        "lightlike"
    }
    fn dimension(&self) -> usize {
        2
    }
    fn default_mu_range(&self) -> (f64, f64) {
        (-2.0, 2.0)
    }
    fn sample(&self, curve: &Curve, t: f64, mu: f64, _: Branch) -> Result<ChartSample> {
        bif_lightlike_chart(curve, t, mu).map(Into::into)
    }
}

impl FocalChart for S21Frenet {
    fn space(&self) -> Space {
        Space::S21
    }
    fn chart(&self) -> &'static str {
        "frenet"
    }
    fn dimension(&self) -> usize {
        1
    }
    fn branches(&self) -> &'static [Branch] {
        &Branch::BOTH
    }
    fn default_mu_range(&self) -> (f64, f64) {
        (0.0, 0.0)
    }
    fn sample(&self, curve: &Curve, t: f64, _: f64, branch: Branch) -> Result<ChartSample> {
        spherical_focal_curve(curve, t, branch).map(Into::into)
    }
}

impl FocalChart for S21Lightlike {
    fn space(&self) -> Space {
        Space::S21
    }
    fn chart(&self) -> &'static str {
        "lightlike"
    }
    fn dimension(&self) -> usize {
        1
    }
    fn branches(&self) -> &'static [Branch] {
        &Branch::BOTH
    }
    fn default_mu_range(&self) -> (f64, f64) {
        (0.0, 0.0)
    }
    fn sample(&self, curve: &Curve, t: f64, _: f64, branch: Branch) -> Result<ChartSample> {
        let [p, m] = spherical_bif_lightlike(curve, t)?;
        Ok(match branch {
            Branch::Plus => p,
            Branch::Minus => m,
        }
        .into())
    }
}

impl FocalChart for S31Frenet {
    fn space(&self) -> Space {
        Space::S31
    }
    fn chart(&self) -> &'static str {
        "frenet"
    }
    fn dimension(&self) -> usize {
        2
    }
    fn branches(&self) -> &'static [Branch] {
        &Branch::BOTH
    }
    fn default_mu_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }
    fn sample(&self, curve: &Curve, t: f64, mu: f64, branch: Branch) -> Result<ChartSample> {
        spherical_focal_surface(curve, t, mu, branch).map(Into::into)
    }
}

impl FocalChart for S31Lightlike {
    fn space(&self) -> Space {
        Space::S31
    }
    fn chart(&self) -> &'static str {
        "lightlike"
    }
    fn dimension(&self) -> usize {
        2
    }
    fn branches(&self) -> &'static [Branch] {
        &Branch::BOTH
    }
    fn default_mu_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }
    fn sample(&self, curve: &Curve, t: f64, mu: f64, branch: Branch) -> Result<ChartSample> {
        beta_lambda(curve, t, mu, branch).map(|(_, s)| s.into())
    }
}

static CHARTS: [&dyn FocalChart; 6] = [
    &R31Frenet,
    &R31Lightlike,
    &S21Frenet,
    &S21Lightlike,
    &S31Frenet,
    &S31Lightlike,
];

/// Every registered chart.
pub fn charts() -> &'static [&'static dyn FocalChart] {
    &CHARTS
}

pub fn lookup_chart(space: Space, chart: &str) -> Result<&'static dyn FocalChart> {
    CHARTS
        .iter()
        .copied()
        .find(|c| c.space() == space && c.chart() == chart)
        .ok_or_else(|| {
            let known: Vec<String> = CHARTS.iter().map(|c| c.name()).collect();
            FocalError::NotApplicable(format!(
                "no chart `{chart}` for {space}; known: {}",
                known.join(", ")
            ))
        })
}
