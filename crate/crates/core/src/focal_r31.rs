//! Focal surface, cuspidal curve and the lightlike-neighbourhood bifurcation
//! chart of a curve in R³₁.

use nalgebra::DMatrix;

use crate::curve::Curve;
use crate::error::{FocalError, Result};
use crate::frenet::R31Series;
use crate::metric::{tangent_metric, TangentMetric};
use crate::minkowski::MVector;
use crate::singularity::{classify, SingClass};
use crate::taylor::{Scalar, Taylor};
use crate::tolerance::is_zero;

/// Radius of the ball around `μ₀` excluded from LD extraction, relative to `|μ₀|`.
pub const LD_EXCLUSION: f64 = 1e-3;

/// Which chart produced a sample and at which parameters.
///
/// `t` is always the curve parameter. For `Frenet` charts the first partial
/// is taken in arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartParams {
    Frenet { t: f64, mu: f64 },
    Lightlike { t: f64, mu: f64 },
}

impl ChartParams {
    pub fn t(&self) -> f64 {
        match *self {
            ChartParams::Frenet { t, .. } | ChartParams::Lightlike { t, .. } => t,
        }
    }

    pub fn mu(&self) -> f64 {
        match *self {
            ChartParams::Frenet { mu, .. } | ChartParams::Lightlike { mu, .. } => mu,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChartParams::Frenet { .. } => "frenet",
            ChartParams::Lightlike { .. } => "lightlike",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalSample {
    pub point: MVector,
    pub chart: ChartParams,
    /// Chart partials: along the curve, then along `μ`.
    pub partials: [MVector; 2],
    pub metric: TangentMetric,
    pub sing: SingClass,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspidalSample {
    pub point: MVector,
    pub t: f64,
    pub mu: f64,
}

fn require_dim3(curve: &Curve) -> Result<()> {
    if curve.dim() == 3 {
        Ok(())
    } else {
        Err(FocalError::NotApplicable(
            "R31 constructions need a 3-component curve".into(),
        ))
    }
}

/// `𝔅(s,μ) = γ + ε/(δk)·n + μ·b`.
pub fn focal_surface(curve: &Curve, t: f64, mu: f64) -> Result<FocalSample> {
    let fr = R31Series::at(curve, t, 3)?;
    let coef = fr.k.recip() * (fr.eps / fr.delta);
    let surf = fr.gamma + fr.n.map(|c| c * coef) + fr.b.scale(Taylor::constant(mu));
    let point = surf.value();
    let partials = [surf.derivative(1), fr.b.value()];
    finish(curve, point, ChartParams::Frenet { t, mu }, partials)
}

fn finish(
    curve: &Curve,
    point: MVector,
    chart: ChartParams,
    partials: [MVector; 2],
) -> Result<FocalSample> {
    if !point.is_finite() {
        return Err(FocalError::degenerate(chart.t(), "non-finite focal point"));
    }
    let metric = tangent_metric(&partials[0], &partials[1], curve.tol().metric);
    let sing = classify(curve, chart.t(), &point, curve.tol().zero)?;
    Ok(FocalSample {
        point,
        chart,
        partials,
        metric,
        sing,
    })
}

/// Cuspidal point `𝔅(s, μ(s))` with `μ(s) = k'/(εδk²τ)`.
pub fn cuspidal_curve(curve: &Curve, t: f64) -> Result<CuspidalSample> {
    let fr = R31Series::at(curve, t, 4)?;
    let (k, tau) = (fr.k.value(), fr.tau.value());
    if is_zero(tau, curve.tol().zero, k) {
        return Err(FocalError::degenerate(
            t,
            format!("torsion vanishes (τ = {tau:e}); no cuspidal point"),
        ));
    }
    let mu = fr.k.derivative(1) / (fr.eps * fr.delta * k * k * tau);
    let point = fr.gamma.value() + fr.n.value().scale(fr.eps / (fr.delta * k)) + fr.b.value().scale(mu);
    Ok(CuspidalSample { point, t, mu })
}

/// `N = γ'∧γ''`, `B = γ'∧N` and `<γ',γ'>` as series in `t`.
struct LightlikeFrame {
    gamma: MVector<Taylor>,
    n: MVector<Taylor>,
    b: MVector<Taylor>,
    speed: Taylor,
    nn: Taylor,
}

impl LightlikeFrame {
    fn at(curve: &Curve, t: f64, order: usize) -> Result<Self> {
        require_dim3(curve)?;
        let gamma = curve.series(t, order)?;
        let g1 = gamma.differentiate();
        let g2 = g1.differentiate();
        let n = g1.wedge(&g2);
        let n0 = n.value();
        let nn = n.dot(&n);
        if is_zero(nn.value(), curve.tol().zero, n0.euclid_dot(&n0)) {
            return Err(FocalError::degenerate(
                t,
                "<N,N> vanishes (γ'∧γ'' is null or lightlike)",
            ));
        }
        Ok(LightlikeFrame {
            gamma,
            b: g1.wedge(&n),
            n,
            speed: g1.dot(&g1),
            nn,
        })
    }
}

/// `𝔅(t,μ) = γ - μN - (<γ',γ'>/<N,N>)·B`, valid across lightlike points.
pub fn bif_lightlike_chart(curve: &Curve, t: f64, mu: f64) -> Result<FocalSample> {
    let lf = LightlikeFrame::at(curve, t, 3)?;
    let ratio = lf.speed / lf.nn;
    let surf = lf.gamma - lf.n.scale(Taylor::constant(mu)) - lf.b.map(|c| c * ratio);
    let point = surf.value();
    let partials = [surf.derivative(1), -lf.n.value()];
    finish(curve, point, ChartParams::Lightlike { t, mu }, partials)
}

/// `μ₀ = -3<γ',γ''> / <γ'∧γ'', γ'''>` at a lightlike point.
pub fn mu0(curve: &Curve, t0: f64) -> Result<f64> {
    require_dim3(curve)?;
    let s = curve.series(t0, 3)?;
    let (d1, d2, d3) = (s.derivative(1), s.derivative(2), s.derivative(3));
    let n = d1.wedge(&d2);
    let den = n.dot(&d3);
    if is_zero(den, curve.tol().zero, n.euclid_norm() * d3.euclid_norm()) {
        return Err(FocalError::degenerate(
            t0,
            "<γ'∧γ'', γ'''> vanishes (degenerate torsion)",
        ));
    }
    Ok(-3.0 * d2.dot(&d1) / den)
}

/// LD samples of the lightlike chart at a lightlike parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct LdExtraction {
    pub mu0: f64,
    /// The excluded open interval around `μ₀`.
    pub excluded: (f64, f64),
    /// Samples whose tangent plane is degenerate.
    pub samples: Vec<FocalSample>,
    /// Samples in range whose class was not `Degenerate`.
    pub rejected: Vec<FocalSample>,
    /// Largest Euclidean distance of a degenerate sample from its best-fit line.
    pub line_residual: f64,
}

/// Sample `𝔅(t0, μ)` on `resolution` evenly spaced `μ` in `mu_range`,
/// skipping the ball around `μ₀`.
pub fn ld_extract(
    curve: &Curve,
    t0: f64,
    mu_range: (f64, f64),
    resolution: usize,
) -> Result<LdExtraction> {
    let m0 = mu0(curve, t0)?;
    let r = LD_EXCLUSION * m0.abs();
    let excluded = (m0 - r, m0 + r);
    let (lo, hi) = mu_range;
    let n = resolution.max(2);
    let mut samples = Vec::new();
    let mut rejected = Vec::new();
    for i in 0..n {
        let mu = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        if mu > excluded.0 && mu < excluded.1 {
            continue;
        }
        let s = bif_lightlike_chart(curve, t0, mu)?;
        if s.metric.class == crate::metric::MetricClass::Degenerate {
            samples.push(s);
        } else {
            rejected.push(s);
        }
    }
    if samples.is_empty() && rejected.is_empty() {
        return Err(FocalError::Empty(format!(
            "μ range [{lo}, {hi}] lies inside the exclusion ball around μ₀ = {m0}"
        )));
    }
    let pts: Vec<MVector> = samples.iter().map(|s| s.point).collect();
    Ok(LdExtraction {
        mu0: m0,
        excluded,
        line_residual: line_fit_residual(&pts),
        samples,
        rejected,
    })
}

/// Largest distance of the points from their principal-axis line.
pub fn line_fit_residual(points: &[MVector]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let dim = points[0].dim();
    let n = points.len();
    let mut m = DMatrix::<f64>::zeros(n, dim);
    for (i, p) in points.iter().enumerate() {
        for j in 0..dim {
            m[(i, j)] = p.get(j);
        }
    }
    let mean = m.row_mean();
    for mut row in m.row_iter_mut() {
        row -= &mean;
    }
    let svd = m.clone().svd(false, true);
    let Some(vt) = svd.v_t else { return f64::NAN };
    let (imax, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |a, (i, &s)| if s > a.1 { (i, s) } else { a });
    let dir = vt.row(imax).transpose();
    m.row_iter()
        .map(|row| {
            let r = row.transpose();
            let along = r.dot(&dir);
            (r - &dir * along).norm()
        })
        .fold(0.0, f64::max)
}
