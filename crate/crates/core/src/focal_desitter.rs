//! Spherical focal sets of curves in S²₁ and S³₁.

use std::fmt;

use crate::curve::Curve;
use crate::curve_dsl::Space;
use crate::error::{FocalError, Result};
use crate::focal_r31::ChartParams;
use crate::frenet::{S21Series, S31Series};
use crate::metric::{tangent_metric, MetricClass, TangentMetric};
use crate::minkowski::MVector;
use crate::singularity::{classify, SingClass};
use crate::taylor::{Scalar, Taylor};
use crate::tolerance::is_zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }

    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalFocalSample {
    pub point: MVector,
    pub branch: Branch,
    pub chart: ChartParams,
    /// Velocity of a focal curve (S²₁ only): in arc length for Frenet
    /// charts, in `t` for lightlike charts.
    pub tangent: Option<MVector>,
    /// Induced metric of a focal surface (S³₁ only).
    pub metric: Option<TangentMetric>,
    pub sing: SingClass,
    /// The sample sits on the rim of its chart domain (radicand zero).
    pub boundary: bool,
    /// `|<p,p> - 1|`.
    pub sphere_residual: f64,
}

impl SphericalFocalSample {
    pub fn metric_class(&self) -> Option<MetricClass> {
        self.metric.map(|m| m.class)
    }
}

fn require_space(curve: &Curve, space: Space) -> Result<()> {
    if curve.space == space {
        Ok(())
    } else {
        Err(FocalError::NotApplicable(format!(
            "this construction needs a curve in {space}, got {}",
            curve.space
        )))
    }
}

fn sample(
    curve: &Curve,
    point: MVector,
    branch: Branch,
    chart: ChartParams,
    tangent: Option<MVector>,
    metric: Option<TangentMetric>,
    boundary: bool,
) -> Result<SphericalFocalSample> {
    if !point.is_finite() {
        return Err(FocalError::degenerate(chart.t(), "non-finite focal point"));
    }
    let sing = classify(curve, chart.t(), &point, curve.tol().zero)?;
    Ok(SphericalFocalSample {
        point,
        branch,
        chart,
        tangent,
        metric,
        sing,
        boundary,
        sphere_residual: (point.dot(&point) - 1.0).abs(),
    })
}

// ---------------------------------------------------------------- S²₁

/// `α± = ±(k_g γ + ε n)/√(k_g² + δ)`.
pub fn spherical_focal_curve(curve: &Curve, t: f64, branch: Branch) -> Result<SphericalFocalSample> {
    let fr = S21Series::at(curve, t, 3)?;
    let kg = fr.kg.value();
    let d = fr.kg * fr.kg + Taylor::constant(fr.delta);
    if d.value() <= curve.tol().zero * kg.mul_add(kg, 1.0) {
        return Err(FocalError::OutOfRange(format!(
            "k_g² + δ = {:e} <= 0 at t = {t}: spherical focal curve undefined",
            d.value()
        )));
    }
    let inv = d.sqrt().recip() * branch.sign();
    let alpha = (fr.gamma.map(|c| c * fr.kg) + fr.n.scale(Taylor::constant(fr.eps))).map(|c| c * inv);
    sample(
        curve,
        alpha.value(),
        branch,
        ChartParams::Frenet { t, mu: 0.0 },
        Some(alpha.derivative(1)),
        None,
        false,
    )
}

/// `dk_g/ds` at `t`.
pub fn geodesic_curvature_rate(curve: &Curve, t: f64) -> Result<(f64, f64)> {
    let fr = S21Series::at(curve, t, 3)?;
    Ok((fr.kg.value(), fr.kg.derivative(1)))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SphericalSingularities {
    /// Parameters where `k_g' = 0`.
    Isolated(Vec<f64>),
    /// `k_g` is constant on the whole window, so every point is singular.
    ConstantCurvature { kg: f64 },
}

/// Roots of `k_g'` on `[lo, hi]`: the singular points of `α±`.
pub fn spherical_singular_points(curve: &Curve, lo: f64, hi: f64) -> Result<SphericalSingularities> {
    require_space(curve, Space::S21)?;
    const GRID: usize = 257;
    let tol = curve.tol().zero;
    let ts: Vec<f64> = (0..GRID)
        .map(|i| lo + (hi - lo) * i as f64 / (GRID - 1) as f64)
        .collect();
    let vals = ts
        .iter()
        .map(|&t| geodesic_curvature_rate(curve, t))
        .collect::<Result<Vec<_>>>()?;
    let kmax = vals.iter().fold(0.0f64, |m, v| m.max(v.0.abs()));
    if vals.iter().all(|v| v.1.abs() <= 1e3 * tol * kmax.max(1.0)) {
        return Ok(SphericalSingularities::ConstantCurvature { kg: vals[GRID / 2].0 });
    }
    let rate = |t: f64| geodesic_curvature_rate(curve, t).map(|v| v.1);
    let mut roots = Vec::new();
    for i in 0..GRID - 1 {
        let (qa, qb) = (vals[i].1, vals[i + 1].1);
        if qa == 0.0 {
            roots.push(ts[i]);
        } else if qa * qb < 0.0 {
            let (mut a, mut b, mut fa) = (ts[i], ts[i + 1], qa);
            while b - a > 1e-13 * (hi - lo) {
                let m = 0.5 * (a + b);
                let fm = rate(m)?;
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fa * fm < 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    if vals[GRID - 1].1 == 0.0 {
        roots.push(ts[GRID - 1]);
    }
    Ok(SphericalSingularities::Isolated(roots))
}

/// Lightlike-window chart of the S²₁ focal curve, both branches.
///
/// With `N = γ∧γ'`, `c = <γ',γ'>`, `D = <N,γ''>` and
/// `μ = c/√(D² - c³)`: `α⁺ = √(1 + μ²c)·γ + sgn(D)·μ·N`, `α⁻ = -α⁺`.
pub fn spherical_bif_lightlike(curve: &Curve, t: f64) -> Result<[SphericalFocalSample; 2]> {
    require_space(curve, Space::S21)?;
    let tol = curve.tol().zero;
    let g = curve.series(t, 3)?;
    let g1 = g.differentiate();
    let g2 = g1.differentiate();
    let n = g.wedge(&g1);
    let c = g1.dot(&g1);
    let d = n.dot(&g2);
    let (c0, d0) = (c.value(), d.value());
    if is_zero(d0, tol, n.value().euclid_norm() * g2.value().euclid_norm()) {
        return Err(FocalError::degenerate(t, "<γ∧γ', γ''> vanishes"));
    }
    let rad = d * d - c * c * c;
    if rad.value() <= tol * (d0 * d0).max(c0.abs().powi(3)) {
        return Err(FocalError::OutOfRange(format!(
            "<γ∧γ',γ''>² - <γ',γ'>³ = {:e} <= 0 at t = {t}",
            rad.value()
        )));
    }
    let mu = c / rad.sqrt();
    let a = (Taylor::constant(1.0) + mu * mu * c).sqrt();
    let alpha = g.map(|x| x * a) + n.map(|x| x * mu * d0.signum());
    let mut out = Vec::with_capacity(2);
    for branch in Branch::BOTH {
        let s = branch.sign();
        out.push(sample(
            curve,
            alpha.value().scale(s),
            branch,
            ChartParams::Lightlike { t, mu: 0.0 },
            Some(alpha.derivative(1).scale(s)),
            None,
            false,
        )?);
    }
    Ok([out[0], out[1]])
}

// ---------------------------------------------------------------- S³₁

/// Frame pieces of the Frenet chart in S³₁.
struct S31Pieces<S> {
    gamma: MVector<S>,
    n: MVector<S>,
    e: MVector<S>,
    k: S,
}

/// `𝔅±(s,μ)` and the radicand under the square root.
fn s31_point<S: Scalar>(
    p: &S31Pieces<S>,
    mu: S,
    spacelike: bool,
    delta: f64,
    sign: f64,
    rad_override: Option<S>,
) -> (MVector<S>, S) {
    let k = p.k;
    let one = S::cst(1.0);
    let (a, rad) = if spacelike {
        let d = S::cst(delta);
        (mu / (d * k), -(d * k * k) + d * mu * mu * (k * k + d))
    } else {
        (-(mu / k), k * k - mu * mu * (k * k + one))
    };
    let root = match rad_override {
        Some(r) => r,
        None => rad.sqrt(),
    };
    let point = p.gamma.scale(mu) + p.n.scale(a) + p.e.scale(root / k * S::cst(sign));
    (point, rad)
}

fn domain_bound(spacelike: bool, delta: f64, k: f64) -> String {
    if !spacelike {
        format!("|μ| <= k_h/√(k_h²+1) = {}", k / (k * k + 1.0).sqrt())
    } else if delta > 0.0 {
        format!("|μ| >= k_g/√(k_g²+1) = {}", k / (k * k + 1.0).sqrt())
    } else if k * k > 1.0 {
        format!("|μ| <= k_g/√(k_g²-1) = {}", k / (k * k - 1.0).sqrt())
    } else {
        "no admissible μ".to_string()
    }
}

fn surface_from_series(
    curve: &Curve,
    fr: &S31Series,
    t: f64,
    mu: f64,
    branch: Branch,
) -> Result<SphericalFocalSample> {
    let tol = curve.tol().zero;
    let k0 = fr.curvature.value();
    let vals = S31Pieces {
        gamma: fr.gamma.value(),
        n: fr.n.value(),
        e: fr.e.value(),
        k: k0,
    };
    let (_, rad) = s31_point(&vals, mu, fr.spacelike, fr.delta, branch.sign(), Some(0.0));
    let scale = (k0 * k0).max(mu * mu * (k0 * k0 + 1.0));
    if rad < -tol * scale.max(1.0) {
        return Err(FocalError::OutOfRange(format!(
            "μ = {mu} outside the focal surface domain at t = {t} ({})",
            domain_bound(fr.spacelike, fr.delta, k0)
        )));
    }
    let chart = ChartParams::Frenet { t, mu };
    if is_zero(rad, tol, scale) {
        let (point, _) = s31_point(&vals, mu, fr.spacelike, fr.delta, branch.sign(), Some(0.0));
        let metric = rim_metric();
        return sample(curve, point, branch, chart, None, Some(metric), true);
    }
    let series = S31Pieces {
        gamma: fr.gamma,
        n: fr.n,
        e: fr.e,
        k: fr.curvature,
    };
    let (ps, _) = s31_point(&series, Taylor::constant(mu), fr.spacelike, fr.delta, branch.sign(), None);
    let lifted = S31Pieces {
        gamma: vals.gamma.lift(),
        n: vals.n.lift(),
        e: vals.e.lift(),
        k: Taylor::constant(k0),
    };
    let (pm, _) = s31_point(&lifted, Taylor::variable(mu), fr.spacelike, fr.delta, branch.sign(), None);
    let metric = tangent_metric(&ps.derivative(1), &pm.derivative(1), curve.tol().metric);
    sample(curve, ps.value(), branch, chart, None, Some(metric), false)
}

fn rim_metric() -> TangentMetric {
    TangentMetric {
        gram: [f64::NAN; 3],
        det: f64::NAN,
        scale: 1.0,
        class: MetricClass::Undefined,
        kernel: None,
    }
}

/// Spherical focal surface `𝔅±(s, μ)` of a curve in S³₁.
pub fn spherical_focal_surface(
    curve: &Curve,
    t: f64,
    mu: f64,
    branch: Branch,
) -> Result<SphericalFocalSample> {
    let fr = S31Series::at(curve, t, 3)?;
    surface_from_series(curve, &fr, t, mu, branch)
}

/// g-spherical cuspidal point of a spacelike arc.
///
/// `μ² = k_g⁴τ_g² / (k_g⁴τ_g² + δk_g²τ_g² - δk_g'²)`, signed so that the
/// `e`-coefficient of the chosen branch matches `k_g'μ/(δk_g²τ_g)`.
pub fn g_cuspidal(curve: &Curve, t: f64, branch: Branch) -> Result<SphericalFocalSample> {
    let fr = S31Series::at(curve, t, 4)?;
    if !fr.spacelike {
        return Err(FocalError::NotApplicable(
            "g-cuspidal curve needs a spacelike arc; use h_cuspidal".into(),
        ));
    }
    let (k, kp, tau, d) = (
        fr.curvature.value(),
        fr.curvature.derivative(1),
        fr.torsion.value(),
        fr.delta,
    );
    let num = k.powi(4) * tau * tau;
    let den = num + d * k * k * tau * tau - d * kp * kp;
    cuspidal_from(curve, &fr, t, branch, num, den, kp * tau * d)
}

/// h-spherical cuspidal point of a timelike arc.
///
/// `μ = ±τ_h k_h² / √(τ_h²k_h⁴ + k_h'² + τ_h²k_h²)`.
pub fn h_cuspidal(curve: &Curve, t: f64, branch: Branch) -> Result<SphericalFocalSample> {
    let fr = S31Series::at(curve, t, 4)?;
    if fr.spacelike {
        return Err(FocalError::NotApplicable(
            "h-cuspidal curve needs a timelike arc; use g_cuspidal".into(),
        ));
    }
    let (k, kp, tau) = (
        fr.curvature.value(),
        fr.curvature.derivative(1),
        fr.torsion.value(),
    );
    let num = k.powi(4) * tau * tau;
    let den = num + kp * kp + tau * tau * k * k;
    cuspidal_from(curve, &fr, t, branch, num, den, kp * tau)
}

fn cuspidal_from(
    curve: &Curve,
    fr: &S31Series,
    t: f64,
    branch: Branch,
    num: f64,
    den: f64,
    orient: f64,
) -> Result<SphericalFocalSample> {
    let scale = num.abs().max(den.abs()).max(1.0);
    if is_zero(den, curve.tol().zero, scale) {
        return Err(FocalError::degenerate(t, "cuspidal radicand vanishes"));
    }
    if den < 0.0 {
        return Err(FocalError::OutOfRange(format!(
            "cuspidal radicand {den:e} < 0 at t = {t}: no real μ"
        )));
    }
    let sign = if orient == 0.0 { 1.0 } else { orient.signum() };
    let mu = branch.sign() * sign * (num / den).sqrt();
    surface_from_series(curve, fr, t, mu, branch)
}

/// Solution data of the β/λ system near a lightlike point of a curve in S³₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaLambdaReport {
    pub beta: f64,
    pub lambda: f64,
    /// `R(t,μ) = A(t)μ² + B(t)`.
    pub r_value: f64,
    pub a_coef: f64,
    pub b_coef: f64,
    /// Reference magnitude `max(1, |A|, |B|)` for the `R` gate.
    pub r_scale: f64,
    /// Sign of `<γ'', γ∧γ'∧N>`.
    pub branch_sign_inner: f64,
    /// Largest of `|<γ',v>|`, `|<γ'',v>|`, `|<v,v> - 1|` at the solution.
    pub defining_residual: f64,
}

/// Index data fixing the normal `N` of the β/λ chart around one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct NormalChoice {
    seeds: [usize; 2],
    combo: usize,
}

fn flip<S: Scalar>(x: &MVector<S>) -> MVector<S> {
    let mut c = x.as_slice().to_vec();
    c[0] = -c[0];
    MVector::from_slice(&c).expect("same dimension")
}

fn e_unit<S: Scalar>(x: &MVector<S>) -> MVector<S> {
    x.scale(S::cst(1.0) / x.euclid_dot(x).sqrt())
}

fn reject<S: Scalar>(x: &MVector<S>, unit: &MVector<S>) -> MVector<S> {
    *x - unit.scale(x.euclid_dot(unit))
}

/// Euclidean-orthonormal basis of `{γ, γ'}^⊥` (Minkowski complement) and the
/// chosen candidate for `N`, normalized to `|<N,N>| = 1`.
fn build_normal<S: Scalar>(g: &MVector<S>, g1: &MVector<S>, choice: NormalChoice) -> MVector<S> {
    let q1 = e_unit(&flip(g));
    let q2 = e_unit(&reject(&flip(g1), &q1));
    let residual = |i: usize| {
        let e = MVector::<S>::basis(4, i);
        reject(&reject(&e, &q1), &q2)
    };
    let w1 = e_unit(&residual(choice.seeds[0]));
    let w2 = e_unit(&reject(&residual(choice.seeds[1]), &w1));
    let h = S::cst(std::f64::consts::FRAC_1_SQRT_2);
    let cand = match choice.combo {
        0 => w1,
        1 => w2,
        2 => (w1 + w2).scale(h),
        _ => (w1 - w2).scale(h),
    };
    cand.scale(S::cst(1.0) / cand.dot(&cand).abs().sqrt())
}

fn choose_normal(g: &MVector, g1: &MVector, g2: &MVector, t: f64) -> Result<NormalChoice> {
    let q1 = e_unit(&flip(g));
    let q2 = e_unit(&reject(&flip(g1), &q1));
    let res: Vec<MVector> = (0..4)
        .map(|i| reject(&reject(&MVector::basis(4, i), &q1), &q2))
        .collect();
    let mut best_pair = ([0, 1], -1.0);
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let ri = res[i].euclid_norm();
            if ri < 1e-8 {
                continue;
            }
            let w1 = res[i].scale(1.0 / ri);
            let area = ri * reject(&res[j], &w1).euclid_norm();
            if area > best_pair.1 {
                best_pair = ([i, j], area);
            }
        }
    }
    let mut best: Option<(NormalChoice, f64)> = None;
    for combo in 0..4 {
        let choice = NormalChoice {
            seeds: best_pair.0,
            combo,
        };
        let n = build_normal(g, g1, choice);
        if !n.is_finite() || n.euclid_norm() > 1e6 {
            continue;
        }
        let score = g2.dot(&MVector::wedge3(g, g1, &n)).abs() / n.euclid_norm();
        if best.map_or(true, |b| score > b.1) {
            best = Some((choice, score));
        }
    }
    best.map(|b| b.0)
        .ok_or_else(|| FocalError::degenerate(t, "no admissible normal N for the β/λ chart"))
}

struct BlTerms<S> {
    gamma: MVector<S>,
    n: MVector<S>,
    e: MVector<S>,
    c: S,
    g: S,
    h: S,
    nn: S,
    ee: S,
}

impl<S: Scalar> BlTerms<S> {
    fn new(gamma: MVector<S>, d1: MVector<S>, d2: MVector<S>, choice: NormalChoice) -> Self {
        let n = build_normal(&gamma, &d1, choice);
        let e = MVector::wedge3(&gamma, &d1, &n);
        BlTerms {
            c: d1.dot(&d1),
            g: d2.dot(&n),
            h: d2.dot(&e),
            nn: n.dot(&n),
            ee: e.dot(&e),
            gamma,
            n,
            e,
        }
    }

    fn coefficients(&self) -> (S, S) {
        let (c, g, h, nn, ee) = (self.c, self.g, self.h, self.nn, self.ee);
        let h2 = h * h;
        let a = -(g * g * ee * h2) - nn * h2 * h2 - nn * h2 * c * c * ee;
        let b = g * g * ee * h2 + nn * h2 * h2;
        (a, b)
    }

    /// `(v, β, λ)` for a given square root of `R`.
    fn solve(&self, mu: S, root: S, sign: f64) -> (MVector<S>, S, S) {
        let (c, g, h, nn, ee) = (self.c, self.g, self.h, self.nn, self.ee);
        let den = nn * h * h + g * g * ee;
        let beta = (mu * c * g * ee + root * S::cst(sign)) / den;
        let lambda = (mu * c - beta * g) / h;
        let v = self.gamma.scale(mu) + self.n.scale(beta) + self.e.scale(lambda);
        (v, beta, lambda)
    }
}

/// Solve for `v = μγ + βN + λE` on the bifurcation set near a lightlike
/// point of a curve in S³₁.
pub fn beta_lambda(
    curve: &Curve,
    t: f64,
    mu: f64,
    branch: Branch,
) -> Result<(BetaLambdaReport, SphericalFocalSample)> {
    require_space(curve, Space::S31)?;
    let tol = curve.tol().zero;
    let series = curve.series(t, 3)?;
    let d1s = series.differentiate();
    let d2s = d1s.differentiate();
    let (g0, d10, d20) = (series.value(), d1s.value(), d2s.value());
    let choice = choose_normal(&g0, &d10, &d20, t)?;
    let vals = BlTerms::new(g0, d10, d20, choice);
    if is_zero(vals.h, tol, d20.euclid_norm() * vals.e.euclid_norm()) {
        return Err(FocalError::degenerate(t, "<γ'', E> vanishes for every candidate N"));
    }
    let (a, b) = vals.coefficients();
    let r = a * mu * mu + b;
    let r_scale = a.abs().max(b.abs()).max(1.0);
    if r < -tol * r_scale {
        return Err(FocalError::OutOfRange(format!(
            "R(t, μ) = {r:e} < 0 at t = {t}, μ = {mu}"
        )));
    }
    let boundary = is_zero(r, tol, r_scale);
    let sign = branch.sign();
    let (v, beta, lambda) = vals.solve(mu, r.max(0.0).sqrt(), sign);
    let defining_residual = [
        d10.dot(&v).abs() / d10.euclid_norm().max(1.0),
        d20.dot(&v).abs() / d20.euclid_norm().max(1.0),
        (v.dot(&v) - 1.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let report = BetaLambdaReport {
        beta,
        lambda,
        r_value: r,
        a_coef: a,
        b_coef: b,
        r_scale,
        branch_sign_inner: vals.h.signum(),
        defining_residual,
    };

    let metric = if boundary {
        rim_metric()
    } else {
        let st = BlTerms::new(series, d1s, d2s, choice);
        let (ast, bst) = st.coefficients();
        let mus = Taylor::constant(mu);
        let (vt, _, _) = st.solve(mus, (ast * mus * mus + bst).sqrt(), sign);
        let lifted = BlTerms::new(g0.lift(), d10.lift(), d20.lift(), choice);
        let (al, bl) = lifted.coefficients();
        let mv = Taylor::variable(mu);
        let (vm, _, _) = lifted.solve(mv, (al * mv * mv + bl).sqrt(), sign);
        tangent_metric(&vt.derivative(1), &vm.derivative(1), curve.tol().metric)
    };
    let s = sample(
        curve,
        v,
        branch,
        ChartParams::Lightlike { t, mu },
        None,
        Some(metric),
        boundary,
    )?;
    Ok((report, s))
}

/// LD curves `𝔅±(t0, μ)` for `μ` strictly inside `(-1, 1)`.
pub fn s31_ld_extract(curve: &Curve, t0: f64, resolution: usize) -> Result<Vec<SphericalFocalSample>> {
    let n = resolution.max(1);
    let mut out = Vec::with_capacity(2 * n);
    for branch in Branch::BOTH {
        for i in 1..=n {
            let mu = -1.0 + 2.0 * i as f64 / (n + 1) as f64;
            out.push(beta_lambda(curve, t0, mu, branch)?.1);
        }
    }
    Ok(out)
}
