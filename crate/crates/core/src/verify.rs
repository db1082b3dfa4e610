//! Named verification suites run against a loaded curve.

use crate::causal::{find_lightlike_points, find_lightlike_points_with, omega_check, speed_sq, split_arcs, SCAN_POINTS};
use crate::curve::Curve;
use crate::curve_dsl::Space;
use crate::error::{FocalError, Result};
use crate::focal_desitter::{
    beta_lambda, g_cuspidal, geodesic_curvature_rate, h_cuspidal, s31_ld_extract,
    spherical_bif_lightlike, spherical_focal_curve, spherical_focal_surface,
    spherical_singular_points, Branch, SphericalSingularities,
};
use crate::focal_r31::{bif_lightlike_chart, cuspidal_curve, focal_surface, ld_extract, mu0};
use crate::frenet::{frame_s31, R31Series};
use crate::metric::{parallel_residual, rank_residual, MetricClass, RANK_SIN};
use crate::minkowski::{CausalType, MVector};
use crate::singularity::{classify, dist_jet, SingClass};

/// Defining-property gate on `|f'|`, `|f''|` relative to the jet scale.
pub const DEFINING_TOL: f64 = 1e-7;
pub const SPHERE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Assertion {
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Assertion {
            name: name.into(),
            residual,
            tol,
            pass: residual <= tol,
        }
    }

    /// Boolean check recorded as residual `0` (holds) or `1` (fails).
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Assertion::new(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    /// Count of violations; passes only when zero.
    pub fn count(name: impl Into<String>, violations: usize) -> Self {
        Assertion::new(name, violations as f64, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: String,
    pub curve: String,
    pub assertions: Vec<Assertion>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn first_failure(&self) -> Option<&Assertion> {
        self.assertions.iter().find(|a| !a.pass)
    }
}

pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Whether the suite has anything to check on this curve.
    fn applies_to(&self, curve: &Curve) -> bool;

    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>>;
}

struct LightlikeSuite;
struct SignatureSuite;
struct Mu0Suite;
struct LdSuite;
struct S21Suite;
struct S31Suite;
struct All;

static SUITES: [&dyn VerifySuite; 7] = [&LightlikeSuite, &SignatureSuite, &Mu0Suite, &LdSuite, &S21Suite, &S31Suite, &All];

pub fn suites() -> &'static [&'static dyn VerifySuite] {
    &SUITES
}

pub fn lookup_suite(name: &str) -> Result<&'static dyn VerifySuite> {
    SUITES.iter().copied().find(|s| s.name() == name).ok_or_else(|| {
        let known: Vec<&str> = SUITES.iter().map(|s| s.name()).collect();
        FocalError::NotApplicable(format!("unknown suite `{name}`; known: {}", known.join(", ")))
    })
}

/// Run `name` on `curve`; `label` is copied into the report.
pub fn run_suite(name: &str, curve: &Curve, label: &str) -> Result<VerifyReport> {
    let suite = lookup_suite(name)?;
    if !suite.applies_to(curve) {
        return Err(FocalError::NotApplicable(format!(
            "suite `{name}` does not apply to a {} curve{}",
            curve.space,
            if needs_lightlike(name) { " without certified lightlike points" } else { "" }
        )));
    }
    Ok(VerifyReport {
        suite: name.to_string(),
        curve: label.to_string(),
        assertions: suite.run(curve)?,
    })
}

fn needs_lightlike(name: &str) -> bool {
    matches!(name, "prop4_1" | "thm4_3")
}

fn certified(curve: &Curve) -> Result<Vec<f64>> {
    Ok(find_lightlike_points(curve, curve.tol().zero)?
        .into_iter()
        .filter(|p| p.certified)
        .map(|p| p.t_star)
        .collect())
}

fn has_certified(curve: &Curve) -> bool {
    certified(curve).map_or(false, |v| !v.is_empty())
}

/// `n` parameters per causal arc, kept off lightlike ends and domain ends.
fn arc_samples(curve: &Curve, n: usize) -> Result<Vec<(f64, CausalType)>> {
    let pts = find_lightlike_points(curve, curve.tol().zero)?;
    let arcs = split_arcs(curve, &pts)?;
    let (dlo, dhi) = (curve.domain.lo, curve.domain.hi);
    let mut out = Vec::new();
    for arc in arcs {
        let w = arc.hi - arc.lo;
        let lo = arc.lo + if arc.lo > dlo { 0.1 } else { 0.02 } * w;
        let hi = arc.hi - if arc.hi < dhi { 0.1 } else { 0.02 } * w;
        for i in 0..n {
            out.push((lo + (hi - lo) * (i as f64 + 0.5) / n as f64, arc.kind));
        }
    }
    Ok(out)
}

fn defining(curve: &Curve, t: f64, v: &MVector) -> Result<f64> {
    Ok(dist_jet(curve, t, v)?.residual(2))
}

/// Errors that only mean "no sample here" for grid sweeps.
fn skippable(e: &FocalError) -> bool {
    matches!(
        e,
        FocalError::OutOfRange(_) | FocalError::Conditioning { .. } | FocalError::Degenerate { .. }
    )
}

macro_rules! try_sample {
    ($e:expr) => {
        match $e {
            Ok(s) => s,
            Err(e) if skippable(&e) => continue,
            Err(e) => return Err(e),
        }
    };
}

/// `±(0.1 .. 2.0)`: μ offsets from the cuspidal value.
fn cusp_offsets() -> Vec<f64> {
    (0..10)
        .flat_map(|j| {
            let o = 0.1 + 1.9 * j as f64 / 9.0;
            [-o, o]
        })
        .collect()
}

impl VerifySuite for LightlikeSuite {
    fn name(&self) -> &'static str {
        "prop2_1"
    }
    fn summary(&self) -> &'static str {
        "lightlike points: zeros of <γ',γ'>, transversality, arc alternation, grid stability"
    }
    fn applies_to(&self, _: &Curve) -> bool {
        true
    }
    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>> {
        let tol = curve.tol().zero;
        let pts = find_lightlike_points(curve, tol)?;
        let mut out = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            let d1 = curve.derivative(p.t_star, 1)?;
            let q = speed_sq(curve, p.t_star)?;
            out.push(Assertion::new(
                format!("lightlike[{i}].speed_sq"),
                q.abs() / d1.euclid_dot(&d1).max(1.0),
                tol,
            ));
            let om = omega_check(curve, p.t_star, tol)?;
            let d2 = curve.derivative(p.t_star, 2)?;
            let gate = tol * (d1.euclid_norm() * d2.euclid_norm()).max(1.0);
            out.push(Assertion::new(
                format!("lightlike[{i}].omega_margin"),
                gate / om.value.abs(),
                1.0,
            ));
            out.push(Assertion::new(
                format!("lightlike[{i}].omega_consistency"),
                (om.value - 0.5 * p.speed_derivative).abs() / om.value.abs().max(1.0),
                1e-9,
            ));
        }
        let arcs = split_arcs(curve, &pts)?;
        let repeats = arcs.windows(2).filter(|w| w[0].kind == w[1].kind).count();
        out.push(Assertion::count("arcs.alternate", repeats));
        let fine = find_lightlike_points_with(curve, tol, 2 * SCAN_POINTS)?;
        let drift = if fine.len() == pts.len() {
            pts.iter()
                .zip(&fine)
                .map(|(a, b)| (a.t_star - b.t_star).abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        out.push(Assertion::new("grid_doubling.drift", drift, 1e-9 * curve.domain.width()));
        Ok(out)
    }
}

impl VerifySuite for SignatureSuite {
    fn name(&self) -> &'static str {
        "thm3_4"
    }
    fn summary(&self) -> &'static str {
        "R31 focal surface: signature off the cuspidal curve, cuspidal points, chart agreement"
    }
    fn applies_to(&self, curve: &Curve) -> bool {
        curve.space == Space::R31
    }
    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>> {
        let mut out = Vec::new();
        let (mut mismatched, mut cells) = (0usize, 0usize);
        let (mut worst_def, mut cusp_low, mut cusps) = (0.0f64, 0usize, 0usize);
        for (t, kind) in arc_samples(curve, 20)? {
            let expect = match kind {
                CausalType::Timelike => MetricClass::Riemannian,
                _ => MetricClass::Lorentzian,
            };
            let mu_c = match cuspidal_curve(curve, t) {
                Ok(c) => {
                    cusps += 1;
                    if !classify(curve, t, &c.point, curve.tol().zero)?.at_least(3) {
                        cusp_low += 1;
                    }
                    c.mu
                }
                Err(e) if skippable(&e) => 0.0,
                Err(e) => return Err(e),
            };
            for off in cusp_offsets() {
                let s = try_sample!(focal_surface(curve, t, mu_c + off));
                cells += 1;
                if s.metric.class != expect {
                    mismatched += 1;
                }
                worst_def = worst_def.max(defining(curve, t, &s.point)?);
            }
        }
        out.push(Assertion::count("signature.mismatched_cells", mismatched));
        out.push(Assertion::flag("signature.cells_sampled", cells > 0));
        out.push(Assertion::new("defining_property", worst_def, DEFINING_TOL));
        out.push(Assertion::count("cuspidal.below_a3", cusp_low));
        out.push(Assertion::flag("cuspidal.sampled", cusps > 0 || cells > 0));
        for (i, t0) in certified(curve)?.into_iter().enumerate() {
            out.push(chart_agreement(curve, t0, i)?);
        }
        Ok(out)
    }
}

/// Lightlike-chart samples near `t0` lie on the Frenet normal line at the
/// same parameter.
fn chart_agreement(curve: &Curve, t0: f64, i: usize) -> Result<Assertion> {
    let w = curve.domain.width();
    let mut worst = 0.0f64;
    let mut low = false;
    for side in [-1.0, 1.0] {
        for k in 1..=4 {
            let t = t0 + side * 0.02 * w * k as f64;
            if !curve.domain.contains(t) {
                continue;
            }
            let fr = match R31Series::at(curve, t, 3) {
                Ok(fr) => fr.frame(),
                Err(e) if skippable(&e) => continue,
                Err(e) => return Err(e),
            };
            let base = focal_surface(curve, t, 0.0)?.point;
            for mu in [-1.0, -0.3, 0.4, 1.2] {
                let s = bif_lightlike_chart(curve, t, mu)?;
                low |= !s.sing.at_least(2);
                let d = s.point - base;
                let along = d.euclid_dot(&fr.b) / fr.b.euclid_dot(&fr.b);
                let off = (d - fr.b.scale(along)).euclid_norm();
                worst = worst.max(off / base.euclid_norm().max(1.0));
            }
        }
    }
    Ok(Assertion::new(
        format!("lightlike[{i}].chart_agreement"),
        if low { f64::INFINITY } else { worst },
        1e-6,
    ))
}

impl VerifySuite for Mu0Suite {
    fn name(&self) -> &'static str {
        "prop4_1"
    }
    fn summary(&self) -> &'static str {
        "μ₀ at lightlike points: parallel partials, A≥3 there, A2 away from it"
    }
    fn applies_to(&self, curve: &Curve) -> bool {
        curve.space == Space::R31 && has_certified(curve)
    }
    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>> {
        let tol = curve.tol().zero;
        let mut out = Vec::new();
        for (i, t0) in certified(curve)?.into_iter().enumerate() {
            let m0 = mu0(curve, t0)?;
            let s = bif_lightlike_chart(curve, t0, m0)?;
            out.push(Assertion::new(
                format!("lightlike[{i}].mu0.rank_deficient"),
                rank_residual(&s.partials[0], &s.partials[1]),
                RANK_SIN,
            ));
            out.push(Assertion::flag(
                format!("lightlike[{i}].mu0.undefined_plane"),
                s.metric.class == MetricClass::Undefined,
            ));
            let j = dist_jet(curve, t0, &s.point)?;
            out.push(Assertion::new(
                format!("lightlike[{i}].mu0.f3"),
                j.f[3].abs() / j.scale,
                DEFINING_TOL,
            ));
            out.push(Assertion::flag(
                format!("lightlike[{i}].mu0.at_least_a3"),
                s.sing.at_least(3),
            ));
            let away = if (1.0 - m0).abs() > 0.1 { 1.0 } else { -1.0 };
            let a = bif_lightlike_chart(curve, t0, away)?;
            out.push(Assertion::flag(
                format!("lightlike[{i}].mu{away}.is_a2"),
                classify(curve, t0, &a.point, tol)? == SingClass::A2,
            ));
        }
        Ok(out)
    }
}

impl VerifySuite for LdSuite {
    fn name(&self) -> &'static str {
        "thm4_3"
    }
    fn summary(&self) -> &'static str {
        "focal surface through a lightlike point: passes through γ, rank 2 but degenerate, LD line"
    }
    fn applies_to(&self, curve: &Curve) -> bool {
        curve.space == Space::R31 && has_certified(curve)
    }
    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>> {
        let mut out = Vec::new();
        for (i, t0) in certified(curve)?.into_iter().enumerate() {
            let p = format!("lightlike[{i}]");
            let gamma = curve.point(t0)?;
            let s = bif_lightlike_chart(curve, t0, 0.0)?;
            out.push(Assertion::new(
                format!("{p}.through_curve"),
                (s.point - gamma).max_abs() / gamma.max_abs().max(1.0),
                1e-12,
            ));
            let sigma = rank_residual(&s.partials[0], &s.partials[1]);
            out.push(Assertion::new(format!("{p}.rank2"), RANK_SIN / sigma, 1.0));
            out.push(Assertion::new(
                format!("{p}.det_gram"),
                s.metric.det.abs() / s.metric.scale,
                curve.tol().metric,
            ));
            let d1 = curve.derivative(t0, 1)?;
            out.push(Assertion::new(
                format!("{p}.kernel_along_tangent"),
                s.metric.kernel.map_or(f64::INFINITY, |k| parallel_residual(&k, &d1)),
                1e-8,
            ));
            let m0 = mu0(curve, t0)?;
            let r = 0.9 * m0.abs();
            let ld = ld_extract(curve, t0, (-r, r), 91)?;
            out.push(Assertion::count(format!("{p}.ld.non_degenerate"), ld.rejected.len()));
            out.push(Assertion::flag(format!("{p}.ld.nonempty"), !ld.samples.is_empty()));
            out.push(Assertion::new(format!("{p}.ld.line_residual"), ld.line_residual, 1e-9));
        }
        Ok(out)
    }
}

impl VerifySuite for S21Suite {
    fn name(&self) -> &'static str {
        "s21"
    }
    fn summary(&self) -> &'static str {
        "S²₁ spherical focal curve: unit norm, branch symmetry, speed formula, lightlike chart"
    }
    fn applies_to(&self, curve: &Curve) -> bool {
        curve.space == Space::S21
    }
    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>> {
        let mut out = Vec::new();
        let (mut sphere, mut def, mut sym) = (0.0f64, 0.0f64, 0.0f64);
        let (mut speed_rel, mut wrong_sig, mut used) = (0.0f64, 0usize, 0usize);
        for (t, kind) in arc_samples(curve, 40)? {
            let p = try_sample!(spherical_focal_curve(curve, t, Branch::Plus));
            let m = spherical_focal_curve(curve, t, Branch::Minus)?;
            used += 1;
            sphere = sphere.max(p.sphere_residual).max(m.sphere_residual);
            def = def.max(defining(curve, t, &p.point)?).max(defining(curve, t, &m.point)?);
            sym = sym.max((p.point + m.point).max_abs());
            let (kg, kgp) = geodesic_curvature_rate(curve, t)?;
            let v = p.tangent.expect("focal curve tangent");
            let vv = v.dot(&v);
            if kgp.abs() <= 1e-6 * kg.abs().max(1.0) {
                continue;
            }
            match kind {
                CausalType::Spacelike if kg.abs() > 1.0 => {
                    let closed = -kgp * kgp / (kg * kg - 1.0).powi(2);
                    speed_rel = speed_rel.max((vv - closed).abs() / closed.abs());
                }
                CausalType::Timelike if vv <= 0.0 => wrong_sig += 1,
                _ => {}
            }
        }
        out.push(Assertion::flag("frenet.sampled", used > 0));
        out.push(Assertion::new("frenet.sphere_residual", sphere, 1e-10));
        out.push(Assertion::new("frenet.defining_property", def, DEFINING_TOL));
        out.push(Assertion::new("frenet.branch_symmetry", sym, 0.0));
        out.push(Assertion::new("frenet.speed_closed_form", speed_rel, 1e-6));
        out.push(Assertion::count("frenet.timelike_arc_signature", wrong_sig));

        let pts = find_lightlike_points(curve, curve.tol().zero)?;
        let arcs = split_arcs(curve, &pts)?;
        let mut stationary = 0.0f64;
        for arc in &arcs {
            let w = arc.hi - arc.lo;
            let (lo, hi) = (arc.lo + 0.1 * w, arc.hi - 0.1 * w);
            let roots = match spherical_singular_points(curve, lo, hi) {
                Ok(SphericalSingularities::Isolated(r)) => r,
                Ok(SphericalSingularities::ConstantCurvature { .. }) => continue,
                Err(e) if skippable(&e) => continue,
                Err(e) => return Err(e),
            };
            for t in roots {
                let Ok(s) = spherical_focal_curve(curve, t, Branch::Plus) else { continue };
                let (kg, _) = geodesic_curvature_rate(curve, t)?;
                stationary = stationary.max(s.tangent.unwrap().max_abs() / kg.abs().max(1.0));
            }
        }
        out.push(Assertion::new("singular_points.stationary", stationary, DEFINING_TOL));

        for (i, t0) in certified(curve)?.into_iter().enumerate() {
            let p = format!("lightlike[{i}]");
            let [a, b] = spherical_bif_lightlike(curve, t0)?;
            let gamma = curve.point(t0)?;
            out.push(Assertion::new(format!("{p}.alpha_is_gamma"), (a.point - gamma).max_abs(), 1e-10));
            out.push(Assertion::new(format!("{p}.branch_symmetry"), (a.point + b.point).max_abs(), 0.0));
            let (mut sph, mut dp, mut agree) = (0.0f64, 0.0f64, 0.0f64);
            let w = curve.domain.width();
            for k in -20i32..=20 {
                let t = t0 + 0.005 * w * k as f64;
                if !curve.domain.contains(t) {
                    continue;
                }
                let [a, _] = try_sample!(spherical_bif_lightlike(curve, t));
                sph = sph.max(a.sphere_residual);
                dp = dp.max(defining(curve, t, &a.point)?);
                if k.abs() >= 4 {
                    let f = try_sample!(spherical_focal_curve(curve, t, Branch::Plus));
                    let d = (a.point - f.point).max_abs().min((a.point + f.point).max_abs());
                    agree = agree.max(d);
                }
            }
                out.push(Assertion::new(format!("{p}.window.sphere_residual"), sph, 1e-10));
            out.push(Assertion::new(format!("{p}.window.defining_property"), dp, DEFINING_TOL));
            out.push(Assertion::new(format!("{p}.window.chart_agreement"), agree, 1e-6));
        }
        Ok(out)
    }
}

impl VerifySuite for S31Suite {
    fn name(&self) -> &'static str {
        "s31"
    }
    fn summary(&self) -> &'static str {
        "S³₁ spherical focal surface: unit norm, signature, cuspidal points, β/λ system, LD curves"
    }
    fn applies_to(&self, curve: &Curve) -> bool {
        curve.space == Space::S31
    }
    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>> {
        let mut out = Vec::new();
        let (mut sphere, mut def, mut mismatched) = (0.0f64, 0.0f64, 0usize);
        let mut cusp_low = 0usize;
        let mus: Vec<f64> = (0..21).map(|i| -2.0 + 0.2 * i as f64).collect();
        for (t, _) in arc_samples(curve, 10)? {
            let fr = try_sample!(frame_s31(curve, t));
            let expect = if fr.is_spacelike() {
                MetricClass::Lorentzian
            } else {
                MetricClass::Riemannian
            };
            for b in Branch::BOTH {
                let cusp = if fr.is_spacelike() { g_cuspidal(curve, t, b) } else { h_cuspidal(curve, t, b) };
                let mu_c = match cusp {
                    Ok(c) => {
                        cusp_low += usize::from(!c.sing.at_least(3));
                        sphere = sphere.max(c.sphere_residual);
                        Some(c.chart.mu())
                    }
                    Err(e) if skippable(&e) => None,
                    Err(e) => return Err(e),
                };
                for &mu in &mus {
                    if mu_c.map_or(false, |m| (mu - m).abs() < 0.05) {
                        continue;
                    }
                    let s = try_sample!(spherical_focal_surface(curve, t, mu, b));
                    sphere = sphere.max(s.sphere_residual);
                    def = def.max(defining(curve, t, &s.point)?);
                    match s.metric_class() {
                        Some(MetricClass::Undefined) | None => {}
                        Some(c) => mismatched += usize::from(c != expect),
                    }
                }
            }
        }
        out.push(Assertion::new("frenet.sphere_residual", sphere, SPHERE_TOL));
        out.push(Assertion::new("frenet.defining_property", def, DEFINING_TOL));
        out.push(Assertion::count("frenet.signature_mismatched_cells", mismatched));
        out.push(Assertion::count("cuspidal.below_a3", cusp_low));

        for (i, ts) in certified(curve)?.into_iter().enumerate() {
            let p = format!("lightlike[{i}]");
            let gamma = curve.point(ts)?;
            for (mu, tag) in [(1.0, "plus1"), (-1.0, "minus1")] {
                let (r, _) = beta_lambda(curve, ts, mu, Branch::Plus)?;
                out.push(Assertion::new(format!("{p}.R.{tag}"), r.r_value.abs() / r.r_scale, 1e-8));
            }
            let (r0, _) = beta_lambda(curve, ts, 0.0, Branch::Plus)?;
            out.push(Assertion::flag(format!("{p}.R.B_positive"), r0.b_coef > 0.0 && r0.a_coef < 0.0));
            for b in Branch::BOTH {
                let (r, s) = beta_lambda(curve, ts, 1.0, b)?;
                out.push(Assertion::new(format!("{p}.{b}.beta_at_1"), r.beta.abs(), 1e-9));
                out.push(Assertion::new(format!("{p}.{b}.lambda_at_1"), r.lambda.abs(), 1e-9));
                out.push(Assertion::new(format!("{p}.{b}.point_at_1"), (s.point - gamma).max_abs(), 1e-8));
            }
            let ld = s31_ld_extract(curve, ts, 99)?;
            let bad = ld
                .iter()
                .filter(|s| s.metric_class() != Some(MetricClass::Degenerate))
                .count();
            out.push(Assertion::count(format!("{p}.ld.non_degenerate"), bad));
            let (mut sph, mut dp, mut back) = (0.0f64, 0.0f64, 0.0f64);
            for s in &ld {
                sph = sph.max(s.sphere_residual);
                dp = dp.max(defining(curve, ts, &s.point)?);
                back = back.max(beta_lambda(curve, ts, s.chart.mu(), s.branch)?.0.defining_residual);
            }
            out.push(Assertion::new(format!("{p}.ld.sphere_residual"), sph, SPHERE_TOL));
            out.push(Assertion::new(format!("{p}.ld.defining_property"), dp, DEFINING_TOL));
            out.push(Assertion::new(format!("{p}.ld.back_substitution"), back, 1e-9));
        }
        Ok(out)
    }
}

impl VerifySuite for All {
    fn name(&self) -> &'static str {
        "all"
    }
    fn summary(&self) -> &'static str {
        "every suite that applies to the curve"
    }
    fn applies_to(&self, _: &Curve) -> bool {
        true
    }
    fn run(&self, curve: &Curve) -> Result<Vec<Assertion>> {
        let mut out = Vec::new();
        for s in SUITES.iter().filter(|s| s.name() != "all") {
            if !s.applies_to(curve) {
                continue;
            }
            for mut a in s.run(curve)? {
                a.name = format!("{}.{}", s.name(), a.name);
                out.push(a);
            }
        }
        Ok(out)
    }
}
