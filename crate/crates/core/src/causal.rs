//! Causal character along a curve: lightlike points, Ω-membership, arc
//! splitting and arc-length jets.

use crate::curve::Curve;
use crate::curve_dsl::CurveDef;
use crate::error::{FocalError, Result};
use crate::minkowski::{CausalType, MVector};
use crate::taylor::{Scalar, Taylor, MAX_ORDER};
use crate::tolerance::is_zero;

/// Default scan density of [`find_lightlike_points`].
pub const SCAN_POINTS: usize = 4096;

const BISECTION_REL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightlikePoint {
    pub t_star: f64,
    /// `d/dt <γ',γ'>` at `t_star`.
    pub speed_derivative: f64,
    /// `<γ''(t_star), γ'(t_star)>`.
    pub omega_value: f64,
    /// A transverse zero whose Ω value is nonzero.
    pub certified: bool,
}

/// Open parameter interval of constant causal character.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalArc {
    pub lo: f64,
    pub hi: f64,
    pub kind: CausalType,
}

impl CausalArc {
    pub fn contains(&self, t: f64) -> bool {
        t > self.lo && t < self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaCheck {
    pub value: f64,
    pub in_omega: bool,
}

/// `<γ'(t), γ'(t)>`.
pub fn speed_sq(curve: &CurveDef, t: f64) -> Result<f64> {
    let d = curve.derivative(t, 1)?;
    Ok(d.dot(&d))
}

fn speed_sq_scaled(curve: &CurveDef, t: f64) -> Result<(f64, f64)> {
    let d = curve.derivative(t, 1)?;
    Ok((d.dot(&d), d.euclid_dot(&d)))
}

/// `<γ''(t0), γ'(t0)>` and whether it clears the scaled zero gate.
pub fn omega_check(curve: &CurveDef, t0: f64, tol: f64) -> Result<OmegaCheck> {
    let s = curve.series(t0, 2)?;
    let (d1, d2) = (s.derivative(1), s.derivative(2));
    let value = d2.dot(&d1);
    let scale = d1.euclid_norm() * d2.euclid_norm();
    Ok(OmegaCheck {
        value,
        in_omega: !is_zero(value, tol, scale),
    })
}

/// Scan with the default density.
pub fn find_lightlike_points(curve: &CurveDef, tol: f64) -> Result<Vec<LightlikePoint>> {
    find_lightlike_points_with(curve, tol, SCAN_POINTS)
}

/// Bracket sign changes of `<γ',γ'>` on a uniform grid and bisect each one;
/// local minima of `|<γ',γ'>|` without a sign change that reach zero are
/// reported as uncertified tangential zeros.
pub fn find_lightlike_points_with(
    curve: &CurveDef,
    tol: f64,
    grid: usize,
) -> Result<Vec<LightlikePoint>> {
    let dom = curve.domain;
    let ts: Vec<f64> = dom.grid(grid.max(3)).collect();
    let qs = ts
        .iter()
        .map(|&t| speed_sq(curve, t))
        .collect::<Result<Vec<_>>>()?;
    let width_tol = BISECTION_REL * dom.width();

    let mut roots: Vec<(f64, bool)> = Vec::new();
    for i in 0..ts.len() {
        let q = qs[i];
        if q == 0.0 {
            let transverse = i > 0 && i + 1 < ts.len() && qs[i - 1] * qs[i + 1] < 0.0;
            roots.push((ts[i], transverse));
            continue;
        }
        if i + 1 < ts.len() && q * qs[i + 1] < 0.0 {
            roots.push((bisect(curve, ts[i], ts[i + 1], q, width_tol)?, true));
        }
    }
    for i in 1..ts.len() - 1 {
        let (a, b, c) = (qs[i - 1].abs(), qs[i].abs(), qs[i + 1].abs());
        let no_change = qs[i - 1] * qs[i] > 0.0 && qs[i] * qs[i + 1] > 0.0;
        if no_change && b <= a && b < c {
            let t = golden_min(curve, ts[i - 1], ts[i + 1])?;
            let (q, scale) = speed_sq_scaled(curve, t)?;
            if is_zero(q, tol, scale) {
                roots.push((t, false));
            }
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));

    let step = dom.width() / (ts.len() - 1) as f64;
    let mut out: Vec<LightlikePoint> = Vec::new();
    for (t, transverse) in roots {
        if let Some(last) = out.last_mut() {
            let gap = t - last.t_star;
            let dup = gap <= 10.0 * width_tol || (!(transverse && last.certified) && gap <= step);
            if dup {
                // Keep the transverse representative.
                if transverse && !last.certified {
                    *last = make_point(curve, t, transverse, tol)?;
                }
                continue;
            }
        }
        out.push(make_point(curve, t, transverse, tol)?);
    }
    Ok(out)
}

fn make_point(curve: &CurveDef, t: f64, transverse: bool, tol: f64) -> Result<LightlikePoint> {
    let om = omega_check(curve, t, tol)?;
    Ok(LightlikePoint {
        t_star: t,
        speed_derivative: 2.0 * om.value,
        omega_value: om.value,
        certified: transverse && om.in_omega,
    })
}

fn bisect(curve: &CurveDef, mut a: f64, mut b: f64, mut qa: f64, width_tol: f64) -> Result<f64> {
    while b - a > width_tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let qm = speed_sq(curve, m)?;
        if qm == 0.0 {
            return Ok(m);
        }
        if qa * qm < 0.0 {
            b = m;
        } else {
            a = m;
            qa = qm;
        }
    }
    Ok(0.5 * (a + b))
}

fn golden_min(curve: &CurveDef, mut a: f64, mut b: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let f = |t: f64| speed_sq(curve, t).map(f64::abs);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Open arcs between consecutive lightlike points and the domain ends,
/// tagged by the sign of `<γ',γ'>` at their midpoints.
pub fn split_arcs(curve: &CurveDef, points: &[LightlikePoint]) -> Result<Vec<CausalArc>> {
    let dom = curve.domain;
    let mut cuts = vec![dom.lo];
    cuts.extend(
        points
            .iter()
            .map(|p| p.t_star)
            .filter(|&t| t > dom.lo && t < dom.hi),
    );
    cuts.push(dom.hi);
    let tol = crate::tolerance::Tolerances::default().zero;
    let mut arcs = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let (q, scale) = speed_sq_scaled(curve, mid)?;
        if is_zero(q, tol, scale) {
            return Err(FocalError::Refinement(format!(
                "arc ({lo}, {hi}) is lightlike at its midpoint {mid}"
            )));
        }
        let kind = if q > 0.0 {
            CausalType::Spacelike
        } else {
            CausalType::Timelike
        };
        arcs.push(CausalArc { lo, hi, kind });
    }
    Ok(arcs)
}

/// Position series in arc length `s` around `t` (so `s = 0` at `t`).
///
/// The series is `γ(h(s))` where `h` inverts `s(h) = ∫ ‖γ'(t+u)‖ du`.
pub fn arclength_series(curve: &Curve, t: f64, order: usize) -> Result<MVector<Taylor>> {
    if order == 0 || order > MAX_ORDER {
        return Err(FocalError::OutOfRange(format!(
            "arc-length order {order} must lie in 1..={MAX_ORDER}"
        )));
    }
    let g = curve.series(t, order)?;
    let d1 = g.differentiate();
    let speed = d1.value().norm();
    if !(speed >= curve.guard_threshold()) {
        return Err(FocalError::conditioning(
            t,
            format!(
                "|γ'| = {speed:e} is inside the lightlike guard band ({:e})",
                curve.guard_threshold()
            ),
        ));
    }
    let q = d1.dot(&d1);
    let ds = q.abs().sqrt();
    let h_of_s = ds
        .integrate(0.0)
        .revert()
        .ok_or_else(|| FocalError::conditioning(t, "arc length is not invertible"))?;
    let out = g.map(|c| c.compose(&h_of_s));
    if !out.is_finite() {
        return Err(FocalError::conditioning(t, "non-finite arc-length jet"));
    }
    Ok(out)
}

/// Plain `s`-derivatives of each component up to `order`.
pub fn arclength_jet(curve: &Curve, t: f64, order: usize) -> Result<Vec<Vec<f64>>> {
    let s = arclength_series(curve, t, order)?;
    Ok(s.as_slice().iter().map(|c| c.derivatives()).collect())
}

/// Sign of a nonzero value as `±1`.
pub(crate) fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}
