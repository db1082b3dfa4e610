//! The distance-squared family `f_v(t) = <γ(t)-v, γ(t)-v>` and its A_k
//! classification in the raw curve parameter.

use std::fmt;

use crate::curve_dsl::CurveDef;
use crate::error::{FocalError, Result};
use crate::minkowski::MVector;
use crate::taylor::{factorial, Taylor};
use crate::tolerance::is_zero;

/// Highest derivative of `f_v` inspected by [`classify`].
pub const CLASSIFY_ORDER: usize = 5;

/// Derivatives `f_v^(0..=5)` at one parameter with their magnitude reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceJet {
    pub f: [f64; CLASSIFY_ORDER + 1],
    /// `max(1, ‖γ-v‖², ‖γ'‖²)` in the Euclidean norm.
    pub scale: f64,
}

impl DistanceJet {
    /// Largest `|f_p| / scale` over `p` in `1..=upto`.
    pub fn residual(&self, upto: usize) -> f64 {
        self.f[1..=upto.min(CLASSIFY_ORDER)]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
            / self.scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingClass {
    Regular,
    A1,
    A2,
    A3,
    A4,
    /// At least `A_k`; the derivative budget ran out.
    AGe(usize),
    DegenerateConstant,
}

impl SingClass {
    /// `k` of `A_k`, the lower bound for `A_ge(k)`, `0` for regular points.
    pub fn rank(self) -> usize {
        match self {
            SingClass::Regular => 0,
            SingClass::A1 => 1,
            SingClass::A2 => 2,
            SingClass::A3 => 3,
            SingClass::A4 => 4,
            SingClass::AGe(k) => k,
            SingClass::DegenerateConstant => usize::MAX,
        }
    }

    /// Whether the class is `A_k` with `k >= min` (constant `f` included).
    pub fn at_least(self, min: usize) -> bool {
        self.rank() >= min
    }

    fn from_first_nonzero(p: usize) -> SingClass {
        match p {
            1 => SingClass::Regular,
            2 => SingClass::A1,
            3 => SingClass::A2,
            4 => SingClass::A3,
            5 => SingClass::A4,
            _ => SingClass::AGe(p - 1),
        }
    }
}

impl fmt::Display for SingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingClass::Regular => f.write_str("Regular"),
            SingClass::A1 => f.write_str("A1"),
            SingClass::A2 => f.write_str("A2"),
            SingClass::A3 => f.write_str("A3"),
            SingClass::A4 => f.write_str("A4"),
            SingClass::AGe(k) => write!(f, "A_ge({k})"),
            SingClass::DegenerateConstant => f.write_str("DegenerateConstant"),
        }
    }
}

/// Local model of the bifurcation set at an `A_k` point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalModel {
    Plane,
    CuspidalEdge,
    Swallowtail,
}

impl LocalModel {
    pub fn label(self) -> &'static str {
        match self {
            LocalModel::Plane => "plane",
            LocalModel::CuspidalEdge => "cuspidal edge",
            LocalModel::Swallowtail => "swallowtail",
        }
    }
}

impl fmt::Display for LocalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactSphereType {
    /// `<γ-v,γ-v> > 0`.
    DeSitterLike,
    /// `<γ-v,γ-v> < 0`.
    HyperbolicLike,
    LightconeLike,
}

impl fmt::Display for ContactSphereType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContactSphereType::DeSitterLike => "DeSitterLike",
            ContactSphereType::HyperbolicLike => "HyperbolicLike",
            ContactSphereType::LightconeLike => "LightconeLike",
        })
    }
}

fn check_dims(curve: &CurveDef, v: &MVector) -> Result<()> {
    if v.dim() == curve.dim() {
        Ok(())
    } else {
        Err(FocalError::DimensionMismatch(v.dim(), curve.dim()))
    }
}

/// Derivatives of `f_v` to order 5 by series multiplication of curve jets.
pub fn dist_jet(curve: &CurveDef, t: f64, v: &MVector) -> Result<DistanceJet> {
    check_dims(curve, v)?;
    let g = curve.series(t, CLASSIFY_ORDER)?;
    let d = g - v.lift();
    let f: Taylor = d.dot(&d);
    let mut out = [0.0; CLASSIFY_ORDER + 1];
    for (p, slot) in out.iter_mut().enumerate() {
        *slot = f.derivative(p);
    }
    let (d0, g1) = (d.value(), g.derivative(1));
    let scale = 1f64.max(d0.euclid_dot(&d0)).max(g1.euclid_dot(&g1));
    Ok(DistanceJet { f: out, scale })
}

/// `A_k` type of `f_v` at `t`: the first `p` with `|f_p| > tol·scale·p!`
/// decides (`p = 1` regular, otherwise `A_{p-1}`).
pub fn classify(curve: &CurveDef, t: f64, v: &MVector, tol: f64) -> Result<SingClass> {
    let jet = dist_jet(curve, t, v)?;
    Ok(classify_jet(curve, t, v, &jet, tol))
}

pub(crate) fn classify_jet(
    curve: &CurveDef,
    t: f64,
    v: &MVector,
    jet: &DistanceJet,
    tol: f64,
) -> SingClass {
    for p in 1..=CLASSIFY_ORDER {
        if jet.f[p].abs() > tol * jet.scale * factorial(p) {
            return SingClass::from_first_nonzero(p);
        }
    }
    if is_flat_nearby(curve, t, v, jet, tol) {
        SingClass::DegenerateConstant
    } else {
        SingClass::AGe(CLASSIFY_ORDER)
    }
}

fn is_flat_nearby(curve: &CurveDef, t: f64, v: &MVector, jet: &DistanceJet, tol: f64) -> bool {
    let step = 0.05 * curve.domain.width();
    let mut tested = 0;
    for j in [-4i32, -3, -2, -1, 1, 2, 3, 4] {
        let u = t + step * j as f64;
        if !curve.domain.contains(u) {
            continue;
        }
        let Ok(p) = curve.point(u) else { continue };
        let d = p - *v;
        if !is_zero(d.dot(&d) - jet.f[0], tol, jet.scale) {
            return false;
        }
        tested += 1;
    }
    tested > 0
}

/// Label of the bifurcation-set germ at `A2`, `A3`, `A4` points.
pub fn local_model(c: SingClass) -> Result<LocalModel> {
    match c {
        SingClass::A2 => Ok(LocalModel::Plane),
        SingClass::A3 => Ok(LocalModel::CuspidalEdge),
        SingClass::A4 => Ok(LocalModel::Swallowtail),
        other => Err(FocalError::NotApplicable(format!(
            "no local model for class {other}"
        ))),
    }
}

/// Causal type of the pseudo-sphere through `γ(t)` centred at `v`.
pub fn contact_sphere_type(
    curve: &CurveDef,
    t: f64,
    v: &MVector,
    tol: f64,
) -> Result<ContactSphereType> {
    check_dims(curve, v)?;
    let p = curve.point(t)?;
    let d = p - *v;
    let e2 = d.euclid_dot(&d);
    if e2 <= (tol * p.euclid_norm().max(1.0)).powi(2) {
        return Err(FocalError::degenerate(t, "contact undefined: v equals γ(t)"));
    }
    let q = d.dot(&d);
    Ok(if is_zero(q, tol, e2) {
        ContactSphereType::LightconeLike
    } else if q > 0.0 {
        ContactSphereType::DeSitterLike
    } else {
        ContactSphereType::HyperbolicLike
    })
}

/// Derivatives of the height function `H(t) = <γ(t), v>` to order 5.
pub fn height_jet(curve: &CurveDef, t: f64, v: &MVector) -> Result<[f64; CLASSIFY_ORDER + 1]> {
    check_dims(curve, v)?;
    let h = curve.series(t, CLASSIFY_ORDER)?.dot(&v.lift());
    let mut out = [0.0; CLASSIFY_ORDER + 1];
    for (p, slot) in out.iter_mut().enumerate() {
        *slot = h.derivative(p);
    }
    Ok(out)
}

/// On a de Sitter curve `f_v^(p) = -2 H^(p)` for `p >= 1`; returns the
/// largest scaled disagreement.
pub fn height_disagreement(curve: &CurveDef, t: f64, v: &MVector) -> Result<f64> {
    let jet = dist_jet(curve, t, v)?;
    let h = height_jet(curve, t, v)?;
    Ok((1..=CLASSIFY_ORDER)
        .map(|p| (jet.f[p] + 2.0 * h[p]).abs() / (jet.scale * factorial(p)))
        .fold(0.0, f64::max))
}
