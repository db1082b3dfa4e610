//! Frenet frames from arc-length jets.
//!
//! Every frame is assembled from the Taylor series of the arc-length
//! reparametrized curve, so each field is itself a series in `s` and its
//! derivatives are exact. The pointwise frames are the constant terms.

use crate::causal::{arclength_series, sign};
use crate::curve::Curve;
use crate::curve_dsl::Space;
use crate::error::{FocalError, Result};
use crate::minkowski::{det3, MVector};
use crate::taylor::{Scalar, Taylor};
use crate::tolerance::is_zero;

/// Relative mismatch between the two torsion routes that raises a flag.
pub const TORSION_MISMATCH: f64 = 1e-6;

fn require_space(curve: &Curve, space: Space, what: &str) -> Result<()> {
    if curve.space == space {
        Ok(())
    } else {
        Err(FocalError::NotApplicable(format!(
            "{what} needs a curve in {space}, got {}",
            curve.space
        )))
    }
}

/// Unit vector along `v`, failing if `v` is null or lightlike.
fn unit<S: Scalar>(v: &MVector<S>, t: f64, tol: f64, what: &str) -> Result<(MVector<S>, S, f64)> {
    let v0 = v.value();
    let q = v0.dot(&v0);
    if is_zero(q, tol, v0.euclid_dot(&v0)) {
        return Err(FocalError::degenerate(
            t,
            format!("{what} is null or lightlike (<v,v> = {q:e})"),
        ));
    }
    let len = v.dot(v).abs().sqrt();
    Ok((v.scale(S::cst(1.0) / len), len, sign(q)))
}

/// Frenet data of a non-lightlike curve in R³₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameR31 {
    pub t: MVector,
    pub n: MVector,
    pub b: MVector,
    pub k: f64,
    pub tau: f64,
    /// `sign<t,t>`.
    pub eps: f64,
    /// `sign<n,n>`.
    pub delta: f64,
    /// Torsion from `δ<b',n>` with `b'` read off the jet.
    pub tau_projected: f64,
    /// The two torsion routes disagree beyond [`TORSION_MISMATCH`].
    pub tau_mismatch: bool,
}

/// Frame fields as series in arc length.
#[derive(Debug, Clone)]
pub struct R31Series {
    pub gamma: MVector<Taylor>,
    pub t: MVector<Taylor>,
    pub n: MVector<Taylor>,
    pub b: MVector<Taylor>,
    pub k: Taylor,
    pub tau: Taylor,
    pub eps: f64,
    pub delta: f64,
}

impl R31Series {
    /// Build with the arc-length position series truncated at `order >= 3`.
    pub fn at(curve: &Curve, t: f64, order: usize) -> Result<Self> {
        if curve.dim() != 3 {
            return Err(FocalError::NotApplicable(
                "an R31 frame needs a 3-component curve".into(),
            ));
        }
        let tol = curve.tol().zero;
        let gamma = arclength_series(curve, t, order.max(3))?;
        let g1 = gamma.differentiate();
        let g2 = g1.differentiate();
        let g3 = g2.differentiate();
        let eps = sign(g1.value().dot(&g1.value()));
        let (n, k, delta) = unit(&g2, t, tol, "γ''(s)")
            .map_err(|_| FocalError::degenerate(t, "curvature vanishes or the normal is lightlike"))?;
        let b = g1.wedge(&n);
        let tau = -(det3(&g1, &g2, &g3) / (k * k)) * delta;
        Ok(R31Series {
            gamma,
            t: g1,
            n,
            b,
            k,
            tau,
            eps,
            delta,
        })
    }

    pub fn frame(&self) -> FrameR31 {
        let n = self.n.value();
        let tau = self.tau.value();
        let tau_projected = if self.b.order() >= 1 {
            self.delta * self.b.derivative(1).dot(&n)
        } else {
            f64::NAN
        };
        FrameR31 {
            t: self.t.value(),
            n,
            b: self.b.value(),
            k: self.k.value(),
            tau,
            eps: self.eps,
            delta: self.delta,
            tau_projected,
            tau_mismatch: !((tau - tau_projected).abs() <= TORSION_MISMATCH * tau.abs().max(1.0)),
        }
    }
}

/// Frenet frame of a curve in R³₁ at parameter `t`.
pub fn frame_r31(curve: &Curve, t: f64) -> Result<FrameR31> {
    Ok(R31Series::at(curve, t, 4)?.frame())
}

/// Frenet data of a non-lightlike curve in S²₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameS21 {
    pub gamma: MVector,
    pub t: MVector,
    /// `γ ∧ t`.
    pub n: MVector,
    /// Geodesic curvature `<γ'',n>`.
    pub kg: f64,
    pub eps: f64,
    pub delta: f64,
}

#[derive(Debug, Clone)]
pub struct S21Series {
    pub gamma: MVector<Taylor>,
    pub t: MVector<Taylor>,
    pub n: MVector<Taylor>,
    pub kg: Taylor,
    pub eps: f64,
    pub delta: f64,
}

impl S21Series {
    pub fn at(curve: &Curve, t: f64, order: usize) -> Result<Self> {
        require_space(curve, Space::S21, "the de Sitter 2-space frame")?;
        let gamma = arclength_series(curve, t, order.max(2))?;
        let g1 = gamma.differentiate();
        let g2 = g1.differentiate();
        let n = gamma.wedge(&g1);
        let eps = sign(g1.value().dot(&g1.value()));
        let delta = sign(n.value().dot(&n.value()));
        let kg = g2.dot(&n);
        Ok(S21Series {
            gamma,
            t: g1,
            n,
            kg,
            eps,
            delta,
        })
    }

    pub fn frame(&self) -> FrameS21 {
        FrameS21 {
            gamma: self.gamma.value(),
            t: self.t.value(),
            n: self.n.value(),
            kg: self.kg.value(),
            eps: self.eps,
            delta: self.delta,
        }
    }
}

pub fn frame_s21(curve: &Curve, t: f64) -> Result<FrameS21> {
    Ok(S21Series::at(curve, t, 3)?.frame())
}

/// Curvature data of a curve in S³₁, by causal character.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum S31Variant {
    SpacelikeCurve { kg: f64, taug: f64, delta: f64 },
    TimelikeCurve { kh: f64, tauh: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameS31 {
    pub gamma: MVector,
    pub t: MVector,
    pub n: MVector,
    /// `γ ∧ t ∧ n`.
    pub e: MVector,
    pub variant: S31Variant,
}

impl FrameS31 {
    pub fn is_spacelike(&self) -> bool {
        matches!(self.variant, S31Variant::SpacelikeCurve { .. })
    }
}

/// S³₁ frame fields as series; `curvature`/`torsion` hold `k_g,τ_g` or `k_h,τ_h`.
#[derive(Debug, Clone)]
pub struct S31Series {
    pub gamma: MVector<Taylor>,
    pub t: MVector<Taylor>,
    pub n: MVector<Taylor>,
    pub e: MVector<Taylor>,
    pub curvature: Taylor,
    pub torsion: Taylor,
    pub spacelike: bool,
    /// `sign<n,n>`; always `+1` for timelike curves.
    pub delta: f64,
}

impl S31Series {
    pub fn at(curve: &Curve, t: f64, order: usize) -> Result<Self> {
        require_space(curve, Space::S31, "the de Sitter 3-space frame")?;
        let tol = curve.tol().zero;
        let gamma = arclength_series(curve, t, order.max(3))?;
        let g1 = gamma.differentiate();
        let g2 = g1.differentiate();
        let g3 = g2.differentiate();
        let spacelike = g1.value().dot(&g1.value()) > 0.0;
        let v = if spacelike { g2 + gamma } else { g2 - gamma };
        let what = if spacelike { "t' + γ (k_g = 0)" } else { "t' - γ (k_h = 0)" };
        let (n, curvature, delta) = unit(&v, t, tol, what)?;
        let e = MVector::wedge3(&gamma, &g1, &n);
        let det = det4_series(&gamma, &g1, &g2, &g3);
        let torsion = if spacelike {
            det / (curvature * curvature) * Taylor::constant(delta)
        } else {
            -(det / (curvature * curvature))
        };
        Ok(S31Series {
            gamma,
            t: g1,
            n,
            e,
            curvature,
            torsion,
            spacelike,
            delta: if spacelike { delta } else { 1.0 },
        })
    }

    pub fn frame(&self) -> FrameS31 {
        let (k, tau) = (self.curvature.value(), self.torsion.value());
        FrameS31 {
            gamma: self.gamma.value(),
            t: self.t.value(),
            n: self.n.value(),
            e: self.e.value(),
            variant: if self.spacelike {
                S31Variant::SpacelikeCurve {
                    kg: k,
                    taug: tau,
                    delta: self.delta,
                }
            } else {
                S31Variant::TimelikeCurve { kh: k, tauh: tau }
            },
        }
    }
}

fn det4_series(
    a: &MVector<Taylor>,
    b: &MVector<Taylor>,
    c: &MVector<Taylor>,
    d: &MVector<Taylor>,
) -> Taylor {
    crate::minkowski::det4(a, b, c, d).expect("4-vectors")
}

pub fn frame_s31(curve: &Curve, t: f64) -> Result<FrameS31> {
    Ok(S31Series::at(curve, t, 4)?.frame())
}
