//! Induced metric on a surface tangent plane from two chart partials.

use std::fmt;

use crate::minkowski::MVector;

/// Partials whose Euclidean sine of angle is below this are treated as
/// parallel (rank < 2).
pub const RANK_SIN: f64 = 1e-6;

/// A partial shorter than this fraction of the other one counts as zero.
pub const NULL_PARTIAL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricClass {
    Riemannian,
    Lorentzian,
    Degenerate,
    /// Chart partials are parallel; there is no tangent plane.
    Undefined,
}

impl MetricClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MetricClass::Riemannian => "Riemannian",
            MetricClass::Lorentzian => "Lorentzian",
            MetricClass::Degenerate => "Degenerate",
            MetricClass::Undefined => "Undefined",
        }
    }
}

impl fmt::Display for MetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentMetric {
    /// `[<P1,P1>, <P1,P2>, <P2,P2>]`.
    pub gram: [f64; 3],
    pub det: f64,
    /// `max(1, ‖P1‖²‖P2‖²)`, Euclidean.
    pub scale: f64,
    pub class: MetricClass,
    /// Lightlike tangent direction, normalized so its largest-magnitude
    /// component is `1`; only for `Degenerate`.
    pub kernel: Option<MVector>,
}

/// Sine of the Euclidean angle between `a` and `b` (`0` if either is zero).
pub fn parallel_residual(a: &MVector, b: &MVector) -> f64 {
    let (aa, bb, ab) = (a.euclid_dot(a), b.euclid_dot(b), a.euclid_dot(b));
    if aa == 0.0 || bb == 0.0 {
        return 0.0;
    }
    ((aa * bb - ab * ab).max(0.0) / (aa * bb)).sqrt()
}

/// Rank defect of `[a b]`: the sine of their angle, or `0` when one of them
/// is negligible next to the other.
pub fn rank_residual(a: &MVector, b: &MVector) -> f64 {
    let (na, nb) = (a.euclid_norm(), b.euclid_norm());
    if na.min(nb) <= NULL_PARTIAL * na.max(nb) {
        return 0.0;
    }
    parallel_residual(a, b)
}

/// Classify the plane spanned by `p1`, `p2` under the Minkowski product.
pub fn tangent_metric(p1: &MVector, p2: &MVector, tol: f64) -> TangentMetric {
    let gram = [p1.dot(p1), p1.dot(p2), p2.dot(p2)];
    let det = gram[0] * gram[2] - gram[1] * gram[1];
    let scale = (p1.euclid_dot(p1) * p2.euclid_dot(p2)).max(1.0);
    let mut out = TangentMetric {
        gram,
        det,
        scale,
        class: MetricClass::Undefined,
        kernel: None,
    };
    if rank_residual(p1, p2) <= RANK_SIN {
        return out;
    }
    out.class = if det.abs() <= tol * scale {
        MetricClass::Degenerate
    } else if det > 0.0 {
        MetricClass::Riemannian
    } else {
        MetricClass::Lorentzian
    };
    if out.class == MetricClass::Degenerate {
        out.kernel = Some(kernel_direction(p1, p2, &gram));
    }
    out
}

fn kernel_direction(p1: &MVector, p2: &MVector, g: &[f64; 3]) -> MVector {
    // Both rows of the singular gram give a null vector; take the better one.
    let (a, b, c) = (g[0], g[1], g[2]);
    let (x, y) = if a.abs() + b.abs() >= b.abs() + c.abs() {
        (-b, a)
    } else {
        (c, -b)
    };
    let w = p1.scale(x) + p2.scale(y);
    let pivot = w
        .as_slice()
        .iter()
        .copied()
        .fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
    if pivot == 0.0 {
        w
    } else {
        w.scale(1.0 / pivot)
    }
}
