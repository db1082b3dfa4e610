/// Numerical gates shared across the analyses.
///
/// A quantity `q` counts as zero when `|q| <= tol * max(1, scale)`, where
/// `scale` is the natural magnitude of the terms that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative zero gate.
    pub zero: f64,
    /// Arc-length machinery is refused where `|γ'| < guard * median |γ'|`.
    pub guard: f64,
    /// Gate on the Gram determinant when classifying tangent planes.
    pub metric: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: 1e-10,
            guard: 1e-4,
            metric: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn with_zero(mut self, zero: f64) -> Self {
        self.zero = zero;
        self
    }

    pub fn with_guard(mut self, guard: f64) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_metric(mut self, metric: f64) -> Self {
        self.metric = metric;
        self
    }
}

/// `|q| <= tol * max(1, scale)`.
pub fn is_zero(q: f64, tol: f64, scale: f64) -> bool {
    q.abs() <= tol * scale.max(1.0)
}
