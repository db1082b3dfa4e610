//! Minkowski linear algebra with signature (−,+,+[,+]).
//!
//! Index 0 is the timelike slot. Every formula is generic over [`Scalar`] so
//! the same code runs on plain numbers and on Taylor jets.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{FocalError, Result};
use crate::taylor::{Scalar, Taylor};

/// A 3- or 4-vector of Minkowski space.
#[derive(Clone, Copy, PartialEq)]
pub struct MVector<S = f64> {
    c: [S; 4],
    dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalType {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalType {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalType::Spacelike => "spacelike",
            CausalType::Timelike => "timelike",
            CausalType::Lightlike => "lightlike",
        }
    }
}

impl fmt::Display for CausalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl<S: Scalar> MVector<S> {
    pub fn new3(x1: S, x2: S, x3: S) -> Self {
        MVector {
            c: [x1, x2, x3, S::zero()],
            dim: 3,
        }
    }

    pub fn new4(x1: S, x2: S, x3: S, x4: S) -> Self {
        MVector {
            c: [x1, x2, x3, x4],
            dim: 4,
        }
    }

    pub fn from_slice(xs: &[S]) -> Result<Self> {
        match xs {
            [a, b, c] => Ok(MVector::new3(*a, *b, *c)),
            [a, b, c, d] => Ok(MVector::new4(*a, *b, *c, *d)),
            _ => Err(FocalError::InvalidCurve(format!(
                "Minkowski vectors have 3 or 4 components, got {}",
                xs.len()
            ))),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 3 || dim == 4, "dimension must be 3 or 4");
        MVector {
            c: [S::zero(); 4],
            dim,
        }
    }

    /// Standard basis vector `e_{i+1}` (0-based `i`).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.c[i] = S::cst(1.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[S] {
        &self.c[..self.dim]
    }

    pub fn get(&self, i: usize) -> S {
        self.as_slice()[i]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> MVector<T> {
        let mut c = [T::zero(); 4];
        for (dst, src) in c.iter_mut().zip(self.as_slice()) {
            *dst = f(*src);
        }
        MVector { c, dim: self.dim }
    }

    /// Zeroth-order values.
    pub fn value(&self) -> MVector<f64> {
        self.map(|s| s.value())
    }

    pub fn scale(&self, k: S) -> Self {
        let mut out = *self;
        for x in &mut out.c[..self.dim] {
            *x = *x * k;
        }
        out
    }

    /// Pseudo-scalar product.
    ///
    /// # Panics
    /// If the dimensions differ; use [`mdot`] for a checked version.
    pub fn dot(&self, other: &Self) -> S {
        assert_eq!(self.dim, other.dim, "Minkowski dimension mismatch");
        let mut acc = -(self.c[0] * other.c[0]);
        for i in 1..self.dim {
            acc = acc + self.c[i] * other.c[i];
        }
        acc
    }

    /// `sqrt(|<x,x>|)`.
    pub fn norm(&self) -> S {
        self.dot(self).abs().sqrt()
    }

    /// Euclidean dot product of the components.
    pub fn euclid_dot(&self, other: &Self) -> S {
        assert_eq!(self.dim, other.dim, "Minkowski dimension mismatch");
        let mut acc = S::zero();
        for i in 0..self.dim {
            acc = acc + self.c[i] * other.c[i];
        }
        acc
    }

    /// Pseudo vector product in dimension 3.
    ///
    /// # Panics
    /// Unless both vectors have dimension 3.
    pub fn wedge(&self, other: &Self) -> Self {
        assert!(self.dim == 3 && other.dim == 3, "wedge needs 3-vectors");
        let (x, y) = (&self.c, &other.c);
        MVector::new3(
            -(x[1] * y[2] - x[2] * y[1]),
            -(x[0] * y[2] - x[2] * y[0]),
            x[0] * y[1] - x[1] * y[0],
        )
    }

    /// Pseudo vector product of three 4-vectors.
    ///
    /// # Panics
    /// Unless all three vectors have dimension 4.
    pub fn wedge3(x: &Self, y: &Self, z: &Self) -> Self {
        assert!(
            x.dim == 4 && y.dim == 4 && z.dim == 4,
            "triple wedge needs 4-vectors"
        );
        // Cofactors of the first row of det(w; x; y; z); <result, w> equals
        // that determinant.
        const KEEP: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
        let minor = |skip: usize| {
            let cols = KEEP[skip];
            det3_rows(
                [x.c[cols[0]], x.c[cols[1]], x.c[cols[2]]],
                [y.c[cols[0]], y.c[cols[1]], y.c[cols[2]]],
                [z.c[cols[0]], z.c[cols[1]], z.c[cols[2]]],
            )
        };
        let c0 = minor(0);
        let c1 = -minor(1);
        let c2 = minor(2);
        let c3 = -minor(3);
        MVector::new4(-c0, c1, c2, c3)
    }
}

impl MVector<f64> {
    pub fn euclid_norm(&self) -> f64 {
        self.euclid_dot(self).sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Lift to constant jets.
    pub fn lift(&self) -> MVector<Taylor> {
        self.map(Taylor::constant)
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }
}

impl MVector<Taylor> {
    /// Series of the componentwise derivative.
    pub fn differentiate(&self) -> Self {
        self.map(|s| s.differentiate())
    }

    /// The plain `k`-th derivative vector.
    pub fn derivative(&self, k: usize) -> MVector<f64> {
        self.map(|s| s.derivative(k))
    }

    pub fn order(&self) -> usize {
        self.as_slice()
            .iter()
            .map(|s| s.order())
            .min()
            .unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|s| s.is_finite())
    }
}

fn det3_rows<S: Scalar>(a: [S; 3], b: [S; 3], c: [S; 3]) -> S {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Euclidean-sign 3×3 determinant of stacked 3-vectors.
pub fn det3<S: Scalar>(a: &MVector<S>, b: &MVector<S>, c: &MVector<S>) -> S {
    assert!(a.dim == 3 && b.dim == 3 && c.dim == 3, "det3 needs 3-vectors");
    det3_rows(
        [a.c[0], a.c[1], a.c[2]],
        [b.c[0], b.c[1], b.c[2]],
        [c.c[0], c.c[1], c.c[2]],
    )
}

fn det4_unchecked<S: Scalar>(a: &MVector<S>, b: &MVector<S>, c: &MVector<S>, d: &MVector<S>) -> S {
    // Expand along the first row using the wedge cofactors.
    let w = MVector::wedge3(b, c, d);
    -(a.c[0] * w.c[0]) + a.c[1] * w.c[1] + a.c[2] * w.c[2] + a.c[3] * w.c[3]
}

fn same_dim<S: Scalar>(x: &MVector<S>, y: &MVector<S>) -> Result<()> {
    if x.dim == y.dim {
        Ok(())
    } else {
        Err(FocalError::DimensionMismatch(x.dim, y.dim))
    }
}

fn require_dim<S: Scalar>(x: &MVector<S>, dim: usize) -> Result<()> {
    if x.dim == dim {
        Ok(())
    } else {
        Err(FocalError::DimensionMismatch(x.dim, dim))
    }
}

/// `<x,y> = -x1 y1 + x2 y2 + ...`.
pub fn mdot<S: Scalar>(x: &MVector<S>, y: &MVector<S>) -> Result<S> {
    same_dim(x, y)?;
    Ok(x.dot(y))
}

/// `sqrt(|<x,x>|)`.
pub fn mnorm(x: &MVector) -> f64 {
    x.norm()
}

/// Causal character with a scale-aware lightlike gate.
pub fn causal_type(x: &MVector, tol: f64) -> CausalType {
    let q = x.dot(x);
    let scale = x.euclid_dot(x).max(1.0);
    if q.abs() <= tol * scale {
        CausalType::Lightlike
    } else if q > 0.0 {
        CausalType::Spacelike
    } else {
        CausalType::Timelike
    }
}

pub fn wedge3<S: Scalar>(x: &MVector<S>, y: &MVector<S>) -> Result<MVector<S>> {
    require_dim(x, 3)?;
    require_dim(y, 3)?;
    Ok(x.wedge(y))
}

pub fn wedge4<S: Scalar>(x: &MVector<S>, y: &MVector<S>, z: &MVector<S>) -> Result<MVector<S>> {
    require_dim(x, 4)?;
    require_dim(y, 4)?;
    require_dim(z, 4)?;
    Ok(MVector::wedge3(x, y, z))
}

/// Ordinary 4×4 determinant of the stacked rows.
pub fn det4<S: Scalar>(
    a: &MVector<S>,
    b: &MVector<S>,
    c: &MVector<S>,
    d: &MVector<S>,
) -> Result<S> {
    for v in [a, b, c, d] {
        require_dim(v, 4)?;
    }
    Ok(det4_unchecked(a, b, c, d))
}

impl<S: Scalar> Add for MVector<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "Minkowski dimension mismatch");
        for i in 0..self.dim {
            self.c[i] = self.c[i] + rhs.c[i];
        }
        self
    }
}

impl<S: Scalar> Sub for MVector<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for MVector<S> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for i in 0..self.dim {
            self.c[i] = -self.c[i];
        }
        self
    }
}

impl<S: Scalar> Mul<S> for MVector<S> {
    type Output = Self;
    fn mul(self, k: S) -> Self {
        self.scale(k)
    }
}

impl<S: Scalar> fmt::Debug for MVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl fmt::Display for MVector<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v3(a: f64, b: f64, c: f64) -> MVector {
        MVector::new3(a, b, c)
    }

    fn v4(a: f64, b: f64, c: f64, d: f64) -> MVector {
        MVector::new4(a, b, c, d)
    }

    #[test]
    fn mdot_on_basis() {
        assert_eq!(mdot(&v3(1., 0., 0.), &v3(1., 0., 0.)).unwrap(), -1.0);
        assert_eq!(mdot(&v3(0., 1., 0.), &v3(0., 1., 0.)).unwrap(), 1.0);
        assert_eq!(mdot(&v3(1., 1., 0.), &v3(1., 1., 0.)).unwrap(), 0.0);
    }

    #[test]
    fn mdot_rejects_mixed_dimensions() {
        let err = mdot(&v3(1., 0., 0.), &v4(1., 0., 0., 0.)).unwrap_err();
        assert_eq!(err, FocalError::DimensionMismatch(3, 4));
    }

    #[test]
    fn mnorm_values() {
        assert_eq!(mnorm(&v3(1., 0., 0.)), 1.0);
        assert_eq!(mnorm(&v3(1., 1., 0.)), 0.0);
        assert_eq!(mnorm(&v3(3., 5., 0.)), 4.0);
    }

    #[test]
    fn causal_types() {
        assert_eq!(causal_type(&v3(0., 1., 0.), 1e-12), CausalType::Spacelike);
        assert_eq!(causal_type(&v3(1., 0., 0.), 1e-12), CausalType::Timelike);
        assert_eq!(causal_type(&v3(1., 1., 1e-14), 1e-12), CausalType::Lightlike);
    }

    #[test]
    fn wedge3_on_basis() {
        let e1 = v3(1., 0., 0.);
        let e2 = v3(0., 1., 0.);
        let e3 = v3(0., 0., 1.);
        assert_eq!(wedge3(&e2, &e3).unwrap(), v3(-1., 0., 0.));
        assert_eq!(wedge3(&e1, &e2).unwrap(), v3(0., 0., 1.));
        assert_eq!(wedge3(&e1, &e1).unwrap(), v3(0., 0., 0.));
        assert!(wedge3(&e1, &v4(0., 0., 0., 1.)).is_err());
    }

    #[test]
    fn wedge4_on_basis() {
        let e = |i| MVector::<f64>::basis(4, i);
        assert_eq!(wedge4(&e(1), &e(2), &e(3)).unwrap(), v4(-1., 0., 0., 0.));
        // <e1∧e2∧e3, e4> = det(e4, e1, e2, e3) = -1 (odd cyclic shift).
        assert_eq!(wedge4(&e(0), &e(1), &e(2)).unwrap(), v4(0., 0., 0., -1.));
        let x = v4(0.3, -1.0, 2.0, 0.5);
        let y = v4(1.0, 0.2, 0.0, -0.7);
        assert!(wedge4(&x, &x, &y).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn det4_values() {
        let e = |i| MVector::<f64>::basis(4, i);
        assert_eq!(det4(&e(0), &e(1), &e(2), &e(3)).unwrap(), 1.0);
        assert_eq!(det4(&e(1), &e(0), &e(2), &e(3)).unwrap(), -1.0);
        assert_eq!(det4(&e(0), &e(0), &e(2), &e(3)).unwrap(), 0.0);
        assert!(det4(&e(0), &e(1), &e(2), &v3(0., 0., 1.)).is_err());
    }

    #[test]
    fn wedge_lifts_to_jets() {
        let x = MVector::new3(Taylor::variable(1.0), Taylor::constant(2.0), Taylor::variable(0.0));
        let y = MVector::new3(Taylor::constant(0.5), Taylor::variable(-1.0), Taylor::constant(3.0));
        let w = x.wedge(&y);
        assert_eq!(w.value(), x.value().wedge(&y.value()));
        // <x∧y, x> vanishes as a series, not just pointwise.
        let d = w.dot(&x);
        for k in 0..=3 {
            assert!(d.coeff(k).abs() < 1e-14);
        }
    }

    fn comp() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn vec3() -> impl Strategy<Value = MVector> {
        (comp(), comp(), comp()).prop_map(|(a, b, c)| v3(a, b, c))
    }

    fn vec4() -> impl Strategy<Value = MVector> {
        (comp(), comp(), comp(), comp()).prop_map(|(a, b, c, d)| v4(a, b, c, d))
    }

    proptest! {
        #[test]
        fn wedge3_is_orthogonal(x in vec3(), y in vec3()) {
            let w = x.wedge(&y);
            let n = x.euclid_norm() * y.euclid_norm();
            for a in [&x, &y] {
                prop_assert!(w.dot(a).abs() <= 1e-12 * (n * a.euclid_norm()).max(1e-300));
            }
        }

        #[test]
        fn wedge3_is_antisymmetric(x in vec3(), y in vec3()) {
            prop_assert_eq!(x.wedge(&y), -y.wedge(&x));
        }

        #[test]
        fn wedge4_is_orthogonal(x in vec4(), y in vec4(), z in vec4()) {
            let w = MVector::wedge3(&x, &y, &z);
            let n = x.euclid_norm() * y.euclid_norm() * z.euclid_norm();
            for a in [&x, &y, &z] {
                prop_assert!(w.dot(a).abs() <= 1e-12 * (n * a.euclid_norm()).max(1e-300));
            }
        }

        #[test]
        fn norm_squared_is_abs_dot(x in vec4()) {
            let n = mnorm(&x);
            prop_assert!((n * n - x.dot(&x).abs()).abs() <= 1e-12 * x.euclid_dot(&x).max(1.0));
        }

        #[test]
        fn causal_type_is_scale_invariant(x in vec3(), k in 0.1..10.0f64) {
            prop_assert_eq!(causal_type(&x, 1e-12), causal_type(&x.scale(k), 1e-12));
        }

        #[test]
        fn lightlike_stays_lightlike_under_scaling(a in comp(), theta in 0.0..6.28f64, k in 0.1..10.0f64) {
            let x = v3(a, a * theta.cos(), a * theta.sin());
            prop_assert_eq!(causal_type(&x, 1e-12), CausalType::Lightlike);
            prop_assert_eq!(causal_type(&x.scale(k), 1e-12), CausalType::Lightlike);
        }
    }
}
