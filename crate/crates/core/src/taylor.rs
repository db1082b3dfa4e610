//! Truncated Taylor series arithmetic.
//!
//! A [`Taylor`] holds the normalized coefficients `c_k = f^(k)(x0) / k!` of a
//! univariate function around an expansion point, truncated at a runtime
//! order no larger than [`MAX_ORDER`]. Storage is a fixed array so every
//! operation is allocation-free.
//!
//! The [`Scalar`] trait abstracts over `f64` and `Taylor`, which lets the
//! geometric formulas elsewhere in the crate be written once and evaluated
//! either pointwise or lifted to a whole jet.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Highest derivative order carried by a [`Taylor`].
pub const MAX_ORDER: usize = 6;

const LEN: usize = MAX_ORDER + 1;

const FACTORIALS: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0];

/// `k!` for `k <= MAX_ORDER`.
pub fn factorial(k: usize) -> f64 {
    FACTORIALS[k]
}

/// Numeric type usable by the generic geometry kernels.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(x: f64) -> Self;
    /// Zeroth-order value.
    fn value(self) -> f64;
    fn sqrt(self) -> Self;

    /// `|x|`, differentiated through the sign of the value.
    fn abs(self) -> Self {
        if self.value() < 0.0 {
            -self
        } else {
            self
        }
    }

    fn zero() -> Self {
        Self::cst(0.0)
    }
}

impl Scalar for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn value(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Taylor {
    coeffs: [f64; LEN],
    order: usize,
}

impl Taylor {
    /// A constant, exact to every order.
    pub fn constant(x: f64) -> Self {
        let mut coeffs = [0.0; LEN];
        coeffs[0] = x;
        Taylor {
            coeffs,
            order: MAX_ORDER,
        }
    }

    /// The independent variable expanded around `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut t = Taylor::constant(x0);
        t.coeffs[1] = 1.0;
        t
    }

    /// Build from normalized coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty or longer than `MAX_ORDER + 1`.
    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= LEN, "bad series length");
        let mut c = [0.0; LEN];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Taylor {
            coeffs: c,
            order: coeffs.len() - 1,
        }
    }

    /// Build from plain derivatives `f, f', f'', ...`.
    pub fn from_derivatives(derivs: &[f64]) -> Self {
        let scaled: Vec<f64> = derivs
            .iter()
            .enumerate()
            .map(|(k, d)| d / FACTORIALS[k])
            .collect();
        Taylor::from_coeffs(&scaled)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Normalized coefficient `f^(k)/k!`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> f64 {
        if k <= self.order {
            self.coeffs[k]
        } else {
            0.0
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..=self.order]
    }

    /// Plain derivative `f^(k)(x0)`.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeff(k) * FACTORIALS[k.min(MAX_ORDER)]
    }

    pub fn derivatives(&self) -> Vec<f64> {
        (0..=self.order).map(|k| self.derivative(k)).collect()
    }

    pub fn truncate(mut self, order: usize) -> Self {
        if order < self.order {
            for c in &mut self.coeffs[order + 1..] {
                *c = 0.0;
            }
            self.order = order;
        }
        self
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    /// Series of the derivative; loses one order.
    ///
    /// # Panics
    /// On an order-zero series.
    pub fn differentiate(&self) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 series");
        let mut c = [0.0; LEN];
        for k in 0..self.order {
            c[k] = (k + 1) as f64 * self.coeffs[k + 1];
        }
        Taylor {
            coeffs: c,
            order: self.order - 1,
        }
    }

    /// Antiderivative with the given constant term; gains one order, capped.
    pub fn integrate(&self, c0: f64) -> Self {
        let order = (self.order + 1).min(MAX_ORDER);
        let mut c = [0.0; LEN];
        c[0] = c0;
        for k in 1..=order {
            c[k] = self.coeffs[k - 1] / k as f64;
        }
        Taylor { coeffs: c, order }
    }

    /// `self(inner(x))`, where `inner` must have zero constant term.
    pub fn compose(&self, inner: &Taylor) -> Self {
        debug_assert!(inner.coeffs[0] == 0.0, "inner series must vanish at 0");
        let order = self.order.min(inner.order);
        // Horner: c0 + inner*(c1 + inner*(c2 + ...))
        let mut acc = Taylor::constant(self.coeffs[order]).truncate(order);
        for k in (0..order).rev() {
            acc = acc * *inner + Taylor::constant(self.coeffs[k]);
        }
        acc.truncate(order)
    }

    /// Compositional inverse of a series with zero constant term and nonzero
    /// linear term.
    pub fn revert(&self) -> Option<Self> {
        if self.coeffs[0] != 0.0 || self.order == 0 || self.coeffs[1] == 0.0 {
            return None;
        }
        let order = self.order;
        let lead = self.coeffs[1];
        let mut inv = [0.0; LEN];
        inv[1] = 1.0 / lead;
        for k in 2..=order {
            let partial = Taylor {
                coeffs: inv,
                order,
            };
            let round = self.compose(&partial);
            inv[k] = -round.coeffs[k] / lead;
        }
        Some(Taylor { coeffs: inv, order })
    }

    pub fn recip(&self) -> Self {
        Taylor::constant(1.0) / *self
    }

    pub fn exp(&self) -> Self {
        let a = &self.coeffs;
        let mut e = [0.0; LEN];
        e[0] = a[0].exp();
        for k in 1..=self.order {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Taylor {
            coeffs: e,
            order: self.order,
        }
    }

    pub fn ln(&self) -> Self {
        let a = &self.coeffs;
        let mut l = [0.0; LEN];
        l[0] = a[0].ln();
        for k in 1..=self.order {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * a[k - j]).sum();
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Taylor {
            coeffs: l,
            order: self.order,
        }
    }

    /// `(sin, cos)` computed together.
    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.coeffs;
        let mut s = [0.0; LEN];
        let mut c = [0.0; LEN];
        s[0] = a[0].sin();
        c[0] = a[0].cos();
        for k in 1..=self.order {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc -= j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        let order = self.order;
        (Taylor { coeffs: s, order }, Taylor { coeffs: c, order })
    }

    /// `(sinh, cosh)` computed together.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        let a = &self.coeffs;
        let mut s = [0.0; LEN];
        let mut c = [0.0; LEN];
        s[0] = a[0].sinh();
        c[0] = a[0].cosh();
        for k in 1..=self.order {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc += j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        let order = self.order;
        (Taylor { coeffs: s, order }, Taylor { coeffs: c, order })
    }

    pub fn tan(&self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }

    /// Integer power by repeated squaring; negative exponents go through the
    /// reciprocal.
    pub fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Taylor::constant(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc.truncate(self.order)
    }

    /// Real power through `exp(p ln x)`; needs a positive base value.
    pub fn powf(&self, p: f64) -> Self {
        (self.ln() * Taylor::constant(p)).exp()
    }
}

impl Scalar for Taylor {
    fn cst(x: f64) -> Self {
        Taylor::constant(x)
    }
    fn value(self) -> f64 {
        self.coeffs[0]
    }
    fn sqrt(self) -> Self {
        let a = &self.coeffs;
        let mut s = [0.0; LEN];
        s[0] = a[0].sqrt();
        for k in 1..=self.order {
            let cross: f64 = (1..k).map(|j| s[j] * s[k - j]).sum();
            s[k] = (a[k] - cross) / (2.0 * s[0]);
        }
        Taylor {
            coeffs: s,
            order: self.order,
        }
    }
}

impl Add for Taylor {
    type Output = Taylor;
    fn add(self, rhs: Taylor) -> Taylor {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            c[k] = self.coeffs[k] + rhs.coeffs[k];
        }
        Taylor { coeffs: c, order }
    }
}

impl AddAssign for Taylor {
    fn add_assign(&mut self, rhs: Taylor) {
        *self = *self + rhs;
    }
}

impl Sub for Taylor {
    type Output = Taylor;
    fn sub(self, rhs: Taylor) -> Taylor {
        self + (-rhs)
    }
}

impl Neg for Taylor {
    type Output = Taylor;
    fn neg(mut self) -> Taylor {
        for c in &mut self.coeffs {
            *c = -*c;
        }
        self
    }
}

impl Mul for Taylor {
    type Output = Taylor;
    fn mul(self, rhs: Taylor) -> Taylor {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            c[k] = (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum();
        }
        Taylor { coeffs: c, order }
    }
}

impl Div for Taylor {
    type Output = Taylor;
    fn div(self, rhs: Taylor) -> Taylor {
        let order = self.order.min(rhs.order);
        let b = &rhs.coeffs;
        let mut q = [0.0; LEN];
        for k in 0..=order {
            let s: f64 = (1..=k).map(|j| b[j] * q[k - j]).sum();
            q[k] = (self.coeffs[k] - s) / b[0];
        }
        Taylor { coeffs: q, order }
    }
}

impl Mul<f64> for Taylor {
    type Output = Taylor;
    fn mul(mut self, rhs: f64) -> Taylor {
        for c in &mut self.coeffs {
            *c *= rhs;
        }
        self
    }
}
