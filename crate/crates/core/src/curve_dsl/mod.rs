//! Curve definitions: the line-based curve file, component expressions, and
//! exact derivative jets by Taylor propagation.
//!
//! ```text
//! # comments start with '#'
//! space = S21
//! x1 = t^2 - t
//! x2 = t^2 + t
//! x3 = sqrt(1 - 4*t^3)
//! domain = -0.3 0.3
//! ```

mod expr;
mod parser;

use std::fmt;
use std::str::FromStr;

pub use expr::{BinOp, EvalIssue, Expr, Func};
pub use parser::{parse_expr, SyntaxError};

use crate::error::{FocalError, Result};
use crate::minkowski::MVector;
use crate::taylor::{Taylor, MAX_ORDER};

/// Ambient space of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// Minkowski 3-space.
    R31,
    /// de Sitter 2-space inside Minkowski 3-space.
    S21,
    /// de Sitter 3-space inside Minkowski 4-space.
    S31,
}

impl Space {
    pub fn components(self) -> usize {
        match self {
            Space::R31 | Space::S21 => 3,
            Space::S31 => 4,
        }
    }

    pub fn is_de_sitter(self) -> bool {
        matches!(self, Space::S21 | Space::S31)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Space::R31 => "R31",
            Space::S21 => "S21",
            Space::S31 => "S31",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "R31" | "r31" => Ok(Space::R31),
            "S21" | "s21" => Ok(Space::S21),
            "S31" | "s31" => Ok(Space::S31),
            other => Err(format!("unknown space `{other}` (expected R31, S21 or S31)")),
        }
    }
}

/// Closed parameter interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Domain { lo, hi })
        } else {
            Err(FocalError::InvalidCurve(format!(
                "domain [{lo}, {hi}] is empty or reversed"
            )))
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        let slack = 1e-12 * self.width();
        t >= self.lo - slack && t <= self.hi + slack
    }

    /// `n >= 2` evenly spaced points including both ends.
    pub fn grid(&self, n: usize) -> impl Iterator<Item = f64> + '_ {
        let n = n.max(2);
        let step = self.width() / (n - 1) as f64;
        (0..n).map(move |i| {
            if i == n - 1 {
                self.hi
            } else {
                self.lo + step * i as f64
            }
        })
    }
}

/// A parsed parametric curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDef {
    pub components: Vec<Expr>,
    pub space: Space,
    pub domain: Domain,
}

/// Plain derivatives `d^0 .. d^order` of one component at a parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(Taylor);

impl Jet {
    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn derivative(&self, k: usize) -> f64 {
        self.0.derivative(k)
    }

    pub fn derivatives(&self) -> Vec<f64> {
        self.0.derivatives()
    }

    pub fn series(&self) -> Taylor {
        self.0
    }
}

/// Outcome of [`validate_on_sphere`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereCheck {
    pub on_sphere: bool,
    pub worst_residual: f64,
    pub worst_t: f64,
}

impl CurveDef {
    pub fn new(components: Vec<Expr>, space: Space, domain: Domain) -> Result<Self> {
        if components.len() != space.components() {
            return Err(FocalError::InvalidCurve(format!(
                "space {space} needs {} components, got {}",
                space.components(),
                components.len()
            )));
        }
        Ok(CurveDef {
            components,
            space,
            domain,
        })
    }

    /// Parse each component from text.
    pub fn from_strs(components: &[&str], space: Space, lo: f64, hi: f64) -> Result<Self> {
        let exprs = components
            .iter()
            .enumerate()
            .map(|(i, src)| {
                parse_expr(src).map_err(|e| FocalError::Parse {
                    line: i + 1,
                    column: e.column,
                    message: e.message,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CurveDef::new(exprs, space, Domain::new(lo, hi)?)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Same curve viewed in another ambient space of equal dimension.
    pub fn with_space(&self, space: Space) -> Result<Self> {
        CurveDef::new(self.components.clone(), space, self.domain)
    }

    /// The reparametrized curve `t ↦ γ(φ(t))` on a new domain.
    pub fn reparametrize(&self, phi: &Expr, domain: Domain) -> CurveDef {
        CurveDef {
            components: self.components.iter().map(|c| c.substitute(phi)).collect(),
            space: self.space,
            domain,
        }
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        if self.domain.contains(t) {
            Ok(())
        } else {
            Err(FocalError::OutOfDomain {
                t,
                lo: self.domain.lo,
                hi: self.domain.hi,
            })
        }
    }

    /// Position series around `t`, truncated at `order`.
    pub fn series(&self, t: f64, order: usize) -> Result<MVector<Taylor>> {
        if order > MAX_ORDER {
            return Err(FocalError::OutOfRange(format!(
                "jet order {order} exceeds the cap {MAX_ORDER}"
            )));
        }
        self.check_domain(t)?;
        let var = Taylor::variable(t).truncate(order);
        let comps = self
            .components
            .iter()
            .map(|c| {
                c.eval_series(var).map_err(|issue| FocalError::Domain {
                    expr: issue.subexpr,
                    t,
                    reason: issue.reason.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MVector::from_slice(&comps)
    }

    /// Position `γ(t)`.
    pub fn point(&self, t: f64) -> Result<MVector> {
        Ok(self.series(t, 0)?.value())
    }

    /// The `k`-th derivative vector at `t`.
    pub fn derivative(&self, t: f64, k: usize) -> Result<MVector> {
        Ok(self.series(t, k)?.derivative(k))
    }
}

/// Parse a curve file.
pub fn parse_curve(text: &str) -> Result<CurveDef> {
    let mut space: Option<(Space, usize)> = None;
    let mut comps: [Option<(Expr, usize)>; 4] = [None, None, None, None];
    let mut domain: Option<(f64, f64, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |column: usize, message: String| FocalError::Parse {
            line: line_no,
            column,
            message,
        };
        let Some(eq) = line.find('=') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(parse_err(col, "expected `key = value`".into()));
        };
        let key = line[..eq].trim();
        let value = &line[eq + 1..];
        // Column of the first character after '='.
        let value_col = line[..eq + 1].chars().count() + 1;
        match key {
            "space" => {
                if space.is_some() {
                    return Err(parse_err(1, "duplicate `space`".into()));
                }
                let s = value
                    .trim()
                    .parse::<Space>()
                    .map_err(|m| parse_err(value_col, m))?;
                space = Some((s, line_no));
            }
            "x1" | "x2" | "x3" | "x4" => {
                let i = key.as_bytes()[1] as usize - b'1' as usize;
                if comps[i].is_some() {
                    return Err(parse_err(1, format!("duplicate `{key}`")));
                }
                let e = parse_expr(value)
                    .map_err(|se| parse_err(value_col + se.column - 1, se.message))?;
                comps[i] = Some((e, line_no));
            }
            "domain" => {
                if domain.is_some() {
                    return Err(parse_err(1, "duplicate `domain`".into()));
                }
                let nums: Vec<&str> = value.split_whitespace().collect();
                if nums.len() != 2 {
                    return Err(parse_err(value_col, "domain needs two numbers `a b`".into()));
                }
                let parse_num = |s: &str| {
                    s.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| parse_err(value_col, format!("malformed number `{s}`")))
                };
                domain = Some((parse_num(nums[0])?, parse_num(nums[1])?, line_no));
            }
            other => {
                return Err(parse_err(1, format!("unknown key `{other}`")));
            }
        }
    }

    let (space, _) = space.ok_or_else(|| FocalError::InvalidCurve("missing `space`".into()))?;
    let n = space.components();
    let mut exprs = Vec::with_capacity(n);
    for (i, slot) in comps.iter_mut().enumerate() {
        match (slot.take(), i < n) {
            (Some((e, _)), true) => exprs.push(e),
            (None, true) => {
                return Err(FocalError::InvalidCurve(format!(
                    "space {space} needs component x{}",
                    i + 1
                )))
            }
            (Some((_, line)), false) => {
                return Err(FocalError::Parse {
                    line,
                    column: 1,
                    message: format!("space {space} has only {n} components"),
                })
            }
            (None, false) => {}
        }
    }
    let (lo, hi, line) =
        domain.ok_or_else(|| FocalError::InvalidCurve("missing `domain`".into()))?;
    let domain = Domain::new(lo, hi).map_err(|_| FocalError::Parse {
        line,
        column: 1,
        message: format!("domain [{lo}, {hi}] is empty or reversed"),
    })?;
    CurveDef::new(exprs, space, domain)
}

/// Per-component derivative jets of order `order` (at most 6).
pub fn eval_jet(curve: &CurveDef, t: f64, order: usize) -> Result<Vec<Jet>> {
    let s = curve.series(t, order)?;
    Ok(s.as_slice().iter().copied().map(Jet).collect())
}

/// Check `<γ,γ> = 1` on `sample_count` evenly spaced parameters.
pub fn validate_on_sphere(curve: &CurveDef, sample_count: usize, tol: f64) -> SphereCheck {
    let mut worst = SphereCheck {
        on_sphere: true,
        worst_residual: 0.0,
        worst_t: curve.domain.lo,
    };
    for t in curve.domain.grid(sample_count) {
        let r = match curve.point(t) {
            Ok(p) => (p.dot(&p) - 1.0).abs(),
            Err(_) => f64::INFINITY,
        };
        if r > worst.worst_residual || r.is_nan() {
            worst.worst_residual = if r.is_nan() { f64::INFINITY } else { r };
            worst.worst_t = t;
        }
    }
    worst.on_sphere = worst.worst_residual <= tol;
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const S21_EXAMPLE: &str = "\
# de Sitter example curve
space = S21
x1 = t^2 - t
x2 = t^2 + t
x3 = sqrt(1 - 4*t^3)   # on the unit sphere identically
domain = -0.3 0.3
";

    #[test]
    fn parses_example_file() {
        let c = parse_curve(S21_EXAMPLE).unwrap();
        assert_eq!(c.space, Space::S21);
        assert_eq!(c.domain, Domain { lo: -0.3, hi: 0.3 });
        assert_eq!(c.components[0], parse_expr("t^2 - t").unwrap());
    }

    #[test]
    fn syntax_error_carries_line_and_column() {
        let text = "space = R31\nx1 = t\nx2 = t +\nx3 = 0\ndomain = 0 1\n";
        match parse_curve(text).unwrap_err() {
            FocalError::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 9);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn component_count_must_match_space() {
        let missing = "space = S31\nx1 = t\nx2 = 1\nx3 = 0\ndomain = 0 1\n";
        assert!(matches!(parse_curve(missing), Err(FocalError::InvalidCurve(_))));
        let extra = "space = R31\nx1 = t\nx2 = 1\nx3 = 0\nx4 = 0\ndomain = 0 1\n";
        assert!(matches!(parse_curve(extra), Err(FocalError::Parse { line: 5, .. })));
    }

    #[test]
    fn reversed_domain_rejected() {
        let text = "space = R31\nx1 = t\nx2 = 1\nx3 = 0\ndomain = 1 0\n";
        assert!(matches!(parse_curve(text), Err(FocalError::Parse { line: 5, .. })));
        let empty = "space = R31\nx1 = t\nx2 = 1\nx3 = 0\ndomain = 1 1\n";
        assert!(parse_curve(empty).is_err());
    }

    #[test]
    fn jet_values() {
        let c = CurveDef::from_strs(&["t^2", "sin(t)", "sqrt(1 - 4*t^3)"], Space::R31, -1.0, 0.5)
            .unwrap();
        let j = eval_jet(&c, 3.0_f64.min(0.5), 1).unwrap();
        assert_relative_eq!(j[0].derivative(1), 1.0, epsilon = 1e-14);
        let c2 = CurveDef::from_strs(&["t^2", "sin(t)", "t"], Space::R31, -5.0, 5.0).unwrap();
        assert_relative_eq!(eval_jet(&c2, 3.0, 1).unwrap()[0].derivative(1), 6.0, epsilon = 1e-13);
        assert_relative_eq!(eval_jet(&c2, 0.0, 5).unwrap()[1].derivative(5), 1.0, epsilon = 1e-13);
        let j0 = eval_jet(&c, 0.0, 3).unwrap();
        assert_eq!(j0[2].derivative(1), 0.0);
        assert_eq!(j0[2].order(), 3);
        assert_eq!(j0[2].derivatives().len(), 4);
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let c = CurveDef::from_strs(&["t", "sqrt(1 - 4*t^3)", "1/t"], Space::R31, -1.0, 1.0)
            .unwrap();
        match eval_jet(&c, 0.9, 2).unwrap_err() {
            FocalError::Domain { expr, reason, .. } => {
                assert!(expr.starts_with("sqrt("), "{expr}");
                assert!(reason.contains("negative"));
            }
            e => panic!("unexpected {e:?}"),
        }
        match eval_jet(&c, 0.0, 2).unwrap_err() {
            FocalError::Domain { reason, .. } => assert!(reason.contains("division")),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(eval_jet(&c, 2.0, 1), Err(FocalError::OutOfDomain { .. })));
        assert!(eval_jet(&c, 0.5, 7).is_err());
    }

    #[test]
    fn sphere_validation() {
        let ex = parse_curve(S21_EXAMPLE).unwrap();
        let chk = validate_on_sphere(&ex, 1001, 1e-12);
        assert!(chk.on_sphere);
        assert!(chk.worst_residual <= 1e-12);

        let off = CurveDef::from_strs(&["t", "0", "1"], Space::S21, -0.5, 0.5).unwrap();
        let chk = validate_on_sphere(&off, 101, 1e-9);
        assert!(!chk.on_sphere);
        assert_relative_eq!(chk.worst_residual, 0.25, epsilon = 1e-12);

        let circle = CurveDef::from_strs(&["0", "cos(t)", "sin(t)"], Space::S21, 0.0, 6.0).unwrap();
        assert!(validate_on_sphere(&circle, 257, 1e-12).on_sphere);
    }

    /// Five-point central differences with a step chosen per order.
    fn fd_derivative(f: &dyn Fn(f64) -> f64, t: f64, k: usize) -> f64 {
        if k == 0 {
            return f(t);
        }
        let h = 1e-2;
        let g = |x: f64| fd_derivative(f, x, k - 1);
        (-g(t + 2.0 * h) + 8.0 * g(t + h) - 8.0 * g(t - h) + g(t - 2.0 * h)) / (12.0 * h)
    }

    proptest! {
        #[test]
        fn jets_match_finite_differences(
            coeffs in proptest::collection::vec(-2.0..2.0f64, 6),
            t in -1.0..1.0f64,
        ) {
            let text = coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| format!("({a})*t^{k}"))
                .collect::<Vec<_>>()
                .join(" + ");
            let e = parse_expr(&text).unwrap();
            let s = e.eval_series(Taylor::variable(t).truncate(5)).unwrap();
            let f = |x: f64| e.eval(x).unwrap();
            for k in 1..=3 {
                let fd = fd_derivative(&f, t, k);
                let exact = s.derivative(k);
                prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0),
                    "order {}: fd {} vs jet {}", k, fd, exact);
            }
            // Highest orders are exact polynomial identities.
            let lead = 120.0 * coeffs[5];
            prop_assert!((s.derivative(5) - lead).abs() <= 1e-12 * lead.abs().max(1.0));
        }

        #[test]
        fn jets_are_linear(a in -3.0..3.0f64, b in -3.0..3.0f64, t in -0.5..0.5f64) {
            let f = parse_expr("sin(t) * exp(t)").unwrap();
            let g = parse_expr("sqrt(2 + t^3) - cosh(t)").unwrap();
            let combo = Expr::bin(
                BinOp::Add,
                Expr::bin(BinOp::Mul, Expr::Const(a.abs()), f.clone()),
                Expr::bin(BinOp::Mul, Expr::Const(b.abs()), g.clone()),
            );
            let x = Taylor::variable(t);
            let lhs = combo.eval_series(x).unwrap();
            let rhs = f.eval_series(x).unwrap() * a.abs() + g.eval_series(x).unwrap() * b.abs();
            for k in 0..=6 {
                prop_assert!((lhs.derivative(k) - rhs.derivative(k)).abs()
                    <= 1e-12 * rhs.derivative(k).abs().max(1.0));
            }
        }
    }
}
