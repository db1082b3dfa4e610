use std::fmt;

use crate::taylor::{Scalar, Taylor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Expression in the single variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// Constant exponent; integral values use repeated multiplication.
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

/// Why a jet could not be evaluated, and where.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalIssue {
    pub subexpr: String,
    pub reason: &'static str,
}

type EvalResult = std::result::Result<Taylor, EvalIssue>;

impl Expr {
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn pow(base: Expr, exponent: f64) -> Expr {
        Expr::Pow(Box::new(base), exponent)
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    /// Replace every occurrence of `t` by `inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var => inner.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(inner))),
            Expr::Bin(op, a, b) => Expr::bin(*op, a.substitute(inner), b.substitute(inner)),
            Expr::Pow(a, p) => Expr::pow(a.substitute(inner), *p),
            Expr::Call(f, a) => Expr::call(*f, a.substitute(inner)),
        }
    }

    /// Plain value at `t`.
    pub fn eval(&self, t: f64) -> std::result::Result<f64, EvalIssue> {
        self.eval_series(Taylor::constant(t)).map(|s| s.value())
    }

    /// Propagate a Taylor series for `t` through the expression.
    pub fn eval_series(&self, t: Taylor) -> EvalResult {
        let issue = |reason| EvalIssue {
            subexpr: self.to_string(),
            reason,
        };
        let out = match self {
            Expr::Const(c) => Taylor::constant(*c),
            Expr::Var => t,
            Expr::Neg(a) => -a.eval_series(t)?,
            Expr::Bin(op, a, b) => {
                let x = a.eval_series(t)?;
                let y = b.eval_series(t)?;
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y.value() == 0.0 {
                            return Err(issue("division by zero"));
                        }
                        x / y
                    }
                }
            }
            Expr::Pow(a, p) => {
                let x = a.eval_series(t)?;
                if p.fract() == 0.0 && p.abs() <= 64.0 {
                    if *p < 0.0 && x.value() == 0.0 {
                        return Err(issue("negative power of zero"));
                    }
                    x.powi(*p as i32)
                } else {
                    if x.value() <= 0.0 {
                        return Err(issue("non-integer power of a non-positive base"));
                    }
                    x.powf(*p)
                }
            }
            Expr::Call(f, a) => {
                let x = a.eval_series(t)?;
                match f {
                    Func::Sin => x.sin_cos().0,
                    Func::Cos => x.sin_cos().1,
                    Func::Tan => {
                        let (s, c) = x.sin_cos();
                        if c.value() == 0.0 {
                            return Err(issue("tangent pole"));
                        }
                        s / c
                    }
                    Func::Sinh => x.sinh_cosh().0,
                    Func::Cosh => x.sinh_cosh().1,
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x.value() <= 0.0 {
                            return Err(issue("logarithm of a non-positive value"));
                        }
                        x.ln()
                    }
                    Func::Sqrt => {
                        if x.value() < 0.0 {
                            return Err(issue("square root of a negative value"));
                        }
                        if x.value() == 0.0 && x.order() > 0 {
                            return Err(issue("square root is not differentiable at zero"));
                        }
                        x.sqrt()
                    }
                }
            }
        };
        if out.is_finite() {
            Ok(out)
        } else {
            Err(issue("non-finite value"))
        }
    }
}

/// Fully parenthesized rendering that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Pow(a, p) => write!(f, "({a})^{p}"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
