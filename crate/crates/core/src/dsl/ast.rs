use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::taylor::Taylor;

/// Constant terms at or below this magnitude are rejected as divisors.
pub const DIV_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Sqrt,
    Neg,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Neg => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Expression tree. Literals produced by the parser are never negative.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    U,
    V,
    Param(String),
    Unary(Func, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.prec(),
            Expr::Unary(Func::Neg, _) => PREC_NEG,
            Expr::Pow(..) => PREC_POW,
            _ => PREC_ATOM,
        }
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::Unary(Func::Neg, Box::new(e))
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Unary(_, x) | Expr::Pow(x, _) => 1 + x.size(),
            Expr::Binary(_, l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }

    /// Direct pointwise evaluation in `f64`.
    pub fn eval_f64(&self, u: f64, v: f64, params: &BTreeMap<String, f64>) -> Result<f64> {
        Ok(match self {
            Expr::Num(x) => *x,
            Expr::U => u,
            Expr::V => v,
            Expr::Param(p) => *params
                .get(p)
                .ok_or_else(|| Error::UnknownIdentifier(p.clone()))?,
            Expr::Unary(f, x) => {
                let x = x.eval_f64(u, v, params)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Exp => x.exp(),
                    Func::Sqrt => {
                        if x <= 0.0 {
                            return Err(Error::DomainError(format!("sqrt of {x:e}")));
                        }
                        x.sqrt()
                    }
                    Func::Neg => -x,
                }
            }
            Expr::Binary(op, l, r) => {
                let l = l.eval_f64(u, v, params)?;
                let r = r.eval_f64(u, v, params)?;
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => {
                        if r.abs() <= DIV_TOL {
                            return Err(Error::ZeroConstantTerm(r));
                        }
                        l / r
                    }
                }
            }
            Expr::Pow(b, n) => {
                let b = b.eval_f64(u, v, params)?;
                if *n < 0 && b.abs() <= DIV_TOL {
                    return Err(Error::ZeroConstantTerm(b));
                }
                b.powi(*n)
            }
        })
    }

    /// Evaluation over the jet algebra; `u` and `v` are the coordinate jets.
    pub fn eval_taylor(&self, u: &Taylor, v: &Taylor, params: &BTreeMap<String, f64>) -> Result<Taylor> {
        Ok(match self {
            Expr::Num(x) => u.lift(*x),
            Expr::U => *u,
            Expr::V => *v,
            Expr::Param(p) => u.lift(
                *params
                    .get(p)
                    .ok_or_else(|| Error::UnknownIdentifier(p.clone()))?,
            ),
            Expr::Unary(f, x) => {
                let x = x.eval_taylor(u, v, params)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Exp => x.exp(),
                    Func::Sqrt => x.sqrt(0.0)?,
                    Func::Neg => -x,
                }
            }
            Expr::Binary(op, l, r) => {
                let l = l.eval_taylor(u, v, params)?;
                let r = r.eval_taylor(u, v, params)?;
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l.checked_div(&r, DIV_TOL)?,
                }
            }
            Expr::Pow(b, n) => b.eval_taylor(u, v, params)?.powi(*n, DIV_TOL)?,
        })
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x}"),
            Expr::U => f.write_str("u"),
            Expr::V => f.write_str("v"),
            Expr::Param(p) => f.write_str(p),
            Expr::Unary(Func::Neg, x) => {
                f.write_str("-")?;
                x.fmt_child(f, x.prec() < PREC_NEG)
            }
            Expr::Unary(func, x) => write!(f, "{}({x})", func.name()),
            Expr::Binary(op, l, r) => {
                l.fmt_child(f, l.prec() < op.prec())?;
                f.write_str(op.symbol())?;
                r.fmt_child(f, r.prec() <= op.prec())
            }
            Expr::Pow(b, n) => {
                b.fmt_child(f, b.prec() < PREC_ATOM)?;
                write!(f, "^{n}")
            }
        }
    }
}
