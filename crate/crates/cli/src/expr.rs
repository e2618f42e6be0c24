//! The expression tree and its canonical text form.

use std::fmt;
use std::ops;

use num_traits::{One, Signed, Zero};
use qfine::{Rational, Var};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    /// `poch(x, n)` or `poch(x, n, m)` for `(x; q^m)_n`.
    Poch { arg: Box<Expr>, n: i64, base_exp: Option<i64> },
    PochInf(Box<Expr>),
    QBinom { top: i64, bottom: i64, base_exp: Option<i64> },
    Fine(i64),
    AbFine(i64),
    R1n(i64),
    Phi32(Box<Phi32Args>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Phi32Args {
    pub upper: [Expr; 3],
    pub lower: [Expr; 2],
    pub z: Expr,
    pub terms: i64,
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(Rational::from_integer(n.into()))
    }

    pub fn frac(p: i64, r: i64) -> Expr {
        Expr::Num(Rational::new(p.into(), r.into()))
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn pow(self, e: i64) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn poch(arg: Expr, n: i64) -> Expr {
        Expr::Poch { arg: Box::new(arg), n, base_exp: None }
    }

    /// Binding strength used to decide where parentheses are needed.
    pub(crate) fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(r) if !r.is_integer() || r.is_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    pub(crate) fn is_fraction(&self) -> bool {
        matches!(self, Expr::Num(r) if !r.is_integer())
    }
}

macro_rules! expr_binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl ops::$tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn opt_exp(f: &mut fmt::Formatter<'_>, m: Option<i64>) -> fmt::Result {
    match m {
        Some(m) => write!(f, ", {m})"),
        None => write!(f, ")"),
    }
}

/// Canonical text. Division is spaced so that an unspaced `p/r` is always a
/// literal fraction when read back.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => {
                if r.denom().is_one() || r.is_zero() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(x) => {
                write!(f, "-")?;
                child(f, x, 3)
            }
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                child(f, l, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                child(f, r, 2)
            }
            Expr::Mul(l, r) => {
                child(f, l, 2)?;
                write!(f, "*")?;
                child(f, r, 3)
            }
            Expr::Div(l, r) => {
                child(f, l, 2)?;
                write!(f, " / ")?;
                if r.is_fraction() {
                    write!(f, "({r})")
                } else {
                    child(f, r, 3)
                }
            }
            Expr::Pow(x, e) => {
                child(f, x, 5)?;
                write!(f, "^{e}")
            }
            Expr::Poch { arg, n, base_exp } => {
                write!(f, "poch({arg}, {n}")?;
                opt_exp(f, *base_exp)
            }
            Expr::PochInf(x) => write!(f, "pochinf({x})"),
            Expr::QBinom { top, bottom, base_exp } => {
                write!(f, "qbinom({top}, {bottom}")?;
                opt_exp(f, *base_exp)
            }
            Expr::Fine(n) => write!(f, "fine({n})"),
            Expr::AbFine(n) => write!(f, "abfine({n})"),
            Expr::R1n(n) => write!(f, "r1n({n})"),
            Expr::Phi32(p) => {
                let [u1, u2, u3] = &p.upper;
                let [l1, l2] = &p.lower;
                write!(f, "phi32({u1}, {u2}, {u3}; {l1}, {l2}; {}; {})", p.z, p.terms)
            }
        }
    }
}
