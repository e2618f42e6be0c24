//! Evaluation of expressions in any field the core crate supports.

use qfine::fine::{andrews_bell_at, fine_at, phi32, r1n_at, Phi32Spec};
use qfine::qkernel::{qbinom_at, qpoch_at, qpoch_signed};
use qfine::series::{qpoch_inf_series, TruncatedQSeries};
use qfine::{Error, Field, Rational, RationalFunction, Result, Vars};

use crate::expr::Expr;

/// A field in which expressions can be evaluated.
pub trait EvalField: Field {
    /// `(x; q)_inf`, available only where it makes sense.
    fn poch_inf(x: &Self) -> Result<Self>;
}

impl EvalField for RationalFunction {
    fn poch_inf(_: &Self) -> Result<Self> {
        Err(Error::Unsupported("pochinf needs a series context (use the series command)".into()))
    }
}

impl EvalField for Rational {
    fn poch_inf(_: &Self) -> Result<Self> {
        Err(Error::Unsupported("pochinf needs a series context (use the series command)".into()))
    }
}

impl EvalField for TruncatedQSeries {
    fn poch_inf(x: &Self) -> Result<Self> {
        Ok(qpoch_inf_series(x))
    }
}

fn nonneg(n: i64, what: &str) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::ConstraintViolation(format!("{what} needs a nonnegative integer, got {n}")))
}

fn base(m: Option<i64>) -> Result<u32> {
    let m = m.unwrap_or(1);
    u32::try_from(m).map_err(|_| Error::ConstraintViolation(format!("base exponent must be nonnegative, got {m}")))
}

/// Value of `e` with the variables bound to `v`.
pub fn eval<K: EvalField>(e: &Expr, v: &Vars<K>) -> Result<K> {
    let q = &v.q;
    Ok(match e {
        Expr::Num(r) => q.constant_like(r),
        Expr::Var(x) => v.get(*x).clone(),
        Expr::Neg(x) => eval(x, v)?.neg(),
        Expr::Add(l, r) => eval(l, v)?.add(&eval(r, v)?),
        Expr::Sub(l, r) => eval(l, v)?.sub(&eval(r, v)?),
        Expr::Mul(l, r) => eval(l, v)?.mul(&eval(r, v)?),
        Expr::Div(l, r) => eval(l, v)?.try_div(&eval(r, v)?)?,
        Expr::Pow(x, k) => eval(x, v)?.pow(*k)?,
        Expr::Poch { arg, n, base_exp: None } => qpoch_signed(&eval(arg, v)?, *n, q)?,
        Expr::Poch { arg, n, base_exp } => qpoch_at(&eval(arg, v)?, nonneg(*n, "poch with a base exponent")?, base(*base_exp)?, q),
        Expr::PochInf(x) => K::poch_inf(&eval(x, v)?)?,
        Expr::QBinom { top, bottom, base_exp } => match base(*base_exp)? {
            0 => return Err(Error::ConstraintViolation("qbinom needs a positive base exponent".into())),
            m => qbinom_at(*top, *bottom, m, q),
        },
        Expr::Fine(n) => fine_at(nonneg(*n, "fine")?, v)?,
        Expr::AbFine(n) => andrews_bell_at(nonneg(*n, "abfine")?, v)?,
        Expr::R1n(n) => r1n_at(nonneg(*n, "r1n")?, v)?,
        Expr::Phi32(p) => {
            let [u1, u2, u3] = &p.upper;
            let [l1, l2] = &p.lower;
            let spec = Phi32Spec {
                upper: [eval(u1, v)?, eval(u2, v)?, eval(u3, v)?],
                lower: [eval(l1, v)?, eval(l2, v)?],
                z: eval(&p.z, v)?,
                terms: nonneg(p.terms, "phi32")?,
            };
            phi32(&spec, q)?
        }
    })
}

/// Exact symbolic value.
pub fn eval_expr(e: &Expr) -> Result<RationalFunction> {
    eval(e, &Vars::symbolic())
}
