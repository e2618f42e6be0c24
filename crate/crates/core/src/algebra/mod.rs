//! Exact arithmetic over `Q[q, a, b, t]` and its fraction field.

mod field;
pub mod gcd;
pub mod modular;
mod monomial;
mod poly;
mod ratfunc;

pub use field::{eval_poly, eval_ratfunc, Field, Vars};
pub use monomial::{Monomial, Var, NVARS};
pub use poly::{Coeff, IntPoly, Integer, Poly, Polynomial, Rational};
pub use ratfunc::RationalFunction;

/// `p + r`, `p - r` or `p * r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &Polynomial, r: &Polynomial, op: PolyOp) -> Polynomial {
    match op {
        PolyOp::Add => p + r,
        PolyOp::Sub => p - r,
        PolyOp::Mul => p * r,
    }
}

/// Greatest common divisor over Q, scaled so its graded-lex leading coefficient is 1.
/// `poly_gcd(p, 0)` is `p` made monic; both arguments zero gives zero.
pub fn poly_gcd(p: &Polynomial, r: &Polynomial) -> Polynomial {
    let (pi, _) = p.clear_denominators();
    let (ri, _) = r.clear_denominators();
    gcd::gcd(&pi, &ri).to_rational().monic()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(f: &RationalFunction, g: &RationalFunction, op: RatOp) -> crate::Result<RationalFunction> {
    Ok(match op {
        RatOp::Add => f + g,
        RatOp::Sub => f - g,
        RatOp::Mul => f * g,
        RatOp::Div => f.checked_div(g)?,
    })
}
