//! LaTeX output in the notation of the q-series literature.

use num_traits::{One, Signed};
use qfine::{IntPoly, Monomial, RationalFunction, Var};

use crate::expr::Expr;

fn paren(s: String) -> String {
    format!("\\left({s}\\right)")
}

fn child(e: &Expr, min: u8) -> String {
    let s = expr_latex(e);
    if latex_prec(e) < min { paren(s) } else { s }
}

/// Fractions typeset as `\frac` bind like atoms.
fn latex_prec(e: &Expr) -> u8 {
    match e {
        Expr::Div(..) => 5,
        Expr::Num(r) if r.is_negative() => 3,
        Expr::Num(_) => 5,
        _ => e.prec(),
    }
}

fn base_q(m: Option<i64>) -> String {
    match m {
        None | Some(1) => "q".into(),
        Some(m) => format!("q^{{{m}}}"),
    }
}

pub fn expr_latex(e: &Expr) -> String {
    match e {
        Expr::Num(r) => {
            let sign = if r.is_negative() { "-" } else { "" };
            let r = r.abs();
            if r.is_integer() {
                format!("{sign}{}", r.numer())
            } else {
                format!("{sign}\\frac{{{}}}{{{}}}", r.numer(), r.denom())
            }
        }
        Expr::Var(v) => v.to_string(),
        Expr::Neg(x) => format!("-{}", child(x, 3)),
        Expr::Add(l, r) => format!("{} + {}", child(l, 1), child(r, 2)),
        Expr::Sub(l, r) => format!("{} - {}", child(l, 1), child(r, 2)),
        Expr::Mul(l, r) => {
            let rs = child(r, 3);
            let sep = if rs.starts_with(|c: char| c.is_ascii_digit() || c == '-') { " \\cdot " } else { " " };
            format!("{}{sep}{rs}", child(l, 2))
        }
        Expr::Div(l, r) => format!("\\frac{{{}}}{{{}}}", expr_latex(l), expr_latex(r)),
        Expr::Pow(x, k) => format!("{{{}}}^{{{k}}}", child(x, 5)),
        Expr::Poch { arg, n, base_exp } => format!("({};{})_{{{n}}}", expr_latex(arg), base_q(*base_exp)),
        Expr::PochInf(x) => format!("({};q)_{{\\infty}}", expr_latex(x)),
        Expr::QBinom { top, bottom, base_exp } => {
            format!("\\begin{{bmatrix}} {top} \\\\ {bottom} \\end{{bmatrix}}_{{{}}}", base_q(*base_exp))
        }
        Expr::Fine(n) => format!("F_{{{n}}}(a,b;t)"),
        Expr::AbFine(n) => format!("F(a,b,t,{n})"),
        Expr::R1n(n) => format!("R_{{1,{n}}}(a,b,t)"),
        Expr::Phi32(p) => {
            let list = |xs: &[Expr]| xs.iter().map(expr_latex).collect::<Vec<_>>().join(", ");
            format!(
                "{{}}_{{3}}\\phi_{{2}}\\left(\\begin{{matrix}} {} \\\\ {} \\end{{matrix}}; q, {}\\right)_{{n \\le {}}}",
                list(&p.upper),
                list(&p.lower),
                expr_latex(&p.z),
                p.terms
            )
        }
    }
}

fn monomial_latex(m: Monomial) -> String {
    let mut s = String::new();
    for v in [Var::A, Var::B, Var::T, Var::Q] {
        match m.exp(v) {
            0 => {}
            1 => s.push_str(&v.to_string()),
            e => s.push_str(&format!("{v}^{{{e}}}")),
        }
    }
    s
}

/// Terms in the same order as the plain-text printer.
pub fn poly_latex(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().iter().rev().enumerate() {
        let abs = c.abs();
        match (k, c.is_negative()) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if m.is_one() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&monomial_latex(*m));
        } else {
            s.push_str(&format!("{abs}{}", monomial_latex(*m)));
        }
    }
    s
}

pub fn ratfunc_latex(f: &RationalFunction) -> String {
    if f.denom_int().is_one() {
        poly_latex(f.numer_int())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_latex(f.numer_int()), poly_latex(f.denom_int()))
    }
}
