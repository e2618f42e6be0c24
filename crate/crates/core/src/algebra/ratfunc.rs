//! Canonically normalized rational functions in `(q, a, b, t)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd_cofactors;
use super::monomial::{Monomial, Var, NVARS};
use super::poly::{IntPoly, Integer, Polynomial, Rational};
use crate::{Error, Result};

/// Quotient of two integer-coefficient polynomials in canonical form:
///
/// * numerator and denominator are coprime over Q,
/// * their integer contents are coprime,
/// * the denominator's graded-lex leading coefficient is positive,
/// * zero is `0/1`.
///
/// Equal functions therefore have identical representations, and zero testing is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_integer(Integer::from(n))
    }

    pub fn from_integer(n: Integer) -> Self {
        RationalFunction { num: IntPoly::constant(n), den: IntPoly::one() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RationalFunction {
            num: IntPoly::constant(r.numer().clone()),
            den: IntPoly::constant(r.denom().clone()),
        }
    }

    pub fn var(v: Var) -> Self {
        RationalFunction { num: IntPoly::var(v), den: IntPoly::one() }
    }

    pub fn monomial(m: Monomial) -> Self {
        RationalFunction { num: IntPoly::monomial(m, Integer::one()), den: IntPoly::one() }
    }

    pub fn from_poly(p: &IntPoly) -> Self {
        Self::finish(p.clone(), IntPoly::one())
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let (num, d) = p.clear_denominators();
        Self::finish(num, IntPoly::constant(d))
    }

    /// `num / den` reduced to canonical form.
    pub fn new(num: &Polynomial, den: &Polynomial) -> Result<Self> {
        let (n, dn) = num.clear_denominators();
        let (d, dd) = den.clear_denominators();
        Self::from_int_polys(n.scale(&dd), d.scale(&dn))
    }

    /// `num / den` for integer polynomials, reduced to canonical form.
    pub fn from_int_polys(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (_, n, d) = gcd_cofactors(&num, &den);
        Ok(Self::finish(n, d))
    }

    /// Fixes the integer content and sign; the inputs must already be coprime.
    fn finish(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.content().gcd(&den.content());
        let g = if den.leading_coeff().is_negative() { -g } else { g };
        if g.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction { num: num.div_integer(&g), den: den.div_integer(&g) }
        }
    }

    pub fn numer_int(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom_int(&self) -> &IntPoly {
        &self.den
    }

    pub fn numer(&self) -> Polynomial {
        self.num.to_rational()
    }

    pub fn denom(&self) -> Polynomial {
        self.den.to_rational()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value if this function is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(Rational::new(n, d))
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            let (_, n, d) = gcd_cofactors(&num, &self.den);
            return Self::finish(n, d);
        }
        let (g, d1, d2) = gcd_cofactors(&self.den, &other.den);
        let num = &(&self.num * &d2) + &(&other.num * &d1);
        if num.is_zero() {
            return Self::zero();
        }
        let (_, n, g_rest) = gcd_cofactors(&num, &g);
        Self::finish(n, &(&d1 * &d2) * &g_rest)
    }

    pub fn neg_ref(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (_, n1, d2) = gcd_cofactors(&self.num, &other.den);
        let (_, n2, d1) = gcd_cofactors(&other.num, &self.den);
        Self::finish(&n1 * &n2, &d1 * &d2)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.recip()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RationalFunction { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Exact value at a rational point `(q, a, b, t)`.
    pub fn eval_at(&self, point: &[Rational; NVARS]) -> Result<Rational> {
        let den = self.den.eval_rational(point);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_rational(point) / den)
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: Var, value: &RationalFunction) -> Result<Self> {
        self.substitute_all(&[(var, value.clone())])
    }

    /// Simultaneous substitution: every listed variable is replaced by its value in
    /// one pass, so values may mention the substituted variables.
    pub fn substitute_all(&self, subs: &[(Var, RationalFunction)]) -> Result<Self> {
        let num = Homogenized::of(&self.num, subs);
        let den = Homogenized::of(&self.den, subs);
        if den.poly.is_zero() {
            return Err(Error::IdenticallyZeroDenominator(format!(
                "substitution annihilates denominator {}",
                self.den
            )));
        }
        // num/den = (N / prod w^dn) / (D / prod w^dd)
        let mut n = num.poly;
        let mut d = den.poly;
        for (k, (_, value)) in subs.iter().enumerate() {
            let diff = i64::from(den.degrees[k]) - i64::from(num.degrees[k]);
            let w = value.den.pow(diff.unsigned_abs() as u32);
            if diff > 0 {
                n = &n * &w;
            } else if diff < 0 {
                d = &d * &w;
            }
        }
        Self::from_int_polys(n, d)
    }
}

/// `P(u/w)` with the denominator powers cleared: `poly = P(u/w) * prod w^degrees`.
struct Homogenized {
    poly: IntPoly,
    degrees: Vec<u32>,
}

impl Homogenized {
    fn of(p: &IntPoly, subs: &[(Var, RationalFunction)]) -> Homogenized {
        let degrees: Vec<u32> = subs.iter().map(|(v, _)| p.degree_in(*v)).collect();
        let mut cache: Vec<(Vec<IntPoly>, Vec<IntPoly>)> =
            subs.iter().map(|_| (vec![IntPoly::one()], vec![IntPoly::one()])).collect();
        let mut acc = IntPoly::zero();
        for (m, c) in p.terms() {
            let mut rest = *m;
            let mut term = IntPoly::constant(c.clone());
            for (k, (v, value)) in subs.iter().enumerate() {
                let e = m.exp(*v) as usize;
                rest = rest.without(*v);
                let (num_pows, den_pows) = &mut cache[k];
                let up = power(num_pows, &value.num, e);
                term = &term * &up;
                let wp = power(den_pows, &value.den, degrees[k] as usize - e);
                term = &term * &wp;
            }
            acc = &acc + &term.mul_monomial(rest);
        }
        Homogenized { poly: acc, degrees }
    }
}

fn power(cache: &mut Vec<IntPoly>, base: &IntPoly, e: usize) -> IntPoly {
    while cache.len() <= e {
        let next = &cache[cache.len() - 1] * base;
        cache.push(next);
    }
    cache[e].clone()
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// `num` when the denominator is 1, otherwise `(num)/(den)`; single-term parts
/// are not parenthesized.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &IntPoly| {
            if p.len() == 1 {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

macro_rules! rf_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$inner(rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$inner(rhs)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$inner(&rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$inner(&rhs)
            }
        }
    };
}

rf_binop!(Add, add, add_ref);
rf_binop!(Sub, sub, sub_ref);
rf_binop!(Mul, mul, mul_ref);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RationalFunction::from_int(n)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        RationalFunction::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> RationalFunction {
        RationalFunction::var(x)
    }
    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }
    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn factor_cancellation() {
        let t = v(Var::T);
        let f = (c(1) - t.pow(2).unwrap()).checked_div(&(c(1) - t.clone())).unwrap();
        assert_eq!(f, c(1) + t);
    }

    #[test]
    fn self_difference_is_zero() {
        let f = (c(1) - v(Var::A) * v(Var::Q)).checked_div(&(c(1) - v(Var::B) * v(Var::Q))).unwrap();
        assert!((&f - &f).is_zero());
        assert_eq!(&f - &f, RationalFunction::zero());
    }

    #[test]
    fn inverse_times_self() {
        let bq = c(1) - v(Var::B) * v(Var::Q);
        let inv = bq.recip().unwrap();
        assert!((inv * bq).is_one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(c(1).checked_div(&RationalFunction::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_sign_and_content() {
        // (2 - 2t) / (4t - 4) == -1/2
        let f = RationalFunction::from_int_polys(
            IntPoly::constant(2.into()) - IntPoly::constant(2.into()) * IntPoly::var(Var::T),
            IntPoly::constant(4.into()) * IntPoly::var(Var::T) - IntPoly::constant(4.into()),
        )
        .unwrap();
        assert_eq!(f.as_rational(), Some(r(-1, 2)));
        assert_eq!(f.numer_int(), &IntPoly::constant((-1).into()));
        assert_eq!(f.denom_int(), &IntPoly::constant(2.into()));
    }

    #[test]
    fn substitution_of_reciprocal() {
        // 1/(1-bq) with b -> 1/t is t/(t-q)
        let f = (c(1) - v(Var::B) * v(Var::Q)).recip().unwrap();
        let g = f.substitute(Var::B, &v(Var::T).recip().unwrap()).unwrap();
        let expected = v(Var::T).checked_div(&(v(Var::T) - v(Var::Q))).unwrap();
        assert_eq!(g, expected);
        assert_eq!(f.substitute(Var::A, &v(Var::A)).unwrap(), f);
    }

    #[test]
    fn substitution_annihilating_denominator() {
        let f = (c(1) - v(Var::T)).recip().unwrap();
        assert!(matches!(f.substitute(Var::T, &c(1)), Err(Error::IdenticallyZeroDenominator(_))));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = (c(1) - v(Var::T)).recip().unwrap();
        let mut pt = [r(1, 2), r(1, 3), r(1, 5), r(1, 2)];
        assert_eq!(f.eval_at(&pt), Ok(r(2, 1)));
        pt[3] = r(1, 1);
        assert_eq!(f.eval_at(&pt), Err(Error::Pole));
        let g = ((c(1) - v(Var::A) * v(Var::Q)) * v(Var::T))
            .checked_div(&(c(1) - v(Var::B) * v(Var::Q)))
            .unwrap();
        assert_eq!(g.eval_at(&[r(1, 2), r(1, 3), r(1, 5), r(1, 7)]), Ok(r(25, 189)));
    }

    #[test]
    fn display() {
        let f = v(Var::T).checked_div(&(v(Var::T) - v(Var::Q))).unwrap();
        assert_eq!(f.to_string(), "-t/(-t + q)");
        assert_eq!(c(3).to_string(), "3");
    }
}
