//! A minimal field interface so the same builders can run symbolically, at exact
//! rational points, or over truncated power series.

use std::fmt;

use num_traits::{One, Zero};

use super::monomial::{Var, NVARS};
use super::poly::{Polynomial, Rational};
use super::ratfunc::RationalFunction;
use crate::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + Sized {
    /// The constant `r` in the same ambient structure as `self`.
    fn constant_like(&self, r: &Rational) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// The error reported when dividing by an element of this type that is zero.
    fn division_error(context: String) -> Error;

    /// Multiplicative inverse; only zero may fail.
    fn try_recip(&self) -> Result<Self>;

    fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.try_recip()?))
    }

    fn zero_like(&self) -> Self {
        self.constant_like(&Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.constant_like(&Rational::one())
    }

    fn int_like(&self, n: i64) -> Self {
        self.constant_like(&Rational::from_integer(n.into()))
    }

    /// `1 - self`
    fn one_minus(&self) -> Self {
        self.one_like().sub(self)
    }

    fn powu(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn pow(&self, e: i64) -> Result<Self> {
        let p = self.powu(e.unsigned_abs());
        if e < 0 { p.try_recip() } else { Ok(p) }
    }

    /// Value of a univariate polynomial in `q` (only `q` exponents are read).
    fn q_poly(p: &Polynomial, q: &Self) -> Self {
        let mut coeffs = p.coefficients_in(Var::Q);
        let mut acc = q.zero_like();
        while let Some(c) = coeffs.pop() {
            let c = c.as_constant().unwrap_or_else(Rational::zero);
            acc = acc.mul(q).add(&q.constant_like(&c));
        }
        acc
    }
}

impl Field for Rational {
    fn constant_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn division_error(_: String) -> Error {
        Error::Pole
    }
    fn try_recip(&self) -> Result<Self> {
        if Zero::is_zero(self) { Err(Error::Pole) } else { Ok(num_traits::Inv::inv(self)) }
    }
}

impl Field for RationalFunction {
    fn constant_like(&self, r: &Rational) -> Self {
        RationalFunction::from_rational(r)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn division_error(context: String) -> Error {
        Error::IdenticallyZeroDenominator(context)
    }
    fn try_recip(&self) -> Result<Self> {
        self.recip().map_err(|_| Self::division_error("division by the zero function".into()))
    }
}

/// Values for the four variables `(q, a, b, t)` in some field.
#[derive(Clone, Debug, PartialEq)]
pub struct Vars<K> {
    pub q: K,
    pub a: K,
    pub b: K,
    pub t: K,
}

impl Vars<RationalFunction> {
    pub fn symbolic() -> Self {
        Vars {
            q: RationalFunction::var(Var::Q),
            a: RationalFunction::var(Var::A),
            b: RationalFunction::var(Var::B),
            t: RationalFunction::var(Var::T),
        }
    }
}

impl Vars<Rational> {
    pub fn at(point: &[Rational; NVARS]) -> Self {
        let [q, a, b, t] = point.clone();
        Vars { q, a, b, t }
    }
}

impl<K: Field> Vars<K> {
    pub fn get(&self, v: Var) -> &K {
        match v {
            Var::Q => &self.q,
            Var::A => &self.a,
            Var::B => &self.b,
            Var::T => &self.t,
        }
    }

    /// The same `q` with new values for `a`, `b`, `t`.
    pub fn with(&self, a: K, b: K, t: K) -> Self {
        Vars { q: self.q.clone(), a, b, t }
    }

    pub fn int(&self, n: i64) -> K {
        self.q.int_like(n)
    }

    pub fn one(&self) -> K {
        self.q.one_like()
    }

    /// `q^e`, with negative exponents as reciprocals.
    pub fn qpow(&self, e: i64) -> Result<K> {
        self.q.pow(e)
    }

    /// `q^e` for `e >= 0`.
    pub fn qp(&self, e: u64) -> K {
        self.q.powu(e)
    }
}

/// Value of `p` at `vars`.
pub fn eval_poly<K: Field>(p: &Polynomial, vars: &Vars<K>) -> K {
    let mut acc = vars.q.zero_like();
    for (m, c) in p.terms() {
        let mut term = vars.q.constant_like(c);
        for v in Var::ALL {
            let e = m.exp(v);
            if e > 0 {
                term = term.mul(&vars.get(v).powu(u64::from(e)));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// Value of `f` at `vars`.
pub fn eval_ratfunc<K: Field>(f: &RationalFunction, vars: &Vars<K>) -> Result<K> {
    eval_poly(&f.numer(), vars).try_div(&eval_poly(&f.denom(), vars))
}
