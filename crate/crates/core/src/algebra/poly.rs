//! Sparse multivariate polynomials over an exact coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, Var, NVARS};

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Exact coefficient ring for [`Poly`].
pub trait Coeff:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Zero + One + Send + Sync
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_negative(&self) -> bool;
    /// `self / other` when the quotient exists in the ring.
    fn div_exact(&self, other: &Self) -> Option<Self>;

    /// Optional fast product; `None` falls back to the generic routine.
    fn mul_terms_fast(_a: &[(Monomial, Self)], _b: &[(Monomial, Self)]) -> Option<Vec<(Monomial, Self)>> {
        None
    }
}

impl Coeff for Integer {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (quot, rem) = self.div_rem(other);
        rem.is_zero().then_some(quot)
    }

    fn mul_terms_fast(a: &[(Monomial, Self)], b: &[(Monomial, Self)]) -> Option<Vec<(Monomial, Self)>> {
        let max_bits = |s: &[(Monomial, Integer)]| s.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
        let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
        if max_bits(a) + max_bits(b) + len_bits > 125 {
            return None;
        }
        let bs: Vec<(u64, i128)> = b.iter().map(|(m, c)| (m.packed(), c.to_i128().unwrap())).collect();
        let mut acc: FxHashMap<u64, i128> = FxHashMap::default();
        acc.reserve(a.len() * b.len() / 2 + 1);
        for (ma, ca) in a {
            let ca = ca.to_i128().unwrap();
            let pa = ma.packed();
            for &(pb, cb) in &bs {
                *acc.entry(pa + pb).or_insert(0) += ca * cb;
            }
        }
        Some(
            acc.into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(p, c)| (Monomial::from_packed(p), Integer::from(c)))
                .collect(),
        )
    }
}

impl Coeff for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

/// A polynomial in `(q, a, b, t)` stored as a list of nonzero terms sorted by
/// decreasing graded-lex monomial (leading term first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: Vec<(Monomial, C)>,
}

/// Polynomial with rational coefficients.
pub type Polynomial = Poly<Rational>;
/// Polynomial with integer coefficients; the working representation inside
/// rational functions.
pub type IntPoly = Poly<Integer>;

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Poly {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Terms must already be nonzero with distinct monomials.
    fn from_unsorted_unique(mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> [u32; NVARS] {
        let mut d = [0; NVARS];
        for (m, _) in &self.terms {
            for (i, slot) in d.iter_mut().enumerate() {
                *slot = (*slot).max(m.exp_at(i));
            }
        }
        d
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Coefficient of the exact monomial `m`.
    pub fn coeff_of(&self, m: Monomial) -> C {
        self.terms
            .binary_search_by(|(k, _)| m.cmp(k))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some(&(first, _)) => it.fold(first, |acc, &(m, _)| acc.min(m)),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.mul_ref(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: Monomial) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Divides every monomial by `mono`; the caller guarantees divisibility.
    pub fn div_monomial(&self, mono: Monomial) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(mono).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.terms, &other.terms);
        let take_other = |c: &C| if negate_other { c.neg_ref() } else { c.clone() };
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(x[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((y[j].0, take_other(&y[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { x[i].1.sub_ref(&y[j].1) } else { x[i].1.add_ref(&y[j].1) };
                    if !c.is_zero() {
                        out.push((x[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend(y[j..].iter().map(|(m, c)| (*m, take_other(c))));
        Poly { terms: out }
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg_poly(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(*m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(*m).scale(c);
        }
        if let Some(terms) = C::mul_terms_fast(&self.terms, &other.terms) {
            return Self::from_unsorted_unique(terms);
        }
        let mut acc: FxHashMap<u64, C> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca.mul_ref(cb);
                let key = ma.mul(*mb).packed();
                match acc.get_mut(&key) {
                    Some(slot) => *slot = slot.add_ref(&prod),
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        Self::from_unsorted_unique(
            acc.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(p, c)| (Monomial::from_packed(p), c))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.as_constant() {
            let terms: Option<Vec<_>> = self
                .terms
                .iter()
                .map(|(m, x)| x.div_exact(&c).map(|q| (*m, q)))
                .collect();
            return terms.map(|terms| Poly { terms });
        }
        let (dlead_m, dlead_c) = divisor.terms[0].clone();
        let sd = self.degrees();
        let dd = divisor.degrees();
        if (0..NVARS).any(|i| sd[i] < dd[i]) {
            return None;
        }
        if divisor.terms.len() == 1 {
            let terms: Option<Vec<_>> = self
                .terms
                .iter()
                .map(|(m, x)| Some((m.div(dlead_m)?, x.div_exact(&dlead_c)?)))
                .collect();
            return terms.map(|terms| Poly { terms });
        }
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        let tail = &divisor.terms[1..];
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(dlead_m)?;
            let qc = c.div_exact(&dlead_c)?;
            for (tm, tc) in tail {
                let key = qm.mul(*tm);
                let delta = qc.mul_ref(tc);
                match rem.get_mut(&key) {
                    Some(slot) => {
                        *slot = slot.sub_ref(&delta);
                        if slot.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, delta.neg_ref());
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Views the polynomial as univariate in `v`: returns coefficients indexed by the
    /// power of `v`, each free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        buckets.into_iter().map(|terms| Poly { terms }).collect()
    }
}

impl IntPoly {
    /// Nonnegative gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> Integer {
        let mut g = Integer::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn to_rational(&self) -> Polynomial {
        self.map_coeffs(|c| Rational::from_integer(c.clone()))
    }

    pub fn div_integer(&self, d: &Integer) -> IntPoly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c / d)).collect(),
        }
    }

    /// Primitive part with positive leading coefficient, together with the signed
    /// content removed.
    pub fn primitive_part(&self) -> (Integer, IntPoly) {
        if self.is_zero() {
            return (Integer::zero(), IntPoly::zero());
        }
        let mut c = self.content();
        if Coeff::is_negative(&self.terms[0].1) {
            c = -c;
        }
        (c.clone(), self.div_integer(&c))
    }
}

impl Polynomial {
    /// Clears denominators: returns `(p, d)` with integer polynomial `p = d * self`.
    pub fn clear_denominators(&self) -> (IntPoly, Integer) {
        let lcm = self
            .terms
            .iter()
            .fold(Integer::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let p = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.numer() * (&lcm / c.denom())))
                .collect(),
        };
        (p, lcm)
    }

    /// Scaled so the graded-lex leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact evaluation at a rational point given in `(q, a, b, t)` order.
    pub fn eval_rational(&self, point: &[Rational; NVARS]) -> Rational {
        eval_terms(&self.terms, point, |c| c.clone())
    }
}

impl IntPoly {
    pub fn eval_rational(&self, point: &[Rational; NVARS]) -> Rational {
        eval_terms(&self.terms, point, |c| Rational::from_integer(c.clone()))
    }
}

fn eval_terms<C>(terms: &[(Monomial, C)], point: &[Rational; NVARS], lift: impl Fn(&C) -> Rational) -> Rational {
    let mut powers: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
    let mut sum = Rational::zero();
    for (m, c) in terms {
        let mut term = lift(c);
        for (i, pw) in powers.iter_mut().enumerate() {
            let e = m.exp_at(i) as usize;
            while pw.len() <= e {
                let next = &pw[pw.len() - 1] * &point[i];
                pw.push(next);
            }
            if e > 0 {
                term *= &pw[e];
            }
        }
        sum += term;
    }
    sum
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Terms print in ascending canonical order, e.g. `1 + q + 2*q^2`.
impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<C: Coeff> $tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                self.$inner(rhs)
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                self.$inner(&rhs)
            }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                self.$inner(rhs)
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_poly);
forward_binop!(Sub, sub, sub_poly);
forward_binop!(Mul, mul, mul_poly);

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_poly()
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> IntPoly {
        IntPoly::var(x)
    }

    fn int(n: i64) -> IntPoly {
        IntPoly::constant(Integer::from(n))
    }

    #[test]
    fn difference_of_squares() {
        let t = v(Var::T);
        let p = (int(1) - t.clone()) * (int(1) + t.clone());
        assert_eq!(p, int(1) - t.pow(2));
    }

    #[test]
    fn additive_identity() {
        let p = int(3) * v(Var::A) - v(Var::Q).pow(2);
        assert_eq!(&p + &IntPoly::zero(), p);
    }

    #[test]
    fn schoolbook_product() {
        // (1 - aq)(1 - aq^2) = 1 - aq - aq^2 + a^2 q^3
        let (a, q) = (v(Var::A), v(Var::Q));
        let lhs = (int(1) - &a * &q) * (int(1) - &a * &q.pow(2));
        let expected = IntPoly::from_terms([
            (Monomial::ONE, Integer::from(1)),
            (Monomial::new([1, 1, 0, 0]), Integer::from(-1)),
            (Monomial::new([2, 1, 0, 0]), Integer::from(-1)),
            (Monomial::new([3, 2, 0, 0]), Integer::from(1)),
        ]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn generic_and_fast_products_agree() {
        let big = Integer::from(1u64 << 62) * Integer::from(1u64 << 62);
        let p = IntPoly::constant(big.clone()) * v(Var::Q) + int(1) + v(Var::A);
        let r = v(Var::Q) - int(7) + v(Var::T);
        let prod = &p * &r;
        let rp = p.to_rational() * r.to_rational();
        assert_eq!(prod.to_rational(), rp);
    }

    #[test]
    fn exact_division() {
        let (a, b, q) = (v(Var::A), v(Var::B), v(Var::Q));
        let f = int(1) - &a * &q + &b;
        let g = &b * &b - &q + int(2);
        let h = &f * &g;
        assert_eq!(h.div_exact(&g), Some(f.clone()));
        assert_eq!((&h + &int(1)).div_exact(&g), None);
        assert_eq!(IntPoly::zero().div_exact(&g), Some(IntPoly::zero()));
    }

    #[test]
    fn display_ascending() {
        let q = v(Var::Q);
        let p = int(1) + q.clone() + int(2) * q.pow(2) + q.pow(3) + q.pow(4);
        assert_eq!(p.to_string(), "1 + q + 2*q^2 + q^3 + q^4");
        let r = int(1) - v(Var::A) * q.clone();
        assert_eq!(r.to_string(), "1 - a*q");
        assert_eq!((-r).to_string(), "-1 + a*q");
    }

    #[test]
    fn evaluation() {
        let p = (int(1) - v(Var::A) * v(Var::Q)) * v(Var::T);
        let pt = [
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 3.into()),
            Rational::new(1.into(), 5.into()),
            Rational::new(1.into(), 7.into()),
        ];
        assert_eq!(p.eval_rational(&pt), Rational::new(5.into(), 42.into()));
    }
}
