//! q-Pochhammer symbols, Gaussian binomials and the two elementary product
//! identities the transformation proofs lean on.

use std::cell::RefCell;

use rustc_hash::FxHashMap;

use crate::algebra::{Field, Monomial, Polynomial, Rational, RationalFunction, Var, Vars};
use crate::{Error, Result};

/// `(x; q^m)_n = (1 - x)(1 - x q^m) ... (1 - x q^{m(n-1)})`.
pub fn qpoch_at<K: Field>(x: &K, n: usize, m: u32, q: &K) -> K {
    let step = q.powu(u64::from(m));
    let mut acc = x.one_like();
    let mut xk = x.clone();
    for k in 0..n {
        acc = acc.mul(&xk.one_minus());
        if k + 1 < n {
            xk = xk.mul(&step);
        }
    }
    acc
}

/// `(x; q)_n` with `n` possibly negative, using `(x)_{-k} = 1 / (x q^{-k})_k`.
pub fn qpoch_signed<K: Field>(x: &K, n: i64, q: &K) -> Result<K> {
    if n >= 0 {
        return Ok(qpoch_at(x, n as usize, 1, q));
    }
    let shifted = x.mul(&q.pow(n)?);
    qpoch_at(&shifted, n.unsigned_abs() as usize, 1, q).try_recip()
}

/// `(A; q^m)_n` over the symbolic variables.
pub fn qpoch(a: &RationalFunction, n: usize, m: u32) -> RationalFunction {
    qpoch_at(a, n, m, &RationalFunction::var(Var::Q))
}

fn qpoch_q_poly(n: usize, m: u32) -> Polynomial {
    let mut acc = Polynomial::one();
    for k in 1..=n as u32 {
        acc = &acc * &(Polynomial::one() - Polynomial::monomial(Monomial::var(Var::Q, m * k), Rational::from_integer(1.into())));
    }
    acc
}

/// Gaussian binomial `[N n]` in base `q^m` as a polynomial in `q`; zero outside
/// `0 <= n <= N`.
pub fn qbinom(big_n: i64, n: i64, m: u32) -> Result<Polynomial> {
    if n < 0 || n > big_n {
        return Ok(Polynomial::zero());
    }
    let (big_n, n) = (big_n as usize, n as usize);
    let den = &qpoch_q_poly(n, m) * &qpoch_q_poly(big_n - n, m);
    qpoch_q_poly(big_n, m)
        .div_exact(&den)
        .ok_or_else(|| Error::Internal(format!("q-binomial [{big_n} {n}] base q^{m} left a remainder")))
}

thread_local! {
    static QBINOM_CACHE: RefCell<FxHashMap<(i64, i64, u32), Polynomial>> = RefCell::new(FxHashMap::default());
}

fn qbinom_cached(big_n: i64, n: i64, m: u32) -> Polynomial {
    QBINOM_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry((big_n, n, m))
            .or_insert_with(|| qbinom(big_n, n, m).expect("q-binomial division is exact"))
            .clone()
    })
}

/// Value of `[N n]` in base `q^m` at `q`.
pub fn qbinom_at<K: Field>(big_n: i64, n: i64, m: u32, q: &K) -> K {
    K::q_poly(&qbinom_cached(big_n, n, m), q)
}

/// `n(n-1)/2`
pub fn triangular(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `q^{n(n-1)/2}` (`shift = 0`) or `q^{n(n+1)/2}` (`shift = 1`).
pub fn triangular_qpow<K: Field>(n: i64, shift: i64, q: &K) -> Result<K> {
    q.pow(triangular(n + shift))
}

/// `(q^{-N}/c)_n = (-1)^n (c q^{N-n+1})_n q^{n(n-1)/2} / (c^n q^{Nn})`
pub fn check_elem_shift(big_n: usize, n: usize, c: &RationalFunction) -> Result<bool> {
    let v = Vars::symbolic();
    let big_n = big_n as i64;
    let ni = n as i64;
    let lhs = qpoch_at(&v.qpow(-big_n)?.try_div(c)?, n, 1, &v.q);
    let sign = if n % 2 == 0 { v.one() } else { v.int(-1) };
    let rhs = sign
        .mul(&qpoch_at(&c.mul(&v.qpow(big_n - ni + 1)?), n, 1, &v.q))
        .mul(&v.qpow(triangular(ni))?)
        .try_div(&c.powu(n as u64).mul(&v.qpow(big_n * ni)?))?;
    Ok(lhs == rhs)
}

/// `(b)_N (a)_{N-n} a^n / ((a)_N (b)_{N-n} b^n) = (q^{1-N}/b)_n / (q^{1-N}/a)_n`
pub fn check_gr11(a: &RationalFunction, b: &RationalFunction, big_n: usize, n: usize) -> Result<bool> {
    let q = RationalFunction::var(Var::Q);
    let degenerate = |what: &str| Error::IdenticallyZeroDenominator(format!("{what} vanishes at N={big_n}, n={n}"));
    let lhs_den = qpoch_at(a, big_n, 1, &q)
        .mul(&qpoch_at(b, big_n - n, 1, &q))
        .mul(&b.powu(n as u64));
    if lhs_den.is_zero() {
        return Err(degenerate("(a)_N (b)_{N-n} b^n"));
    }
    let lhs = qpoch_at(b, big_n, 1, &q)
        .mul(&qpoch_at(a, big_n - n, 1, &q))
        .mul(&a.powu(n as u64))
        .try_div(&lhs_den)?;
    let base = q.pow(1 - big_n as i64)?;
    let rhs_den = qpoch_at(&base.try_div(a)?, n, 1, &q);
    if rhs_den.is_zero() {
        return Err(degenerate("(q^{1-N}/a)_n"));
    }
    let rhs = qpoch_at(&base.try_div(b)?, n, 1, &q).try_div(&rhs_den)?;
    Ok(lhs == rhs)
}
