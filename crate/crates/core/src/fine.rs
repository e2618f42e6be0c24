//! The finite Fine function and the other named finite series, built over any
//! [`Field`] so they serve symbolic, sampled and series evaluation alike.

use crate::algebra::{Field, RationalFunction, Vars};
use crate::qkernel::{qbinom_at, qpoch_at};
use crate::{Error, Result};

/// `F_N(a,b;t)` at the values in `v`.
///
/// Each term is taken in the reduced form
/// `[N n] (aq)_n (q)_n t^n / ((bq)_n (t q^{N-n})_n)`, which is the defining
/// term with `(t)_{N-n} / (t)_N` cancelled.
pub fn fine_at<K: Field>(big_n: usize, v: &Vars<K>) -> Result<K> {
    let q = &v.q;
    let aq = v.a.mul(q);
    let bq = v.b.mul(q);
    let mut sum = q.zero_like();
    for n in 0..=big_n {
        let num = qbinom_at(big_n as i64, n as i64, 1, q)
            .mul(&qpoch_at(&aq, n, 1, q))
            .mul(&qpoch_at(q, n, 1, q))
            .mul(&v.t.powu(n as u64));
        let den = qpoch_at(&bq, n, 1, q).mul(&qpoch_at(&v.t.mul(&q.powu((big_n - n) as u64)), n, 1, q));
        sum = sum.add(&num.try_div(&den)?);
    }
    Ok(sum)
}

/// `F_N(a,b;t)` as a rational function of `(q, a, b, t)`.
pub fn fine_n(big_n: usize) -> RationalFunction {
    fine_at(big_n, &Vars::symbolic()).expect("symbolic finite Fine function has no poles")
}

/// The Andrews-Bell partial sum `F(a,b,t,N) = sum_{n<=N} (aq)_n t^n / (bq)_n`.
pub fn andrews_bell_at<K: Field>(big_n: usize, v: &Vars<K>) -> Result<K> {
    let q = &v.q;
    let mut term = q.one_like();
    let mut sum = term.clone();
    for n in 0..big_n {
        let qn1 = q.powu(n as u64 + 1);
        term = term.mul(&v.a.mul(&qn1).one_minus()).mul(&v.t).try_div(&v.b.mul(&qn1).one_minus())?;
        sum = sum.add(&term);
    }
    Ok(sum)
}

pub fn andrews_bell_f(big_n: usize) -> RationalFunction {
    andrews_bell_at(big_n, &Vars::symbolic()).expect("symbolic Andrews-Bell sum has no poles")
}

/// The remainder `R_{1,N}(a,b,t)`.
pub fn r1n_at<K: Field>(big_n: usize, v: &Vars<K>) -> Result<K> {
    if big_n < 1 {
        return Err(Error::ConstraintViolation("R_{1,N} needs N >= 1".into()));
    }
    let q = &v.q;
    let one_t = v.t.one_minus();
    let b_atq = v.b.sub(&v.a.mul(&v.t).mul(q));
    let mut term = q.one_like();
    let mut sum = q.zero_like();
    for j in 0..=big_n {
        if j > 0 {
            let qj = q.powu(j as u64);
            term = term.mul(&v.a.mul(&qj).one_minus()).mul(&v.t).try_div(&v.b.mul(&qj).one_minus())?;
        }
        let tail = b_atq.mul(&q.powu(j as u64)).try_div(&one_t)?;
        sum = sum.add(&term.mul(&tail.one_minus()));
    }
    Ok(sum.add(&v.b.sub(&v.one()).try_div(&one_t)?))
}

pub fn r1n(big_n: usize) -> Result<RationalFunction> {
    r1n_at(big_n, &Vars::symbolic())
}

/// A terminating `3phi2` summed over exactly `terms + 1` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Phi32Spec<K> {
    pub upper: [K; 3],
    pub lower: [K; 2],
    pub z: K,
    pub terms: usize,
}

/// `sum_{n=0}^{M} (u1)_n (u2)_n (u3)_n z^n / ((q)_n (l1)_n (l2)_n)`.
///
/// Once a term vanishes every later term does too, so summation stops there.
pub fn phi32<K: Field>(spec: &Phi32Spec<K>, q: &K) -> Result<K> {
    let mut term = q.one_like();
    let mut sum = term.clone();
    let mut qk = q.one_like();
    for n in 1..=spec.terms {
        let mut num = spec.z.clone();
        for u in &spec.upper {
            num = num.mul(&u.mul(&qk).one_minus());
        }
        let mut den = qk.mul(q).one_minus();
        for l in &spec.lower {
            den = den.mul(&l.mul(&qk).one_minus());
        }
        if den.is_zero() {
            return Err(K::division_error(format!("3phi2 denominator vanishes at n={n}")));
        }
        term = term.mul(&num).try_div(&den)?;
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
        qk = qk.mul(q);
    }
    Ok(sum)
}

/// The finite partial fraction form
/// `(1 - tq^N)(aq)_N/(bq)_N sum [N n] (b/a)_n (aq)_{N-n} (aq)^n / ((aq)_N (1 - tq^n))`,
/// with `(b/a)_n a^n` expanded as `prod_{k<n} (a - b q^k)`.
pub fn partial_fraction_at<K: Field>(big_n: usize, v: &Vars<K>) -> Result<K> {
    let q = &v.q;
    let aq = v.a.mul(q);
    let mut cleared = q.one_like();
    let mut sum = q.zero_like();
    for n in 0..=big_n {
        if n > 0 {
            cleared = cleared.mul(&v.a.sub(&v.b.mul(&q.powu(n as u64 - 1))));
        }
        let qn = q.powu(n as u64);
        let num = qbinom_at(big_n as i64, n as i64, 1, q)
            .mul(&cleared)
            .mul(&qn)
            .mul(&qpoch_at(&aq, big_n - n, 1, q));
        sum = sum.add(&num.try_div(&v.t.mul(&qn).one_minus())?);
    }
    let pre = v.t.mul(&q.powu(big_n as u64)).one_minus().try_div(&qpoch_at(&v.b.mul(q), big_n, 1, q))?;
    Ok(pre.mul(&sum))
}

pub fn partial_fraction_rhs(big_n: usize) -> Result<RationalFunction> {
    partial_fraction_at(big_n, &Vars::symbolic())
}

/// The finite Rogers-Fine form
/// `(1 - tq^N) sum [N n] (aq)_n (q)_n (atq/b)_n (atq^2)_{N-1} (tb)^n q^{n^2} (1 - atq^{2n+1})
///  / ((bq)_n (t)_{n+1} (atq^2)_{N+n})`,
/// with `(atq/b)_n b^n` expanded as `prod_{k<n} (b - atq^{k+1})`.
///
/// At `N = 0` the factor `(atq^2)_{-1}` is read as `1/(1 - atq)`.
pub fn rogers_fine_finite_at<K: Field>(big_n: usize, v: &Vars<K>) -> Result<K> {
    let q = &v.q;
    let at = v.a.mul(&v.t);
    let aq = v.a.mul(q);
    let bq = v.b.mul(q);
    let mut cleared = q.one_like();
    let mut sum = q.zero_like();
    for n in 0..=big_n {
        let nu = n as u64;
        if n > 0 {
            cleared = cleared.mul(&v.b.sub(&at.mul(&q.powu(nu))));
        }
        let num = qbinom_at(big_n as i64, n as i64, 1, q)
            .mul(&qpoch_at(&aq, n, 1, q))
            .mul(&qpoch_at(q, n, 1, q))
            .mul(&cleared)
            .mul(&v.t.powu(nu))
            .mul(&q.powu(nu * nu))
            .mul(&at.mul(&q.powu(2 * nu + 1)).one_minus());
        // (atq^2)_{N-1} / (atq^2)_{N+n} = 1 / (atq^{N+1})_{n+1}
        let den = qpoch_at(&bq, n, 1, q)
            .mul(&qpoch_at(&v.t, n + 1, 1, q))
            .mul(&qpoch_at(&at.mul(&q.powu(big_n as u64 + 1)), n + 1, 1, q));
        sum = sum.add(&num.try_div(&den)?);
    }
    Ok(v.t.mul(&q.powu(big_n as u64)).one_minus().mul(&sum))
}

pub fn rogers_fine_finite_rhs(big_n: usize) -> Result<RationalFunction> {
    rogers_fine_finite_at(big_n, &Vars::symbolic())
}
