use crate::algebra::{Field, Rational, RationalFunction, Vars};
use crate::fine::{andrews_bell_at, fine_at, fine_n, partial_fraction_at, phi32, r1n_at, rogers_fine_finite_at, Phi32Spec};
use crate::qkernel::{qbinom_at, qpoch_at};
use crate::Result;

use super::{Builder, Form, FormKind, Identity, Params, Post};

macro_rules! side {
    ($f:ident) => {
        Builder { sym: $f::<RationalFunction>, exact: $f::<Rational> }
    };
}

fn form(name: &'static str, kind: FormKind, lhs: Builder, rhs: Builder) -> Form {
    Form { name, kind, lhs, rhs }
}

fn at<K: Field>(v: &Vars<K>, a: &K, b: &K, t: &K) -> Vars<K> {
    v.with(a.clone(), b.clone(), t.clone())
}

fn fine<K: Field>(n: usize, v: &Vars<K>, a: &K, b: &K, t: &K) -> Result<K> {
    fine_at(n, &at(v, a, b, t))
}

fn poch<K: Field>(x: &K, n: usize, v: &Vars<K>) -> K {
    qpoch_at(x, n, 1, &v.q)
}

fn qb<K: Field>(big_n: usize, n: usize, v: &Vars<K>) -> K {
    qbinom_at(big_n as i64, n as i64, 1, &v.q)
}

fn qp<K: Field>(v: &Vars<K>, e: usize) -> K {
    v.qp(e as u64)
}

fn sign<K: Field>(v: &Vars<K>, n: usize) -> K {
    if n % 2 == 0 { v.one() } else { v.int(-1) }
}

/// `1 - x q^e`
fn om<K: Field>(x: &K, v: &Vars<K>, e: usize) -> K {
    x.mul(&qp(v, e)).one_minus()
}

fn sum_n<K: Field>(big_n: usize, v: &Vars<K>, mut term: impl FnMut(usize) -> Result<K>) -> Result<K> {
    let mut acc = v.q.zero_like();
    for n in 0..=big_n {
        acc = acc.add(&term(n)?);
    }
    Ok(acc)
}

/// `prod_{k<n} (x - y q^{k+s})`
fn cleared<K: Field>(x: &K, y: &K, n: usize, s: usize, v: &Vars<K>) -> K {
    (0..n).fold(v.one(), |acc, k| acc.mul(&x.sub(&y.mul(&qp(v, k + s)))))
}

// The finite Fine function at shifted truncation orders.

fn f_n<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    fine_at(p.n(), v)
}

fn f_n1<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    fine_at(p.n() + 1, v)
}

fn f_n2<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    fine_at(p.n() + 2, v)
}

// Andrews-Bell recurrence with remainder.

fn ab_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    andrews_bell_at(p.n(), v)
}

fn ab1_rhs_with<K: Field>(n: usize, v: &Vars<K>, inner: K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let atq = a.mul(t).mul(q);
    let one_t = t.one_minus();
    let first = atq.one_minus().try_div(&one_t)?;
    let k = a.mul(q).one_minus().mul(&b.sub(&atq)).try_div(&b.mul(q).one_minus().mul(&one_t))?;
    Ok(first.add(&k.mul(&t.mul(q)).mul(&inner)).add(&r1n_at(n, v)?))
}

fn ab1_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    ab1_rhs_with(p.n(), v, andrews_bell_at(p.n(), v)?)
}

fn ab1_shifted<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let inner = andrews_bell_at(p.n(), &at(v, &a.mul(q), &b.mul(q), &t.mul(q)))?;
    ab1_rhs_with(p.n(), v, inner)
}

fn ab1_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let inner = andrews_bell_at(p.n() - 1, &at(v, &a.mul(q), &b.mul(q), &t.mul(q)))?;
    ab1_rhs_with(p.n(), v, inner)
}

// Partial fractions, Rogers-Fine, and the 3phi2 bridge.

fn pf1_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    partial_fraction_at(p.n(), v)
}

fn rf1_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    rogers_fine_finite_at(p.n(), v)
}

fn qneg<K: Field>(v: &Vars<K>, n: usize) -> Result<K> {
    v.qpow(-(n as i64))
}

fn br1_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let spec = Phi32Spec {
        upper: [qneg(v, n)?, q.clone(), a.mul(q)],
        lower: [b.mul(q), v.qpow(1 - n as i64)?.try_div(t)?],
        z: q.clone(),
        terms: n,
    };
    phi32(&spec, q)
}

// Andrews' corollary with a free slot c, and its Lemma 1.

fn ac3_lhs_with<K: Field>(n: usize, v: &Vars<K>, c: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let spec = Phi32Spec {
        upper: [qneg(v, n)?, a.mul(b).mul(t).try_div(c)?, b.clone()],
        lower: [b.mul(t), b.mul(&v.qpow(1 - n as i64)?).try_div(c)?],
        z: q.clone(),
        terms: n,
    };
    phi32(&spec, q)
}

fn ac3_rhs_with<K: Field>(n: usize, v: &Vars<K>, c: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let pre = poch(c, n, v)
        .mul(&poch(t, n, v))
        .try_div(&poch(&c.try_div(b)?, n, v).mul(&poch(&b.mul(t), n, v)))?;
    let spec = Phi32Spec {
        upper: [qneg(v, n)?, a.clone(), b.clone()],
        lower: [c.clone(), v.qpow(1 - n as i64)?.try_div(t)?],
        z: q.clone(),
        terms: n,
    };
    Ok(pre.mul(&phi32(&spec, q)?))
}

fn c_atq<K: Field>(v: &Vars<K>) -> K {
    v.a.mul(&v.t).mul(&v.q)
}

fn c_bt<K: Field>(v: &Vars<K>) -> K {
    v.b.mul(&v.t)
}

fn ac3_lhs_atq<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    ac3_lhs_with(p.n(), v, &c_atq(v))
}

fn ac3_rhs_atq<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    ac3_rhs_with(p.n(), v, &c_atq(v))
}

fn ac3_lhs_bt<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    ac3_lhs_with(p.n(), v, &c_bt(v))
}

fn ac3_rhs_bt<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    ac3_rhs_with(p.n(), v, &c_bt(v))
}

fn al1_lhs_with<K: Field>(n: usize, v: &Vars<K>, c: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let spec = Phi32Spec {
        upper: [qneg(v, n)?, a.clone(), b.clone()],
        lower: [c.clone(), v.qpow(1 - n as i64)?.try_div(t)?],
        z: q.clone(),
        terms: n,
    };
    phi32(&spec, q)
}

fn al1_rhs_with<K: Field>(n: usize, v: &Vars<K>, c: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let at_ = a.mul(t);
    let pre = poch(&at_, n, v).try_div(&poch(t, n, v))?;
    let spec = Phi32Spec {
        upper: [qneg(v, n)?, c.try_div(b)?, a.clone()],
        lower: [c.clone(), at_],
        z: b.mul(t).mul(&qp(v, n)),
        terms: n,
    };
    Ok(pre.mul(&phi32(&spec, q)?))
}

fn al1_lhs_atq<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    al1_lhs_with(p.n(), v, &c_atq(v))
}

fn al1_rhs_atq<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    al1_rhs_with(p.n(), v, &c_atq(v))
}

fn al1_lhs_bt<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    al1_lhs_with(p.n(), v, &c_bt(v))
}

fn al1_rhs_bt<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    al1_rhs_with(p.n(), v, &c_bt(v))
}

// Section two: specializations of the transformations.

fn hn1_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let at_ = a.mul(t);
    let pre = b.one_minus().mul(&om(t, v, n)).try_div(&t.one_minus().mul(&om(b, v, n)))?;
    let s = sum_n(n, v, |k| {
        // (atq/b)_k b^k = prod (b - atq^{j+1}); (b)_{N-k}/(b)_N = 1/(bq^{N-k})_k
        let num = qb(n, k, v).mul(&cleared(b, &at_, k, 1, v)).mul(&poch(q, k, v));
        let den = poch(&t.mul(q), k, v).mul(&poch(&b.mul(&qp(v, n - k)), k, v));
        num.try_div(&den)
    })?;
    Ok(pre.mul(&s))
}

fn hn1_phi<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let pre = om(t, v, n).mul(&b.one_minus()).try_div(&om(b, v, n).mul(&t.one_minus()))?;
    let spec = Phi32Spec {
        upper: [qneg(v, n)?, a.mul(t).mul(q).try_div(b)?, q.clone()],
        lower: [t.mul(q), v.qpow(1 - n as i64)?.try_div(b)?],
        z: q.clone(),
        terms: n,
    };
    Ok(pre.mul(&phi32(&spec, q)?))
}

fn hn2_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let pre = om(t, v, n).try_div(&t.one_minus())?;
    let s = sum_n(n, v, |k| {
        // (b/a)_k a^k = prod (a - bq^j)
        let num = sign(v, k)
            .mul(&qb(n, k, v))
            .mul(&cleared(a, b, k, 0, v))
            .mul(&poch(q, k, v))
            .mul(&t.powu(k as u64))
            .mul(&qp(v, k * (k + 1) / 2));
        num.try_div(&poch(&b.mul(q), k, v).mul(&poch(&t.mul(q), k, v)))
    })?;
    Ok(pre.mul(&s))
}

fn hn2_phi<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let pre = poch(&t.mul(q), n, v).try_div(&poch(t, n, v))?;
    let spec = Phi32Spec {
        upper: [qneg(v, n)?, b.try_div(a)?, q.clone()],
        lower: [b.mul(q), t.mul(q)],
        z: a.mul(t).mul(&qp(v, n + 1)),
        terms: n,
    };
    Ok(pre.mul(&phi32(&spec, q)?))
}

fn b0_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    fine(p.n(), v, &v.a, &v.q.zero_like(), &v.t)
}

fn b0_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, t) = (&v.q, &v.a, &v.t);
    let pre = om(t, v, n).try_div(&t.one_minus())?;
    let s = sum_n(n, v, |k| {
        let num = sign(v, k)
            .mul(&qb(n, k, v))
            .mul(&poch(q, k, v))
            .mul(&a.mul(t).powu(k as u64))
            .mul(&qp(v, k * (k + 1) / 2));
        num.try_div(&poch(&t.mul(q), k, v))
    })?;
    Ok(pre.mul(&s))
}

/// `(1 - t) F_N(0, b; t)`
fn one_minus_t_f0<K: Field>(n: usize, v: &Vars<K>, b: &K) -> Result<K> {
    Ok(v.t.one_minus().mul(&fine(n, v, &v.q.zero_like(), b, &v.t)?))
}

fn a0_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    one_minus_t_f0(p.n(), v, &v.b)
}

fn a0_sum<K: Field>(n: usize, v: &Vars<K>, b: &K) -> Result<K> {
    let (q, t) = (&v.q, &v.t);
    let s = sum_n(n, v, |k| {
        let num = qb(n, k, v).mul(&poch(q, k, v)).mul(&b.mul(t).powu(k as u64)).mul(&qp(v, k * k));
        num.try_div(&poch(&b.mul(q), k, v).mul(&poch(&t.mul(q), k, v)))
    })?;
    Ok(om(t, v, n).mul(&s))
}

fn a0_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    a0_sum(p.n(), v, &v.b)
}

fn th_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    one_minus_t_f0(p.n(), v, &v.t.try_recip()?)
}

/// `n`-th term of the theta sum, `[N n] (q)_n q^{n^2} / prod_{k=1}^{n} (1 - q^k (t + 1/t) + q^{2k})`.
fn th_term<K: Field>(n: usize, k: usize, v: &Vars<K>) -> Result<K> {
    let (q, t) = (&v.q, &v.t);
    let two_cos = t.add(&t.try_recip()?);
    let mut den = v.one();
    for j in 1..=k {
        den = den.mul(&v.one().sub(&qp(v, j).mul(&two_cos)).add(&qp(v, 2 * j)));
    }
    qb(n, k, v).mul(&poch(q, k, v)).mul(&qp(v, k * k)).try_div(&den)
}

fn th_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let mut acc = om(&v.t, v, n);
    for k in 1..=n {
        acc = acc.add(&th_term(n, k, v)?);
    }
    Ok(acc)
}

fn th_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    Ok(om(&v.t, v, n).mul(&sum_n(n, v, |k| th_term(n, k, v))?))
}

fn bt_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    one_minus_t_f0(p.n(), v, &v.t)
}

fn bt_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, t) = (&v.q, &v.t);
    let s = sum_n(n, v, |k| {
        let tq = poch(&t.mul(q), k, v);
        qb(n, k, v)
            .mul(&poch(q, k, v))
            .mul(&t.powu(2 * k as u64))
            .mul(&qp(v, k * k))
            .try_div(&tq.mul(&tq))
    })?;
    Ok(om(t, v, n).mul(&s))
}

// Mixed bases q^m with t = q^r.

fn mr(p: &Params) -> (u32, usize) {
    (p.get("m").unwrap_or(1) as u32, p.get("r").unwrap_or(1) as usize)
}

fn mb_lhs_with<K: Field>(p: &Params, v: &Vars<K>, outer_base: u32) -> Result<K> {
    let n = p.n();
    let (m, r) = mr(p);
    let q = &v.q;
    let qm = q.powu(u64::from(m));
    let qr = qp(v, r);
    let full = qpoch_at(&qr, n, outer_base, q);
    sum_n(n, v, |k| {
        let num = qbinom_at(n as i64, k as i64, m, q)
            .mul(&qpoch_at(&qm, k, m, q))
            .mul(&qpoch_at(&qr, n - k, outer_base, q))
            .mul(&qp(v, r * k));
        num.try_div(&full.mul(&qpoch_at(&qr, k + 1, m, q)))
    })
}

fn mb_rhs_with<K: Field>(p: &Params, v: &Vars<K>, pre_exp: usize) -> Result<K> {
    let n = p.n();
    let (m, r) = mr(p);
    let q = &v.q;
    let qm = q.powu(u64::from(m));
    let qr = qp(v, r);
    let s = sum_n(n, v, |k| {
        let d = qpoch_at(&qr, k + 1, m, q);
        qbinom_at(n as i64, k as i64, m, q)
            .mul(&qpoch_at(&qm, k, m, q))
            .mul(&qp(v, m as usize * k * k + 2 * r * k))
            .try_div(&d.mul(&d))
    })?;
    Ok(qp(v, pre_exp).one_minus().mul(&s))
}

fn mb_lhs_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    mb_lhs_with(p, v, 1)
}

fn mb_rhs_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (_, r) = mr(p);
    mb_rhs_with(p, v, p.n() + r)
}

fn mb_lhs_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (m, _) = mr(p);
    mb_lhs_with(p, v, m)
}

fn mb_rhs_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (m, r) = mr(p);
    mb_rhs_with(p, v, p.n() * m as usize + r)
}

fn he1_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let atq = a.mul(t).mul(q);
    let pre = poch(&atq, n, v).mul(&poch(q, n, v)).try_div(&poch(t, n, v).mul(&poch(&b.mul(q), n, v)))?;
    let s = sum_n(n, v, |k| {
        poch(b, k, v)
            .mul(&poch(t, k, v))
            .mul(&qp(v, k))
            .try_div(&poch(&atq, k, v).mul(&poch(q, k, v)))
    })?;
    Ok(pre.mul(&s))
}

fn b1_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    fine(p.n(), v, &v.a, &v.one(), &v.t)
}

fn b1_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    poch(&v.a.mul(&v.t).mul(&v.q), n, v).try_div(&poch(&v.t, n, v))
}

fn t1l_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    Ok(v.t.one_minus().mul(&fine_at(p.n(), v)?))
}

fn t1l_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let q = &v.q;
    qp(v, n).one_minus().mul(&poch(&v.a.mul(q), n, v)).try_div(&poch(&v.b.mul(q), n, v))
}

fn fa_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    poch(&v.b.mul(&v.q), p.n(), v).try_recip()
}

fn fa_sum<K: Field>(n: usize, v: &Vars<K>) -> Result<K> {
    let (q, b) = (&v.q, &v.b);
    sum_n(n, v, |k| {
        qb(n, k, v)
            .mul(&poch(q, k, v))
            .mul(&b.powu(k as u64))
            .mul(&qp(v, k * k))
            .try_div(&poch(&b.mul(q), k, v).mul(&poch(q, k, v)))
    })
}

fn fa_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    Ok(qp(v, p.n()).one_minus().mul(&fa_sum(p.n(), v)?))
}

fn fa_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    fa_sum(p.n(), v)
}

fn fb0_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    fine(p.n(), v, &v.b.try_div(&v.t)?, &v.q.zero_like(), &v.t)
}

fn fb0_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, b, t) = (&v.q, &v.b, &v.t);
    let pre = poch(&b.mul(q), n, v).mul(&poch(q, n, v)).try_div(&poch(t, n, v))?;
    let s = sum_n(n, v, |k| poch(t, k, v).mul(&qp(v, k)).try_div(&poch(&b.mul(q), k, v).mul(&poch(q, k, v))))?;
    Ok(pre.mul(&s))
}

fn fb0b_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, b, t) = (&v.q, &v.b, &v.t);
    let pre = om(t, v, n).try_div(&t.one_minus())?;
    let s = sum_n(n, v, |k| {
        qb(n, k, v)
            .mul(&poch(q, k, v))
            .mul(&b.neg().powu(k as u64))
            .mul(&qp(v, k * (k + 1) / 2))
            .try_div(&poch(&t.mul(q), k, v))
    })?;
    Ok(pre.mul(&s))
}

fn cmp_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, b) = (&v.q, &v.b);
    sum_n(p.n(), v, |k| qp(v, k).try_div(&poch(&b.mul(q), k, v).mul(&poch(q, k, v))))
}

fn cmp_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, b) = (&v.q, &v.b);
    let s = sum_n(n, v, |k| Ok(qb(n, k, v).mul(&poch(q, k, v)).mul(&b.neg().powu(k as u64)).mul(&qp(v, k * (k + 1) / 2))))?;
    s.try_div(&poch(&b.mul(q), n, v).mul(&poch(q, n, v)))
}

fn cmp2_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    sum_n(p.n(), v, |k| qp(v, 2 * k).try_div(&poch(&v.q, 2 * k, v)))
}

fn cmp2_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let q = &v.q;
    let q2 = qp(v, 2);
    let s = sum_n(n, v, |k| {
        Ok(sign(v, k)
            .mul(&qbinom_at(n as i64, k as i64, 2, q))
            .mul(&qpoch_at(&q2, k, 2, q))
            .mul(&qp(v, k * k)))
    })?;
    s.try_div(&poch(q, 2 * n, v))
}

fn a0h_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, b, t) = (&v.q, &v.b, &v.t);
    let pre = poch(t, n, v).mul(&poch(&b.mul(q), n, v)).try_div(&poch(q, n, v))?;
    Ok(pre.mul(&fine(n, v, &q.zero_like(), b, t)?))
}

fn a0h_sum<K: Field>(n: usize, v: &Vars<K>, b: &K) -> Result<K> {
    let (q, t) = (&v.q, &v.t);
    sum_n(n, v, |k| poch(b, k, v).mul(&poch(t, k, v)).mul(&qp(v, k)).try_div(&poch(q, k, v)))
}

fn a0h_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    a0h_sum(p.n(), v, &v.b)
}

fn bti_lhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, t) = (&v.q, &v.t);
    let inv_t = t.try_recip()?;
    let pre = poch(t, n, v).mul(&poch(&q.mul(&inv_t), n, v)).try_div(&poch(q, n, v))?;
    Ok(pre.mul(&fine(n, v, &q.zero_like(), &inv_t, t)?))
}

fn bti_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    a0h_sum(p.n(), v, &v.t.try_recip()?)
}

// Section three: seed transformations. Each `*_with` takes the value of the
// shifted finite Fine function appearing on the right.

fn t31_with<K: Field>(n: usize, v: &Vars<K>, f: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let k = t
        .mul(&a.mul(q).one_minus())
        .mul(&qp(v, n + 1).one_minus())
        .try_div(&b.mul(q).one_minus().mul(&om(t, v, n)))?;
    Ok(v.one().add(&k.mul(f)))
}

fn t31_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    t31_with(p.n(), v, &fine(p.n(), v, &a.mul(q), &b.mul(q), t)?)
}

fn t32_with<K: Field>(n: usize, v: &Vars<K>, f: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let one_t = t.one_minus();
    let first = b.one_minus().mul(&om(t, v, n + 1)).try_div(&one_t.mul(&om(b, v, n + 1)))?;
    let k = qp(v, n + 1)
        .one_minus()
        .mul(&b.sub(&a.mul(t).mul(q)))
        .try_div(&om(b, v, n + 1).mul(&one_t))?;
    Ok(first.add(&k.mul(f)))
}

fn t32_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    t32_with(p.n(), v, &fine(p.n(), v, a, b, &t.mul(q))?)
}

fn t33_rhs<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let one_t = t.one_minus();
    let first = om(t, v, n + 1).try_div(&one_t)?;
    let k = qp(v, n + 1)
        .one_minus()
        .mul(&b.sub(a))
        .mul(&t.mul(q))
        .try_div(&b.mul(q).one_minus().mul(&one_t))?;
    Ok(first.add(&k.mul(&fine(n, v, a, &b.mul(q), &t.mul(q))?)))
}

fn c34_with<K: Field>(n: usize, v: &Vars<K>, f: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let one_t = t.one_minus();
    let b_a = b.sub(a);
    let b_at = b.sub(&a.mul(t));
    let first = om(t, v, n + 1).try_div(&one_t)?;
    let second = b_a.mul(&om(t, v, n + 1)).mul(t).try_div(&one_t.mul(&b_at))?;
    let k = b_a.mul(&om(b, v, n + 2)).mul(t).try_div(&b.mul(q).one_minus().mul(&b_at))?;
    Ok(first.sub(&second).add(&k.mul(f)))
}

fn c34_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    c34_with(p.n(), v, &fine(p.n(), v, a, &b.mul(q), t)?)
}

fn c34_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    c34_with(p.n(), v, &fine(p.n() + 1, v, a, &b.mul(q), t)?)
}

fn c35_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let aq = a.mul(q);
    let b_aq = b.sub(&aq);
    let base = om(t, v, n).mul(&om(b, v, n + 2)).mul(&b_aq);
    let second = b
        .mul(&aq.one_minus())
        .mul(&qp(v, n + 1).one_minus())
        .mul(&om(t, v, n + 1))
        .try_div(&base)?;
    let k = aq.one_minus().mul(&qp(v, n + 1).one_minus()).mul(&b.sub(&aq.mul(t))).try_div(&base)?;
    Ok(v.one().sub(&second).add(&k.mul(&fine(n, v, &aq, b, t)?)))
}

fn c35_with<K: Field>(n: usize, v: &Vars<K>, f: &K) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let aq = a.mul(q);
    let b_aq = b.sub(&aq);
    let second = b
        .mul(&aq.one_minus())
        .mul(&qp(v, n + 1).one_minus())
        .try_div(&om(b, v, n + 1).mul(&b_aq))?;
    let k = aq
        .one_minus()
        .mul(&qp(v, n + 1).one_minus())
        .mul(&b.sub(&aq.mul(t)))
        .try_div(&om(t, v, n).mul(&b_aq).mul(&om(b, v, n + 1)))?;
    Ok(v.one().sub(&second).add(&k.mul(f)))
}

fn c35_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    c35_with(p.n(), v, &fine(p.n(), v, &a.mul(q), b, t)?)
}

fn t36_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let aq = a.mul(q);
    let b_aq = b.sub(&aq);
    let b_aqt = b.sub(&aq.mul(t));
    let one_t = t.one_minus();
    let common = aq.one_minus().mul(&qp(v, n + 1).one_minus());
    let bracket = t
        .sub(&b_aqt.try_div(&b_aq)?)
        .add(&b_aqt.mul(&b.one_minus()).try_div(&b_aq.mul(&om(b, v, n + 1)))?);
    let second = common
        .mul(&om(t, v, n + 1))
        .try_div(&om(t, v, n).mul(&om(b, v, n + 2)).mul(&one_t))?
        .mul(&bracket);
    let k = common
        .mul(&qp(v, n + 1).one_minus())
        .mul(&b_aqt)
        .mul(&b.sub(&a.mul(t).mul(&qp(v, 2))))
        .try_div(&om(t, v, n).mul(&b_aq).mul(&om(b, v, n + 2)).mul(&om(b, v, n + 1)).mul(&one_t))?;
    Ok(v.one().add(&second).add(&k.mul(&fine(n, v, &aq, b, &t.mul(q))?)))
}

fn t36_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let aq = a.mul(q);
    let inner = fine(n, v, &aq, b, &t.mul(q))?;
    let shifted = t32_with(n, &at(v, &aq, b, t), &inner)?;
    c35_with(n + 1, v, &shifted)
}

fn t37_printed<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let aq = a.mul(q);
    let one_t = t.one_minus();
    let common = aq.one_minus().mul(&qp(v, n + 1).one_minus());
    let second = common
        .mul(&om(t, v, n + 1))
        .mul(t)
        .try_div(&om(t, v, n).mul(&om(b, v, n + 2)).mul(&one_t))?;
    let k = common
        .mul(&qp(v, n + 1).one_minus())
        .mul(&b.sub(&aq.mul(t)))
        .mul(&t.mul(q))
        .try_div(&b.mul(q).one_minus().mul(&om(t, v, n)).mul(&om(b, v, n + 2)).mul(&one_t))?;
    Ok(v.one().add(&second).add(&k.mul(&fine(n, v, &aq, &b.mul(q), &t.mul(q))?)))
}

fn t37_corrected<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let aq = a.mul(q);
    let one_t = t.one_minus();
    let second = t
        .mul(&aq.one_minus())
        .mul(&qp(v, n + 2).one_minus())
        .try_div(&one_t.mul(&om(b, v, n + 2)))?;
    let k = t
        .mul(q)
        .mul(&aq.one_minus())
        .mul(&qp(v, n + 2).one_minus())
        .mul(&qp(v, n + 1).one_minus())
        .mul(&b.sub(&aq.mul(t)))
        .try_div(&b.mul(q).one_minus().mul(&om(t, v, n + 1)).mul(&om(b, v, n + 2)).mul(&one_t))?;
    Ok(v.one().add(&second).add(&k.mul(&fine(n, v, &aq, &b.mul(q), &t.mul(q))?)))
}

fn t37_chain<K: Field>(p: &Params, v: &Vars<K>) -> Result<K> {
    let n = p.n();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let (aq, bq) = (a.mul(q), b.mul(q));
    let inner = fine(n, v, &aq, &bq, &t.mul(q))?;
    let shifted = t32_with(n, &at(v, &aq, &bq, t), &inner)?;
    t31_with(n + 1, v, &shifted)
}

/// Replays the substitution `b -> q, t -> b, c -> tq, a -> atq/b` in Andrews'
/// corollary and checks that it lands on `F_N` and the finite analogue of
/// Fine's transformation to `F(at/b, t; b)`.
pub fn hn1_from_ac3(n: usize) -> Result<bool> {
    let v = Vars::<RationalFunction>::symbolic();
    let (q, a, b, t) = (&v.q, &v.a, &v.b, &v.t);
    let subbed = Vars { q: q.clone(), a: a.mul(t).mul(q).try_div(b)?, b: q.clone(), t: b.clone() };
    let c = t.mul(q);
    let lhs = ac3_lhs_with(n, &subbed, &c)?;
    let rhs = ac3_rhs_with(n, &subbed, &c)?;
    let params = Params::with_n(n);
    Ok(lhs == fine_n(n) && rhs == hn1_rhs(&params, &v)? && rhs == hn1_phi(&params, &v)?)
}

use FormKind::{Alternate, Corrected, Printed, PrintedErratum, Variant};

const MB_AUX: &[super::AuxRange] = &[("m", 1, 3), ("r", 1, 3)];

/// Every finite identity, ordered by id.
pub fn catalog() -> Vec<Identity> {
    let plain = |id, title, anchor, n_min, forms| Identity {
        id,
        title,
        anchor,
        n_min,
        aux: &[],
        constraints: &[],
        post: Post::None,
        forms,
        note: None,
    };
    let mut out = vec![
        Identity {
            constraints: &["b != 0 symbolically"],
            note: Some("as printed both sides carry F(a,b,t,N); the recurrence holds with F(aq,bq,tq,N-1) on the right"),
            ..plain(
                "AB1",
                "Andrews-Bell recurrence with remainder R_{1,N}",
                "that for $N\\geq1$",
                1,
                vec![
                    form("printed", PrintedErratum, side!(ab_lhs), side!(ab1_printed)),
                    form("shift-N", Variant, side!(ab_lhs), side!(ab1_shifted)),
                    form("corrected", Corrected, side!(ab_lhs), side!(ab1_corrected)),
                ],
            )
        },
        plain("PF1", "finite partial fraction decomposition", "partial fraction decomposition of", 0, vec![form("printed", Printed, side!(f_n), side!(pf1_rhs))]),
        Identity {
            constraints: &["b != 0 symbolically"],
            note: Some("N = 0 also holds with (atq^2)_{-1} = 1/(1 - atq)"),
            ..plain("RF1", "finite Rogers-Fine identity", "finite analogue of the Rogers-Fine identity", 1, vec![form("printed", Printed, side!(f_n), side!(rf1_rhs))])
        },
        plain("BR1", "F_N as a terminating 3phi2", "as can be easily seen from", 0, vec![form("printed", Printed, side!(f_n), side!(br1_rhs))]),
        Identity {
            note: Some("c = bt makes both sides the same series; c = atq is the substantive instance"),
            ..plain(
                "AC3",
                "Andrews' 3phi2 transformation with free slot c",
                "From \\cite[Corollary 3]{andfinheine}",
                0,
                vec![
                    form("c=atq", Printed, side!(ac3_lhs_atq), side!(ac3_rhs_atq)),
                    form("c=bt", Printed, side!(ac3_lhs_bt), side!(ac3_rhs_bt)),
                ],
            )
        },
        plain(
            "HN1",
            "finite analogue of F(a,b;t) = (1-b)/(1-t) F(at/b,t;b)",
            "we are led to",
            0,
            vec![form("printed", Printed, side!(f_n), side!(hn1_rhs)), form("3phi2", Alternate, side!(f_n), side!(hn1_phi))],
        ),
        Identity {
            note: Some("the prefactor (at)_n/(t)_n is read with n = N"),
            ..plain(
                "AL1",
                "Andrews' Lemma 1 transformation",
                "Lemma 1 of",
                0,
                vec![
                    form("c=atq", Printed, side!(al1_lhs_atq), side!(al1_rhs_atq)),
                    form("c=bt", Printed, side!(al1_lhs_bt), side!(al1_rhs_bt)),
                ],
            )
        },
        plain(
            "HN2",
            "Lemma 1 at a -> q, b -> aq, c -> bq",
            "Letting $a \\rightarrow q$",
            0,
            vec![form("printed", Printed, side!(f_n), side!(hn2_rhs)), form("3phi2", Alternate, side!(f_n), side!(hn2_phi))],
        ),
        plain("B0", "the case b = 0", "Letting $b=0$ in the above result", 0, vec![form("printed", Printed, side!(b0_lhs), side!(b0_rhs))]),
        plain("A0", "the case a = 0, multiplied by 1 - t", "if we let $a\\to0$", 0, vec![form("printed", Printed, side!(a0_lhs), side!(a0_rhs))]),
        Identity {
            constraints: &["t != 0"],
            note: Some("the substitution b = 1/t keeps the factor 1 - tq^N on the whole sum, n = 0 included"),
            ..plain(
                "TH",
                "theta form, b = 1/t with 2cos(theta) = t + 1/t",
                "If we let $b=t^{-1}= e^{-i\\theta}$",
                0,
                vec![
                    form("printed", PrintedErratum, side!(th_lhs), side!(th_printed)),
                    form("corrected", Corrected, side!(th_lhs), side!(th_corrected)),
                ],
            )
        },
        plain("BT", "the case b = t", "letting $b\\to t$ in", 0, vec![form("printed", Printed, side!(bt_lhs), side!(bt_rhs))]),
        Identity {
            aux: MB_AUX,
            note: Some("after q -> q^m the products (q^r)_{N-n}, (q^r)_N take base q^m and the prefactor is 1 - q^{Nm+r}"),
            ..plain(
                "MB",
                "mixed base q^m with t = q^r",
                "Let $r$ and $m$ be positive integers",
                0,
                vec![
                    form("printed", PrintedErratum, side!(mb_lhs_printed), side!(mb_rhs_printed)),
                    form("corrected", Corrected, side!(mb_lhs_corrected), side!(mb_rhs_corrected)),
                ],
            )
        },
        plain("HE1", "finite Heine transformation in terms of F_N", "Let $t \\rightarrow q, b \\rightarrow t", 0, vec![form("printed", Printed, side!(f_n), side!(he1_rhs))]),
        plain("B1", "the case b = 1", "Letting $b=1$ in", 0, vec![form("printed", Printed, side!(b1_lhs), side!(b1_rhs))]),
        Identity {
            post: Post::TAtOne,
            ..plain("T1L", "(1 - t) F_N at t = 1", "multiply both sides of", 0, vec![form("printed", Printed, side!(t1l_lhs), side!(t1l_rhs))])
        },
        Identity {
            note: Some("the factor 1 - q^N does not belong on the right"),
            ..plain(
                "FA12_31",
                "1/(bq)_N as a q^{n^2} sum",
                "we arrive at a finite analogue",
                0,
                vec![
                    form("printed", PrintedErratum, side!(fa_lhs), side!(fa_printed)),
                    form("corrected", Corrected, side!(fa_lhs), side!(fa_corrected)),
                ],
            )
        },
        Identity {
            constraints: &["t != 0"],
            ..plain("FB0", "a = b/t, then b -> 0", "then let $b\\to0$ to get", 0, vec![form("printed", Printed, side!(fb0_lhs), side!(fb0_rhs))])
        },
        Identity {
            constraints: &["t != 0"],
            ..plain("FB0b", "a = b/t in the b = 0 case", "if we replace $a$ by $b/t$", 0, vec![form("printed", Printed, side!(fb0_lhs), side!(fb0b_rhs))])
        },
        plain("CMP", "comparison at t = 0", "comparing the right-hand sides", 0, vec![form("printed", Printed, side!(cmp_lhs), side!(cmp_rhs))]),
        plain("CMP2", "comparison at b = q^{-1/2}, then q -> q^2", "then replacing $q$ by $q^2$", 0, vec![form("printed", Printed, side!(cmp2_lhs), side!(cmp2_rhs))]),
        plain("A0H", "Heine form at a = 0", "When $a=0$", 0, vec![form("printed", Printed, side!(a0h_lhs), side!(a0h_rhs))]),
        Identity {
            constraints: &["t != 0"],
            ..plain("BTI", "Heine form at a = 0, b = 1/t", "is obtained if we let $b=t^{-1}$", 0, vec![form("printed", Printed, side!(bti_lhs), side!(bti_rhs))])
        },
        Identity {
            note: Some("holds with F_{N+1}(a,b;t) on the left; the printed form fails for every N, N = 0 included"),
            ..plain(
                "T31",
                "(a, b) -> (aq, bq)",
                "t(1-aq)(1-q^{N+1})",
                0,
                vec![
                    form("printed", PrintedErratum, side!(f_n), side!(t31_rhs)),
                    form("corrected", Corrected, side!(f_n1), side!(t31_rhs)),
                ],
            )
        },
        Identity {
            note: Some("holds with F_{N+1}(a,b;t) on the left"),
            ..plain(
                "T32",
                "t -> tq",
                "(1-q^{N+1})(b-atq)",
                0,
                vec![
                    form("printed", PrintedErratum, side!(f_n), side!(t32_rhs)),
                    form("corrected", Corrected, side!(f_n1), side!(t32_rhs)),
                ],
            )
        },
        Identity {
            note: Some("holds with F_{N+1}(a,b;t) on the left"),
            ..plain(
                "T33",
                "(b, t) -> (bq, tq)",
                "(1-q^{N+1})(b-a)tq",
                0,
                vec![
                    form("printed", PrintedErratum, side!(f_n), side!(t33_rhs)),
                    form("corrected", Corrected, side!(f_n1), side!(t33_rhs)),
                ],
            )
        },
        Identity {
            note: Some("holds with F_{N+1} on both sides"),
            ..plain(
                "C34",
                "b -> bq",
                "transform $F_N(a, b; t)$ to $F_N(a, bq; t)$",
                0,
                vec![
                    form("printed", PrintedErratum, side!(f_n), side!(c34_printed)),
                    form("corrected", Corrected, side!(f_n1), side!(c34_corrected)),
                ],
            )
        },
        Identity {
            constraints: &["b != aq"],
            note: Some("replaying the chain gives F_{N+1}(a,b;t) = 1 - b(1-aq)(1-q^{N+1})/((1-bq^{N+1})(b-aq)) + (1-aq)(1-q^{N+1})(b-aqt)/((1-tq^N)(b-aq)(1-bq^{N+1})) F_N(aq,b;t)"),
            ..plain(
                "C35",
                "a -> aq",
                "relates $F_N(a, b; t)$ with",
                0,
                vec![
                    form("printed", PrintedErratum, side!(f_n), side!(c35_printed)),
                    form("corrected", Corrected, side!(f_n1), side!(c35_corrected)),
                ],
            )
        },
        Identity {
            constraints: &["b != aq"],
            note: Some("replaying the chain relates F_{N+2}(a,b;t) to F_N(aq,b;tq)"),
            ..plain(
                "T36",
                "(a, t) -> (aq, tq)",
                "transforms $F_N(a, b; t)$ to $F_N(aq,b;tq)$",
                0,
                vec![
                    form("printed", PrintedErratum, side!(f_n), side!(t36_printed)),
                    form("corrected", Corrected, side!(f_n2), side!(t36_corrected)),
                ],
            )
        },
        Identity {
            note: Some("replaying the chain gives F_{N+2}(a,b;t) = 1 + t(1-aq)(1-q^{N+2})/((1-t)(1-bq^{N+2})) + tq(1-aq)(1-q^{N+2})(1-q^{N+1})(b-atq)/((1-bq)(1-tq^{N+1})(1-bq^{N+2})(1-t)) F_N(aq,bq;tq)"),
            ..plain(
                "T37",
                "(a, b, t) -> (aq, bq, tq)",
                "transformation between $F_N(a, b; t)$ and $F_N(aq, bq; tq)$",
                0,
                vec![
                    form("printed", PrintedErratum, side!(f_n), side!(t37_printed)),
                    form("corrected", Corrected, side!(f_n2), side!(t37_corrected)),
                    form("chain", Alternate, side!(f_n2), side!(t37_chain)),
                ],
            )
        },
    ];
    out.sort_by(|x, y| x.id.cmp(y.id));
    out
}
