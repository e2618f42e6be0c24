//! Truncated power series in `q` with coefficients in `Q(a, b, t)`, used for the
//! `N -> infinity` statements.

use std::fmt;

use crate::algebra::{Field, Polynomial, Rational, RationalFunction, Var, Vars};
use crate::fine::fine_at;
use crate::registry::{Mode, Outcome, VerificationReport};
use crate::{Error, Result};

/// `c_0 + c_1 q + ... + c_D q^D + O(q^{D+1})`; coefficients never mention `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedQSeries {
    coeffs: Vec<RationalFunction>,
}

impl TruncatedQSeries {
    pub fn from_coeffs(mut coeffs: Vec<RationalFunction>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(RationalFunction::zero());
        }
        debug_assert!(coeffs.iter().all(|c| !c.contains_var(Var::Q)));
        TruncatedQSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(order, RationalFunction::zero())
    }

    pub fn constant(order: usize, c: RationalFunction) -> Self {
        let mut coeffs = vec![RationalFunction::zero(); order + 1];
        coeffs[0] = c;
        TruncatedQSeries { coeffs }
    }

    /// The series `q`.
    pub fn q(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = RationalFunction::one();
        }
        s
    }

    /// `q` and the constants `a`, `b`, `t`.
    pub fn vars(order: usize) -> Vars<Self> {
        let c = |v| Self::constant(order, RationalFunction::var(v));
        Vars { q: Self::q(order), a: c(Var::A), b: c(Var::B), t: c(Var::T) }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &RationalFunction {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedQSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    /// Applies `f` to every coefficient.
    pub fn try_map(&self, f: impl Fn(&RationalFunction) -> Result<RationalFunction>) -> Result<Self> {
        Ok(TruncatedQSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }

    fn zip(&self, other: &Self, f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> Self {
        let d = self.order().min(other.order());
        TruncatedQSeries { coeffs: (0..=d).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect() }
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl Field for TruncatedQSeries {
    fn constant_like(&self, r: &Rational) -> Self {
        Self::constant(self.order(), RationalFunction::from_rational(r))
    }

    fn add(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.add_ref(y))
    }

    fn sub(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.sub_ref(y))
    }

    fn mul(&self, other: &Self) -> Self {
        let d = self.order().min(other.order());
        let (lo_a, lo_b) = (self.valuation(), other.valuation());
        let mut out = vec![RationalFunction::zero(); d + 1];
        let (Some(va), Some(vb)) = (lo_a, lo_b) else {
            return TruncatedQSeries { coeffs: out };
        };
        for i in va..=d {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in vb..=d - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&self.coeffs[i].mul_ref(&other.coeffs[j]));
            }
        }
        TruncatedQSeries { coeffs: out }
    }

    fn neg(&self) -> Self {
        TruncatedQSeries { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn division_error(_: String) -> Error {
        Error::NonInvertibleAtQZero
    }

    fn try_recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonInvertibleAtQZero);
        }
        let inv0 = c0.recip()?;
        let d = self.order();
        let mut out: Vec<RationalFunction> = Vec::with_capacity(d + 1);
        out.push(inv0.clone());
        for k in 1..=d {
            let mut acc = RationalFunction::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
                }
            }
            out.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(TruncatedQSeries { coeffs: out })
    }

    fn q_poly(p: &Polynomial, q: &Self) -> Self {
        if *q != Self::q(q.order()) {
            return generic_q_poly(p, q);
        }
        let d = q.order();
        let mut coeffs = vec![RationalFunction::zero(); d + 1];
        for (k, c) in p.coefficients_in(Var::Q).iter().enumerate().take(d + 1) {
            coeffs[k] = RationalFunction::from_polynomial(c);
        }
        TruncatedQSeries { coeffs }
    }
}

fn generic_q_poly(p: &Polynomial, q: &TruncatedQSeries) -> TruncatedQSeries {
    let mut acc = q.zero_like();
    for c in p.coefficients_in(Var::Q).iter().rev() {
        acc = acc.mul(q).add(&TruncatedQSeries::constant(q.order(), RationalFunction::from_polynomial(c)));
    }
    acc
}

impl fmt::Debug for TruncatedQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedQSeries({self})")
    }
}

/// `c0 + (c1)*q + (c2)*q^2 + O(q^3)`, skipping zero coefficients.
impl fmt::Display for TruncatedQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// The `q`-adic expansion of `f` to order `order`.
pub fn series_from_ratfunc(f: &RationalFunction, order: usize) -> Result<TruncatedQSeries> {
    let split = |p: &Polynomial| -> TruncatedQSeries {
        let mut coeffs = vec![RationalFunction::zero(); order + 1];
        for (k, c) in p.coefficients_in(Var::Q).iter().enumerate().take(order + 1) {
            coeffs[k] = RationalFunction::from_polynomial(c);
        }
        TruncatedQSeries { coeffs }
    };
    let den = split(&f.denom());
    if den.coeffs[0].is_zero() {
        return Err(Error::NonInvertibleAtQZero);
    }
    split(&f.numer()).try_div(&den)
}

/// `(x)_inf = prod_{k>=0} (1 - x q^k)`, exact to the order of `x`.
pub fn qpoch_inf_series(x: &TruncatedQSeries) -> TruncatedQSeries {
    let d = x.order();
    let q = TruncatedQSeries::q(d);
    let mut acc = x.one_like();
    let mut xk = x.clone();
    for _ in 0..=d {
        acc = acc.mul(&xk.one_minus());
        xk = xk.mul(&q);
    }
    acc
}

/// `(A)_inf` for an element `A` of nonnegative `q`-degree.
pub fn qpoch_inf(a: &RationalFunction, order: usize) -> Result<TruncatedQSeries> {
    let x = series_from_ratfunc(a, order).map_err(|e| match e {
        Error::NonInvertibleAtQZero => Error::NegativeQDegree,
        e => e,
    })?;
    Ok(qpoch_inf_series(&x))
}

/// `F(a,b;t)` at series arguments via the partial fraction form
/// `(aq)_inf/(bq)_inf sum_n (b/a)_n (aq)^n / ((q)_n (1 - tq^n))`,
/// with `(b/a)_n a^n` expanded as `prod_{k<n} (a - b q^k)`. The `n`-th term has
/// valuation at least `n`, so the sum stops at the order.
pub fn fine_series_at(v: &Vars<TruncatedQSeries>) -> Result<TruncatedQSeries> {
    let q = &v.q;
    let d = q.order();
    let mut cleared = q.one_like();
    let mut qn = q.one_like();
    let mut qpoch_q = q.one_like();
    let mut sum = q.zero_like();
    for n in 0..=d {
        if n > 0 {
            cleared = cleared.mul(&v.a.sub(&v.b.mul(&qn)));
            qn = qn.mul(q);
            qpoch_q = qpoch_q.mul(&qn.one_minus());
        }
        let term = cleared.mul(&qn).try_div(&qpoch_q.mul(&v.t.mul(&qn).one_minus()))?;
        sum = sum.add(&term);
    }
    let ratio = qpoch_inf_series(&v.a.mul(q)).try_div(&qpoch_inf_series(&v.b.mul(q)))?;
    Ok(ratio.mul(&sum))
}

/// `F(a,b;t)` to order `q^order`.
pub fn fine_series(order: usize) -> Result<TruncatedQSeries> {
    fine_series_at(&TruncatedQSeries::vars(order))
}

/// Whether `F_N` agrees with `F` through `q^order`, for `order <= N`.
///
/// `F_N` is expanded by evaluating its defining sum in the series ring, which is
/// the image of the rational function under the expansion homomorphism.
pub fn stabilization_check(big_n: usize, order: usize) -> Result<bool> {
    if order > big_n {
        return Err(Error::ConstraintViolation(format!("stabilization is asserted only for D <= N, got D={order}, N={big_n}")));
    }
    Ok(agrees_to(big_n, order)?)
}

fn agrees_to(big_n: usize, order: usize) -> Result<bool> {
    let finite = fine_at(big_n, &TruncatedQSeries::vars(order))?;
    Ok(finite == fine_series(order)?)
}

/// Smallest `N` with `F_N = F + O(q^{order+1})`, searching `N <= limit`.
pub fn stabilization_window(order: usize, limit: usize) -> Result<Option<usize>> {
    for n in 0..=limit {
        if agrees_to(n, order)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The infinite identities checked coefficientwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LimitId {
    L41,
    L43,
    L44,
    L45,
    L46,
    L63,
    L631,
    LHE,
    LRF,
}

impl LimitId {
    pub const ALL: [LimitId; 9] = [
        LimitId::L41,
        LimitId::L43,
        LimitId::L44,
        LimitId::L45,
        LimitId::L46,
        LimitId::L63,
        LimitId::L631,
        LimitId::LHE,
        LimitId::LRF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LimitId::L41 => "L41",
            LimitId::L43 => "L43",
            LimitId::L44 => "L44",
            LimitId::L45 => "L45",
            LimitId::L46 => "L46",
            LimitId::L63 => "L63",
            LimitId::L631 => "L631",
            LimitId::LHE => "LHE",
            LimitId::LRF => "LRF",
        }
    }

    pub fn from_name(s: &str) -> Option<LimitId> {
        Self::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }

    pub fn statement(self) -> &'static str {
        match self {
            LimitId::L41 => "F(a,b;t) = (1-atq)/(1-t) + (1-aq)(b-atq)tq/((1-bq)(1-t)) F(aq,bq;tq)",
            LimitId::L43 => "F(a,b;t) = 1/(1-t) + (b-a)tq/((1-t)(1-bq)) F(a,bq;tq)",
            LimitId::L44 => "F(a,b;t) = b/(b-at) + (b-a)t/((1-bq)(b-at)) F(a,bq;t)",
            LimitId::L45 => "F(a,b;t) = -(1-b)aq/(b-aq) + (1-aq)(b-atq)/(b-aq) F(aq,b;t)",
            LimitId::L46 => "F(a,b;t) = (1-b)/(1-t) (1 - (b-atq)aq/(b-aq)) + (1-aq)(b-atq)(b-atq^2)/((1-t)(b-aq)) F(aq,b;tq)",
            LimitId::L63 => "F(a,b;t) = (1-b)/(1-t) F(at/b,t;b)",
            LimitId::L631 => "lim_{t->1} (1-t)F(a,b;t) = (aq)_inf/(bq)_inf",
            LimitId::LHE => "F(a,b;t) = (atq)_inf(q)_inf/((t)_inf(bq)_inf) sum (b)_n(t)_n q^n/((atq)_n(q)_n)",
            LimitId::LRF => "F(a,b;t) = sum (aq)_n(atq/b)_n/((bq)_n(t)_{n+1}) (1-atq^{2n+1})(bt)^n q^{n^2}",
        }
    }

    /// Both sides to order `order`.
    pub fn sides(self, order: usize) -> Result<(TruncatedQSeries, TruncatedQSeries)> {
        let v = TruncatedQSeries::vars(order);
        let q = &v.q;
        let (a, b, t) = (&v.a, &v.b, &v.t);
        let one = v.one();
        let f = |a: &TruncatedQSeries, b: &TruncatedQSeries, t: &TruncatedQSeries| {
            fine_series_at(&v.with(a.clone(), b.clone(), t.clone()))
        };
        let aq = a.mul(q);
        let bq = b.mul(q);
        let tq = t.mul(q);
        let atq = a.mul(&tq);
        let one_t = t.one_minus();
        let lhs = fine_series_at(&v)?;
        let rhs = match self {
            LimitId::L41 => {
                let k = aq.one_minus().mul(&b.sub(&atq)).mul(&tq).try_div(&bq.one_minus().mul(&one_t))?;
                atq.one_minus().try_div(&one_t)?.add(&k.mul(&f(&aq, &bq, &tq)?))
            }
            LimitId::L43 => {
                let k = b.sub(a).mul(&tq).try_div(&one_t.mul(&bq.one_minus()))?;
                one.try_div(&one_t)?.add(&k.mul(&f(a, &bq, &tq)?))
            }
            LimitId::L44 => {
                let b_at = b.sub(&a.mul(t));
                let k = b.sub(a).mul(t).try_div(&bq.one_minus().mul(&b_at))?;
                b.try_div(&b_at)?.add(&k.mul(&f(a, &bq, t)?))
            }
            LimitId::L45 => {
                let b_aq = b.sub(&aq);
                let first = b.one_minus().mul(&aq).try_div(&b_aq)?.neg();
                let k = aq.one_minus().mul(&b.sub(&atq)).try_div(&b_aq)?;
                first.add(&k.mul(&f(&aq, b, t)?))
            }
            LimitId::L46 => {
                let b_aq = b.sub(&aq);
                let b_atq = b.sub(&atq);
                let first = b
                    .one_minus()
                    .try_div(&one_t)?
                    .mul(&one.sub(&b_atq.mul(&aq).try_div(&b_aq)?));
                let k = aq
                    .one_minus()
                    .mul(&b_atq)
                    .mul(&b.sub(&atq.mul(q)))
                    .try_div(&one_t.mul(&b_aq))?;
                first.add(&k.mul(&f(&aq, b, &tq)?))
            }
            LimitId::L63 => {
                let at_b = a.mul(t).try_div(b)?;
                b.one_minus().try_div(&one_t)?.mul(&f(&at_b, t, b)?)
            }
            LimitId::L631 => {
                let at_one = |s: &TruncatedQSeries| s.try_map(|c| c.substitute(Var::T, &RationalFunction::one()));
                let lhs = at_one(&one_t.mul(&lhs))?;
                let rhs = qpoch_inf_series(&aq).try_div(&qpoch_inf_series(&bq))?;
                return Ok((lhs, rhs));
            }
            LimitId::LHE => {
                let pre = qpoch_inf_series(&atq)
                    .mul(&qpoch_inf_series(q))
                    .try_div(&qpoch_inf_series(t).mul(&qpoch_inf_series(&bq)))?;
                let mut term = one.clone();
                let mut sum = one.clone();
                let mut qk = one.clone();
                for _ in 0..order {
                    let num = b.mul(&qk).one_minus().mul(&t.mul(&qk).one_minus()).mul(q);
                    let den = atq.mul(&qk).one_minus().mul(&qk.mul(q).one_minus());
                    term = term.mul(&num).try_div(&den)?;
                    sum = sum.add(&term);
                    qk = qk.mul(q);
                }
                pre.mul(&sum)
            }
            LimitId::LRF => {
                let mut sum = q.zero_like();
                let mut n = 0u64;
                while (n * n) as usize <= order {
                    let mut num = b.mul(t).powu(n).mul(&q.powu(n * n)).mul(&atq.mul(&q.powu(2 * n)).one_minus());
                    let mut den = t.one_minus();
                    for k in 0..n {
                        let qk = q.powu(k);
                        // (atq/b)_n b^n = prod (b - atq^{k+1})
                        num = num.mul(&aq.mul(&qk).one_minus()).mul(&one.sub(&atq.mul(&qk).try_div(b)?));
                        den = den.mul(&bq.mul(&qk).one_minus()).mul(&tq.mul(&qk).one_minus());
                    }
                    sum = sum.add(&num.try_div(&den)?);
                    n += 1;
                }
                sum
            }
        };
        Ok((lhs, rhs))
    }
}

impl fmt::Display for LimitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Checks one infinite identity coefficientwise through `q^order`.
pub fn verify_limit(id: LimitId, order: usize) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let (lhs, rhs) = id.sides(order)?;
    let diff = lhs.sub(&rhs);
    let outcome = if diff.is_zero() { Outcome::Pass } else { Outcome::Fail };
    let witness = (outcome == Outcome::Fail).then(|| crate::registry::digest(&diff.to_string()));
    Ok(VerificationReport {
        id: id.name().to_string(),
        mode: Mode::Series,
        params: vec![("D".to_string(), order as i64)],
        form: None,
        outcome,
        witness,
        note: None,
        millis: start.elapsed().as_millis() as u64,
        gating: true,
        exhausted: false,
    })
}
