use num_bigint::BigInt;
use proptest::prelude::*;
use qfine::algebra::{eval_ratfunc, poly_arith, poly_gcd, rat_arith, PolyOp, RatOp};
use qfine::{Error, Monomial, Polynomial, Rational, RationalFunction, Var, Vars};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn v(x: Var) -> RationalFunction {
    RationalFunction::var(x)
}

fn c(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

fn pv(x: Var) -> Polynomial {
    Polynomial::var(x)
}

fn pc(n: i64) -> Polynomial {
    Polynomial::constant(rat(n, 1))
}

fn point(q: (i64, i64), a: (i64, i64), b: (i64, i64), t: (i64, i64)) -> [Rational; 4] {
    [rat(q.0, q.1), rat(a.0, a.1), rat(b.0, b.1), rat(t.0, t.1)]
}

#[test]
fn poly_examples() {
    let (q, a, t) = (pv(Var::Q), pv(Var::A), pv(Var::T));
    assert_eq!(poly_arith(&(pc(1) - &t), &(pc(1) + &t), PolyOp::Mul), pc(1) - &t * &t);
    let p = pc(1) - &a * &q;
    assert_eq!(poly_arith(&p, &Polynomial::zero(), PolyOp::Add), p);
    // (1 - aq)(1 - aq^2), expanded by hand.
    let lhs = poly_arith(&p, &(pc(1) - &a * &q * &q), PolyOp::Mul);
    let q3 = &q * &q * &q;
    let expected = pc(1) - &a * &q - &a * &q * &q + &a * &a * &q3;
    assert_eq!(lhs, expected);
}

#[test]
fn gcd_examples() {
    let (q, b, t) = (pv(Var::Q), pv(Var::B), pv(Var::T));
    let one_t = pc(1) - &t;
    let g = poly_gcd(&(pc(1) - &t * &t), &(&one_t * &one_t));
    // t - 1 made monic
    assert_eq!(g, &t - pc(1));
    let p = pc(3) * (pc(1) + &q * &b);
    assert_eq!(poly_gcd(&p, &p), p.monic());
    assert_eq!(poly_gcd(&p, &Polynomial::zero()), p.monic());
    assert!(poly_gcd(&(pc(1) - &q * &t), &(pc(1) - &b * &q)).is_one());
}

#[test]
fn rat_examples() {
    let t = v(Var::T);
    let f = (c(1) - &t * &t).checked_div(&(c(1) - &t)).unwrap();
    assert_eq!(f, c(1) + &t);
    assert!(rat_arith(&f, &f, RatOp::Sub).unwrap().is_zero());
    let bq = c(1) - v(Var::B) * v(Var::Q);
    assert!((bq.recip().unwrap() * &bq).is_one());
    assert!(matches!(rat_arith(&f, &RationalFunction::zero(), RatOp::Div), Err(Error::DivisionByZero)));
}

#[test]
fn substitution_examples() {
    let f = (c(1) - v(Var::B) * v(Var::Q)).recip().unwrap();
    let g = f.substitute(Var::B, &v(Var::T).recip().unwrap()).unwrap();
    let expected = v(Var::T).checked_div(&(v(Var::T) - v(Var::Q))).unwrap();
    assert_eq!(g, expected);
    assert_eq!(f.substitute(Var::A, &v(Var::A)).unwrap(), f);
    // 1/(1 - t) with t -> 1 annihilates the denominator.
    let h = (c(1) - v(Var::T)).recip().unwrap();
    assert!(matches!(h.substitute(Var::T, &c(1)), Err(Error::IdenticallyZeroDenominator(_))));
}

#[test]
fn eval_examples() {
    let h = (c(1) - v(Var::T)).recip().unwrap();
    let p = point((1, 2), (1, 3), (1, 5), (1, 2));
    assert_eq!(h.eval_at(&p).unwrap(), rat(2, 1));
    let p1 = point((1, 2), (1, 3), (1, 5), (1, 1));
    assert!(matches!(h.eval_at(&p1), Err(Error::Pole)));
    let (q, a, b, t) = (v(Var::Q), v(Var::A), v(Var::B), v(Var::T));
    let f = ((c(1) - &a * &q) * &t).checked_div(&(c(1) - &b * &q)).unwrap();
    let p = point((1, 2), (1, 3), (1, 5), (1, 7));
    // (5/6)(1/7)/(9/10) computed by hand
    assert_eq!(f.eval_at(&p).unwrap(), rat(25, 189));
}

#[test]
fn canonical_denominator_sign() {
    // Leading denominator term under q > a > b > t is q; it must be positive.
    let f = v(Var::T).checked_div(&(v(Var::T) - v(Var::Q))).unwrap();
    let lead = f.denom().leading().unwrap().1.clone();
    assert!(lead > rat(0, 1));
    assert_eq!(f.to_string(), "-t/(-t + q)");
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2, 0u32..3), -4i64..=4), 1..5).prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|((i, j, k, l), co)| (Monomial::new([i, j, k, l]), rat(co, 1))),
        )
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn small_rf() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::new(&n, &d).unwrap())
}

fn sample_point() -> impl Strategy<Value = [Rational; 4]> {
    let r = || (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d));
    (r(), r(), r(), r()).prop_map(|(q, a, b, t)| [q, a, b, t])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_unique(n in small_poly(), d in nonzero_poly(), k in nonzero_poly()) {
        let f = RationalFunction::new(&n, &d).unwrap();
        let g = RationalFunction::new(&(&n * &k), &(&d * &k)).unwrap();
        prop_assert_eq!(&f, &g);
        let h = RationalFunction::new(&n.scale(&rat(-3, 7)), &d.scale(&rat(-3, 7))).unwrap();
        prop_assert_eq!(&f, &h);
        let lead = f.denom().leading().unwrap().1.clone();
        prop_assert!(lead > rat(0, 1));
        prop_assert!(poly_gcd(&f.numer(), &f.denom()).is_constant() || f.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(f in small_rf(), g in small_rf(), h in small_rf()) {
        prop_assert_eq!(&(&f + &g), &(&g + &f));
        prop_assert_eq!(&(&f * &g), &(&g * &f));
        prop_assert_eq!(&((&f + &g) + &h), &(&f + &(&g + &h)));
        prop_assert_eq!(&((&f * &g) * &h), &(&f * &(&g * &h)));
        prop_assert_eq!(&(&f * &(&g + &h)), &(&f * &g + &f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn substitution_composes(f in small_rf(), u in small_rf(), w in small_rf()) {
        // u, w free of a and b
        let u = u.substitute_all(&[(Var::A, c(2)), (Var::B, c(3))]);
        let w = w.substitute_all(&[(Var::A, c(5)), (Var::B, c(7))]);
        if let (Ok(u), Ok(w)) = (u, w) {
            let seq = f.substitute(Var::A, &u).and_then(|g| g.substitute(Var::B, &w));
            let once = f.substitute_all(&[(Var::A, u.clone()), (Var::B, w.clone())]);
            match (seq, once) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
                (Err(_), Err(_)) => {}
                (x, y) => prop_assert!(false, "sequential {:?} vs simultaneous {:?}", x, y),
            }
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in small_rf(), g in small_rf(), p in sample_point()) {
        if let (Ok(x), Ok(y)) = (f.eval_at(&p), g.eval_at(&p)) {
            prop_assert_eq!((&f * &g).eval_at(&p).unwrap(), &x * &y);
            prop_assert_eq!((&f + &g).eval_at(&p).unwrap(), &x + &y);
            prop_assert_eq!(eval_ratfunc(&f, &Vars::at(&p)).unwrap(), x);
        }
    }
}
