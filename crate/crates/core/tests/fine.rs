use qfine::fine::{andrews_bell_f, fine_at, fine_n, partial_fraction_rhs, r1n, rogers_fine_finite_rhs};
use qfine::qkernel::qpoch;
use qfine::series::series_from_ratfunc;
use qfine::{Field, RationalFunction, Var, Vars};

fn v(x: Var) -> RationalFunction {
    RationalFunction::var(x)
}

fn c(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

#[test]
fn b_equal_one_gives_product() {
    let atq = v(Var::A) * v(Var::T) * v(Var::Q);
    for n in 0..=8 {
        let lhs = fine_n(n).substitute(Var::B, &c(1)).unwrap();
        let rhs = qpoch(&atq, n, 1).checked_div(&qpoch(&v(Var::T), n, 1)).unwrap();
        assert_eq!(lhs, rhs, "N={n}");
    }
}

#[test]
fn t_equal_one_limit() {
    let (q, a, b) = (v(Var::Q), v(Var::A), v(Var::B));
    for n in 0..=8 {
        let lhs = ((c(1) - v(Var::T)) * fine_n(n)).substitute(Var::T, &c(1)).unwrap();
        let rhs = (c(1) - q.pow(n as i64).unwrap()) * qpoch(&(&a * &q), n, 1);
        let rhs = rhs.checked_div(&qpoch(&(&b * &q), n, 1)).unwrap();
        assert_eq!(lhs, rhs, "N={n}");
    }
}

#[test]
fn t_zero_gives_one() {
    for n in 0..=10 {
        assert!(fine_n(n).substitute(Var::T, &c(0)).unwrap().is_one(), "N={n}");
    }
}

#[test]
fn denominator_divides_pochhammer_product() {
    let (q, b, t) = (v(Var::Q), v(Var::B), v(Var::T));
    for n in 0..=8 {
        let bound = qpoch(&(&b * &q), n, 1) * qpoch(&t, n, 1);
        // den | bound  iff  bound / den is a polynomial
        let den = RationalFunction::from_poly(fine_n(n).denom_int());
        let quotient = bound.checked_div(&den).unwrap();
        assert!(quotient.is_polynomial(), "N={n}");
    }
}

#[test]
fn partial_fraction_and_rogers_fine_agree() {
    for n in 0..=6 {
        assert_eq!(partial_fraction_rhs(n).unwrap(), fine_n(n), "PF N={n}");
    }
    for n in 1..=5 {
        assert_eq!(rogers_fine_finite_rhs(n).unwrap(), fine_n(n), "RF N={n}");
    }
}

#[test]
fn rogers_fine_at_zero_uses_reciprocal_convention() {
    // (atq^2)_{-1} = 1/(1 - atq); the display then holds at N = 0 as well.
    assert!(rogers_fine_finite_rhs(0).unwrap().is_one());
    // Excluding the factor instead, i.e. reading it as 1, breaks N = 0.
    let atq = v(Var::A) * v(Var::T) * v(Var::Q);
    let without = rogers_fine_finite_rhs(0).unwrap() * (c(1) - atq);
    assert!(!without.is_one());
}

#[test]
fn rogers_fine_then_b_to_t() {
    let lhs = fine_n(1).substitute(Var::B, &v(Var::T)).unwrap();
    let rhs = rogers_fine_finite_rhs(1).unwrap().substitute(Var::B, &v(Var::T)).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn remainder_first_case_by_rearrangement() {
    let (q, a, b, t) = (v(Var::Q), v(Var::A), v(Var::B), v(Var::T));
    let atq = &a * &t * &q;
    let one_t = c(1) - &t;
    let first = (c(1) - &atq).checked_div(&one_t).unwrap();
    let k = (&t * &q * (c(1) - &a * &q) * (&b - &atq)).checked_div(&((c(1) - &b * &q) * &one_t)).unwrap();
    // With F(aq,bq,tq,0) = 1 on the right.
    let expected = andrews_bell_f(1) - &first - &k;
    assert_eq!(r1n(1).unwrap(), expected);
    // With F(a,b,t,1) on both sides, as displayed, the remainder would differ.
    let printed = andrews_bell_f(1) * (c(1) - k) - first;
    assert_ne!(r1n(1).unwrap(), printed);
}

#[test]
fn remainder_golden() {
    let golden = include_str!("golden/r1n.txt");
    let lines: Vec<&str> = golden.lines().collect();
    for (k, line) in lines.iter().enumerate() {
        assert_eq!(r1n(k + 1).unwrap().to_string(), *line, "N={}", k + 1);
    }
}

#[test]
fn andrews_bell_differs_but_shares_low_terms() {
    assert_ne!(andrews_bell_f(2), fine_n(2));
    // Both tend to F(a,b;t): through q^{N-1} their expansions agree modulo t^{N+1}.
    for n in 1..=6usize {
        let s = series_from_ratfunc(&fine_n(n), n).unwrap();
        let r = series_from_ratfunc(&andrews_bell_f(n), n).unwrap();
        for k in 0..n {
            let d = s.coeff(k) - r.coeff(k);
            let tval = d.numer_int().terms().iter().map(|(m, _)| m.exp(Var::T)).min().unwrap();
            assert!(tval as usize > n, "N={n} k={k}");
        }
    }
}

#[test]
fn generic_and_symbolic_builders_agree() {
    let sym = Vars::symbolic();
    for n in 0..=5 {
        assert_eq!(fine_at(n, &sym).unwrap(), fine_n(n));
    }
    let half = sym.q.constant_like(&qfine::Rational::new(1.into(), 2.into()));
    let partial = Vars { q: half.clone(), ..sym.clone() };
    let direct = fine_n(3).substitute(Var::Q, &half).unwrap();
    assert_eq!(fine_at(3, &partial).unwrap(), direct);
}
