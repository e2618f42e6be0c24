use num_bigint::BigInt;
use qfine::registry::{
    catalog, find, hn1_from_ac3, verify_all, verify_at_point, verify_catalog, verify_sampled, verify_symbolic, Builder,
    Form, FormKind, Identity, Mode, Outcome, Params, Point, Post, Sampler, Sweep, VerifyOptions,
};
use qfine::{Error, Rational, RationalFunction, Result, Vars};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn pt(q: (i64, i64), a: (i64, i64), b: (i64, i64), t: (i64, i64)) -> Point {
    [rat(q.0, q.1), rat(a.0, a.1), rat(b.0, b.1), rat(t.0, t.1)]
}

fn id(name: &str) -> Identity {
    find(name).unwrap_or_else(|| panic!("{name} is in the catalog"))
}

fn sym(identity: &Identity, form: &Form, params: &Params) -> Outcome {
    verify_symbolic(identity, form, params, VerifyOptions::default()).unwrap().outcome
}

fn n(k: usize) -> Params {
    Params::with_n(k)
}

#[test]
fn catalog_shape() {
    let cat = catalog();
    assert!(cat.len() >= 29);
    let ids: Vec<&str> = cat.iter().map(|i| i.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted, "sorted by id, no duplicates");
    for i in &cat {
        assert!(!i.anchor.is_empty(), "{}", i.id);
        assert!(i.forms.iter().any(|f| f.kind.gating()), "{}", i.id);
        if i.is_erratum_candidate() {
            assert!(i.forms.iter().any(|f| f.kind == FormKind::Corrected), "{}", i.id);
            assert!(i.note.is_some(), "{}", i.id);
        }
    }
    for expected in ["AB1", "PF1", "RF1", "BR1", "AC3", "HN1", "AL1", "HN2", "B0", "A0", "TH", "BT", "MB", "HE1", "B1", "T1L", "FA12_31", "FB0", "FB0b", "CMP", "CMP2", "A0H", "BTI", "T31", "T32", "T33", "C34", "C35", "T36", "T37"] {
        assert!(find(expected).is_some(), "{expected}");
    }
}

#[test]
fn spec_examples() {
    let b1 = id("B1");
    assert_eq!(sym(&b1, b1.primary(), &n(4)), Outcome::Pass);
    let t31 = id("T31");
    assert_eq!(sym(&t31, t31.primary(), &n(3)), Outcome::Pass);
    let mb = id("MB");
    let p = Params::new(vec![("N", 4), ("m", 2), ("r", 3)]);
    assert_eq!(sym(&mb, mb.primary(), &p), Outcome::Pass);
}

fn t31_rhs_plus_one_sym(p: &Params, v: &Vars<RationalFunction>) -> Result<RationalFunction> {
    let rhs = id("T31").primary().rhs;
    Ok((rhs.sym)(p, v)? + RationalFunction::one())
}

fn t31_rhs_plus_one_exact(p: &Params, v: &Vars<Rational>) -> Result<Rational> {
    let rhs = id("T31").primary().rhs;
    Ok((rhs.exact)(p, v)? + rat(1, 1))
}

#[test]
fn altered_constant_fails_with_witness() {
    let t31 = id("T31");
    let form = Form {
        rhs: Builder { sym: t31_rhs_plus_one_sym, exact: t31_rhs_plus_one_exact },
        ..*t31.primary()
    };
    let r = verify_symbolic(&t31, &form, &n(3), VerifyOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Fail);
    assert_eq!(r.witness.as_ref().map(String::len), Some(16));
    assert_eq!(r.note.as_deref(), Some("-1"));
}

#[test]
fn perturbation_breaks_every_identity() {
    let opts = VerifyOptions { perturb: true };
    for identity in catalog() {
        for form in identity.forms.iter().filter(|f| f.kind.gating()) {
            let params = match identity.aux {
                [] => n(2),
                _ => Params::new(vec![("N", 2), ("m", 2), ("r", 1)]),
            };
            let r = verify_symbolic(&identity, form, &params, opts).unwrap();
            assert_eq!(r.outcome, Outcome::Fail, "{} {}", identity.id, form.name);
        }
    }
}

#[test]
fn errata_report_both_forms() {
    let ab1 = id("AB1");
    for k in 1..=8 {
        assert_eq!(sym(&ab1, ab1.form("printed").unwrap(), &n(k)), Outcome::Fail, "N={k}");
        assert_eq!(sym(&ab1, ab1.form("corrected").unwrap(), &n(k)), Outcome::Pass, "N={k}");
    }
    assert_eq!(sym(&ab1, ab1.form("shift-N").unwrap(), &n(3)), Outcome::Fail);
    let th = id("TH");
    assert_eq!(sym(&th, th.form("printed").unwrap(), &n(0)), Outcome::Pass);
    assert_eq!(sym(&th, th.form("printed").unwrap(), &n(2)), Outcome::Fail);
    // The printed T31 fails already at N = 0: 1 = 1 + t(1-aq)(1-q)/((1-bq)(1-t)) is false.
    let t31 = id("T31");
    assert_eq!(sym(&t31, t31.form("printed").unwrap(), &n(0)), Outcome::Fail);
    for name in ["T31", "T32", "T33", "C34", "C35", "T36", "T37", "FA12_31", "MB"] {
        let i = id(name);
        let printed = i.form("printed").unwrap();
        assert_eq!(printed.kind, FormKind::PrintedErratum, "{name}");
        assert!(!printed.kind.gating());
    }
}

#[test]
fn mixed_base_printed_form_only_holds_for_m_one() {
    let mb = id("MB");
    let printed = mb.form("printed").unwrap();
    for m in 1..=3 {
        let p = Params::new(vec![("N", 3), ("m", m), ("r", 2)]);
        let expected = if m == 1 { Outcome::Pass } else { Outcome::Fail };
        assert_eq!(sym(&mb, printed, &p), expected, "m={m}");
    }
}

#[test]
fn parameter_constraints() {
    let rf1 = id("RF1");
    assert!(matches!(
        verify_symbolic(&rf1, rf1.primary(), &n(0), VerifyOptions::default()),
        Err(Error::ConstraintViolation(_))
    ));
    let mb = id("MB");
    let p = Params::new(vec![("N", 2), ("m", 0), ("r", 1)]);
    assert!(matches!(verify_symbolic(&mb, mb.primary(), &p, VerifyOptions::default()), Err(Error::ConstraintViolation(_))));
}

#[test]
fn hn1_follows_from_corollary_by_substitution() {
    for k in 0..=5 {
        assert!(hn1_from_ac3(k).unwrap(), "N={k}");
    }
}

#[test]
fn t32_at_a_fixed_point() {
    let t32 = id("T32");
    let point = pt((1, 2), (2, 3), (3, 5), (5, 7));
    let r = verify_at_point(&t32, t32.primary(), &n(10), &point, VerifyOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Pass);
    let r = verify_at_point(&t32, t32.form("printed").unwrap(), &n(10), &point, VerifyOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Fail);
}

#[test]
fn poles_are_skipped() {
    let at_t1 = pt((1, 2), (2, 3), (3, 5), (1, 1));
    for name in ["T32", "HN1", "B0", "A0H", "HE1"] {
        let i = id(name);
        let r = verify_at_point(&i, i.primary(), &n(3), &at_t1, VerifyOptions::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Skipped, "{name}");
        assert!(r.witness.is_some());
    }
    for i in catalog() {
        let p = if i.aux.is_empty() { n(3) } else { Params::new(vec![("N", 3), ("m", 2), ("r", 1)]) };
        let r = verify_at_point(&i, i.primary(), &p, &at_t1, VerifyOptions::default()).unwrap();
        assert_ne!(r.outcome, Outcome::Fail, "{}", i.id);
    }
    // b = aq
    let c35 = id("C35");
    let point = pt((1, 2), (2, 3), (1, 3), (5, 7));
    for form in &c35.forms {
        let r = verify_at_point(&c35, form, &n(3), &point, VerifyOptions::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Skipped, "{}", form.name);
    }
}

fn always_pole_sym(_: &Params, v: &Vars<RationalFunction>) -> Result<RationalFunction> {
    Ok(v.q.clone())
}

fn always_pole_exact(_: &Params, _: &Vars<Rational>) -> Result<Rational> {
    Err(Error::Pole)
}

#[test]
fn redraw_budget_runs_out() {
    let b = Builder { sym: always_pole_sym, exact: always_pole_exact };
    let identity = Identity {
        id: "POLE",
        title: "always singular",
        anchor: "-",
        n_min: 0,
        aux: &[],
        constraints: &[],
        post: Post::None,
        forms: vec![Form { name: "printed", kind: FormKind::Printed, lhs: b, rhs: b }],
        note: None,
    };
    let mut sampler = Sampler::new(3);
    let r = verify_sampled(&identity, &identity.forms[0], &n(1), &mut sampler, 7, VerifyOptions::default());
    assert!(matches!(r, Err(Error::Exhausted(7))));
    let reports = verify_catalog(&[identity], &Sweep::new(1, Mode::Sampled, 1));
    assert!(reports.iter().all(|r| r.outcome == Outcome::Skipped));
}

#[test]
fn sampler_respects_ranges() {
    let mut s = Sampler::new(11);
    for _ in 0..500 {
        let p = s.point();
        assert!(p[0] > rat(0, 1) && p[0] < rat(1, 1));
        for x in &p {
            assert!(*x != rat(0, 1));
            assert!(x.numer().magnitude() <= &64u32.into() && x.denom() <= &BigInt::from(64));
        }
    }
    let a = Sampler::for_label(7, "T32/corrected/N=3").point();
    let b = Sampler::for_label(7, "T32/corrected/N=3").point();
    assert_eq!(a, b);
    assert_ne!(a, Sampler::for_label(8, "T32/corrected/N=3").point());
}

#[test]
fn symbolic_pass_implies_sampled_pass() {
    let mut sweep = Sweep::new(3, Mode::Sampled, 5);
    sweep.points = 3;
    let sampled = verify_all(&sweep);
    let symbolic = verify_all(&Sweep::new(3, Mode::Symbolic, 5));
    assert_eq!(sampled.len(), symbolic.len());
    for (s, y) in symbolic.iter().zip(&sampled) {
        assert_eq!((&s.id, &s.form, &s.params), (&y.id, &y.form, &y.params));
        if s.outcome == Outcome::Pass {
            assert_eq!(y.outcome, Outcome::Pass, "{}", y.record(false));
        }
    }
}

#[test]
fn order_zero_sweep() {
    let reports = verify_all(&Sweep::new(0, Mode::Symbolic, 1));
    for r in &reports {
        match r.id.as_str() {
            "AB1" | "RF1" => assert_eq!(r.outcome, Outcome::Skipped, "{}", r.record(false)),
            _ => assert!(!r.is_gating_failure(), "{}", r.record(false)),
        }
    }
    let ab1 = reports.iter().find(|r| r.id == "AB1").unwrap();
    assert_eq!(
        ab1.record(false),
        format!("id=AB1 mode=symbolic params=N=0,form=corrected outcome=skipped witness={} millis=0", ab1.witness.as_ref().unwrap())
    );
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let mut one = Sweep::new(2, Mode::Sampled, 9);
    one.threads = Some(1);
    let mut four = one.clone();
    four.threads = Some(4);
    let reports = verify_all(&one);
    let a: Vec<String> = reports.iter().map(|r| r.record(false)).collect();
    let b: Vec<String> = verify_all(&four).iter().map(|r| r.record(false)).collect();
    assert_eq!(a, b);
    let keys: Vec<_> = reports.iter().map(|r| (&r.id, &r.form, &r.params)).collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn t_at_one_post_processing() {
    let t1l = id("T1L");
    assert_eq!(t1l.post, Post::TAtOne);
    for k in 0..=8 {
        assert_eq!(sym(&t1l, t1l.primary(), &n(k)), Outcome::Pass, "N={k}");
    }
    let r = verify_at_point(&t1l, t1l.primary(), &n(4), &pt((1, 3), (2, 5), (-3, 7), (1, 1)), VerifyOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Pass);
}

#[test]
fn generic_builders_commute_with_evaluation() {
    let point = pt((2, 7), (-3, 4), (5, 6), (3, 11));
    for i in catalog() {
        let p = if i.aux.is_empty() { n(2) } else { Params::new(vec![("N", 2), ("m", 3), ("r", 2)]) };
        if i.post != Post::None || p.n() < i.n_min {
            continue;
        }
        for form in &i.forms {
            let symbolic = (form.lhs.sym)(&p, &Vars::symbolic()).unwrap().eval_at(&point).unwrap();
            let exact = (form.lhs.exact)(&p, &Vars::at(&point)).unwrap();
            assert_eq!(symbolic, exact, "{} {}", i.id, form.name);
            let symbolic = (form.rhs.sym)(&p, &Vars::symbolic()).unwrap().eval_at(&point).unwrap();
            let exact = (form.rhs.exact)(&p, &Vars::at(&point)).unwrap();
            assert_eq!(symbolic, exact, "{} {}", i.id, form.name);
        }
    }
}
