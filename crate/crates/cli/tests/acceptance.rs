//! The acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use qfine::algebra::poly_gcd;
use qfine::fine::{andrews_bell_at, fine_at, fine_n};
use qfine::qkernel::{check_elem_shift, check_gr11, qbinom, qpoch};
use qfine::registry::{
    catalog, verify_all, verify_catalog, verify_symbolic, Builder, Form, FormKind, Identity, Mode, Outcome, Params, Post,
    Sweep, VerificationReport, VerifyOptions,
};
use qfine::series::{fine_series, series_from_ratfunc, verify_limit, LimitId};
use qfine::{Monomial, Polynomial, Rational, RationalFunction, Result, Var, Vars};
use qfine_cli::app::{exit_code, EXIT_FAIL, EXIT_PASS};

type Verdict = std::result::Result<String, String>;

fn v(x: Var) -> RationalFunction {
    RationalFunction::var(x)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn summarize(reports: &[VerificationReport]) -> (usize, usize, usize) {
    let gating_pass = reports.iter().filter(|r| r.gating && r.outcome == Outcome::Pass).count();
    let gating_bad = reports.iter().filter(|r| r.gating && r.outcome != Outcome::Pass && !skipped_below_range(r)).count();
    let errata_fail = reports.iter().filter(|r| !r.gating && r.outcome == Outcome::Fail).count();
    (gating_pass, gating_bad, errata_fail)
}

fn skipped_below_range(r: &VerificationReport) -> bool {
    r.outcome == Outcome::Skipped && !r.exhausted
}

fn symbolic_sweep() -> Verdict {
    let ids = catalog().len();
    if ids < 29 {
        return Err(format!("catalog has {ids} entries"));
    }
    let start = Instant::now();
    let reports = verify_all(&Sweep::new(6, Mode::Symbolic, 1));
    let elapsed = start.elapsed();
    let (pass, bad, errata) = summarize(&reports);
    let t31 = reports.iter().filter(|r| r.id == "T31").map(|r| r.outcome).collect::<Vec<_>>();
    let both = t31.contains(&Outcome::Pass) && t31.contains(&Outcome::Fail);
    let detail = format!("{ids} ids, {pass} gating checks pass, {bad} bad, {errata} printed-erratum failures reported, {elapsed:.1?}");
    if bad == 0 && both && elapsed <= Duration::from_secs(300) { Ok(detail) } else { Err(detail) }
}

fn sampled_sweep() -> Verdict {
    let start = Instant::now();
    let reports = verify_all(&Sweep::new(12, Mode::Sampled, 7));
    let (pass, bad, errata) = summarize(&reports);
    let detail = format!("{pass} gating checks pass at 5 points each, {bad} bad, {errata} erratum failures, {:.1?}", start.elapsed());
    if bad == 0 { Ok(detail) } else { Err(detail) }
}

fn specializations() -> Verdict {
    let one = RationalFunction::one();
    let (q, a, b, t) = (v(Var::Q), v(Var::A), v(Var::B), v(Var::T));
    for n in 0..=8usize {
        let f = fine_n(n);
        let at_b1 = f.substitute(Var::B, &one).map_err(|e| e.to_string())?;
        let expected = qpoch(&(&(&a * &t) * &q), n, 1).checked_div(&qpoch(&t, n, 1)).map_err(|e| e.to_string())?;
        if at_b1 != expected {
            return Err(format!("b -> 1 fails at N={n}"));
        }
        let at_t1 = (&(&one - &t) * &f).substitute(Var::T, &one).map_err(|e| e.to_string())?;
        let qn = RationalFunction::monomial(Monomial::var(Var::Q, n as u32));
        let rhs = (&(&one - &qn) * &qpoch(&(&a * &q), n, 1)).checked_div(&qpoch(&(&b * &q), n, 1)).map_err(|e| e.to_string())?;
        if at_t1 != rhs {
            return Err(format!("t = 1 fails at N={n}"));
        }
    }
    Ok("b -> 1 and t = 1 hold for N <= 8".into())
}

fn limits() -> Verdict {
    let start = Instant::now();
    let mut failed = Vec::new();
    for id in LimitId::ALL {
        match verify_limit(id, 8) {
            Ok(r) if r.outcome == Outcome::Pass => {}
            _ => failed.push(id.name()),
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("{} limit ids at D=8, {} failing {failed:?}, {elapsed:.1?}", LimitId::ALL.len(), failed.len());
    if failed.is_empty() && elapsed <= Duration::from_secs(120) { Ok(detail) } else { Err(detail) }
}

fn stabilization() -> Verdict {
    let finite = series_from_ratfunc(&fine_n(20), 8).map_err(|e| e.to_string())?;
    let limit = fine_series(8).map_err(|e| e.to_string())?;
    if finite == limit {
        Ok("F_20 and F agree through q^8".into())
    } else {
        Err("F_20 and F differ below q^9".into())
    }
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2, 0u32..3), -4i64..=4), 1..5)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|((i, j, k, l), c)| (Monomial::new([i, j, k, l]), rat(c, 1)))))
}

fn canonical_forms() -> std::result::Result<(), String> {
    let nonzero = || small_poly().prop_filter("nonzero", |p| !p.is_zero());
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&(small_poly(), nonzero(), nonzero()), |(n, d, k)| {
            let f = RationalFunction::new(&n, &d).unwrap();
            let g = RationalFunction::new(&(&n * &k), &(&d * &k)).unwrap();
            prop_assert_eq!(&f, &g);
            prop_assert!(f.denom().leading().unwrap().1 > Rational::from_integer(0.into()));
            prop_assert!(f.is_zero() || poly_gcd(&f.numer(), &f.denom()).is_constant());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn properties() -> Verdict {
    for big_n in 0..=10i64 {
        for n in 0..=big_n {
            let c = |n: i64, k: i64| qbinom(n, k, 1).unwrap();
            if c(big_n, n) != c(big_n, big_n - n) {
                return Err(format!("symmetry fails at [{big_n} {n}]"));
            }
            if big_n > 0 {
                let shifted = c(big_n - 1, n).mul_monomial(Monomial::var(Var::Q, n as u32));
                if c(big_n, n) != &c(big_n - 1, n - 1) + &shifted {
                    return Err(format!("q-Pascal fails at [{big_n} {n}]"));
                }
            }
        }
    }
    let values = [v(Var::A), v(Var::B), v(Var::T), &v(Var::A) * &v(Var::T), RationalFunction::from_int(3)];
    for big_n in 0..=8 {
        for n in 0..=big_n {
            for x in &values {
                if !check_elem_shift(big_n, n, x).unwrap_or(false) {
                    return Err(format!("elementary shift fails at N={big_n} n={n}"));
                }
                for y in &values {
                    if !check_gr11(x, y, big_n, n).unwrap_or(false) {
                        return Err(format!("product identity fails at N={big_n} n={n}"));
                    }
                }
            }
        }
    }
    canonical_forms()?;
    let opts = VerifyOptions { perturb: true };
    let mut forms = 0;
    for identity in catalog() {
        let params = match identity.aux {
            [] => Params::with_n(2),
            _ => Params::new(vec![("N", 2), ("m", 2), ("r", 1)]),
        };
        for form in identity.forms.iter().filter(|f| f.kind.gating()) {
            let r = verify_symbolic(&identity, form, &params, opts).map_err(|e| e.to_string())?;
            if r.outcome != Outcome::Fail {
                return Err(format!("{} {} survives the (1+q) perturbation", identity.id, form.name));
            }
            forms += 1;
        }
    }
    Ok(format!("q-kernel grids, 1000 canonical-form cases, {forms} perturbed forms all fail"))
}

fn fine_sym(p: &Params, v: &Vars<RationalFunction>) -> Result<RationalFunction> {
    fine_at(p.n(), v)
}

fn fine_exact(p: &Params, v: &Vars<Rational>) -> Result<Rational> {
    fine_at(p.n(), v)
}

fn ab_sym(p: &Params, v: &Vars<RationalFunction>) -> Result<RationalFunction> {
    andrews_bell_at(p.n(), v)
}

fn ab_exact(p: &Params, v: &Vars<Rational>) -> Result<Rational> {
    andrews_bell_at(p.n(), v)
}

/// `F_N = F(a,b,t,N)`, which is false from N = 2 on.
fn crafted(rhs: Builder) -> Identity {
    Identity {
        id: "XFAIL",
        title: "crafted entry",
        anchor: "",
        n_min: 0,
        aux: &[],
        constraints: &[],
        post: Post::None,
        forms: vec![Form { name: "printed", kind: FormKind::Printed, lhs: Builder { sym: fine_sym, exact: fine_exact }, rhs }],
        note: None,
    }
}

fn run_cli(args: &[&str]) -> std::io::Result<(i32, Vec<u8>)> {
    let out = Command::new(env!("CARGO_BIN_EXE_qfine")).args(args).output()?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Verdict {
    let args = ["verify", "--all", "--n-max", "4", "--mode", "symbolic", "--seed", "1", "--format", "records"];
    let (c1, o1) = run_cli(&args).map_err(|e| e.to_string())?;
    let (c2, o2) = run_cli(&args).map_err(|e| e.to_string())?;
    if o1 != o2 || o1.is_empty() {
        return Err("record output differs between runs".into());
    }
    if c1 != EXIT_PASS || c2 != EXIT_PASS {
        return Err(format!("catalog run exited {c1}/{c2}"));
    }
    let sweep = Sweep::new(3, Mode::Symbolic, 1);
    let failing = exit_code(&verify_catalog(&[crafted(Builder { sym: ab_sym, exact: ab_exact })], &sweep));
    let passing = exit_code(&verify_catalog(&[crafted(Builder { sym: fine_sym, exact: fine_exact })], &sweep));
    let mut sampled = Sweep::new(3, Mode::Sampled, 1);
    sampled.points = 2;
    let failing_sampled = exit_code(&verify_catalog(&[crafted(Builder { sym: ab_sym, exact: ab_exact })], &sampled));
    let (perturbed, _) = run_cli(&["verify", "--id", "B1", "--n-max", "2", "--perturb", "--format", "records"]).map_err(|e| e.to_string())?;
    let (syntax, _) = run_cli(&["eval", "--expr", "((1-a"]).map_err(|e| e.to_string())?;
    let (pole, _) = run_cli(&["eval", "--expr", "1/(1-q)", "--at", "q=1,a=0,b=0,t=0"]).map_err(|e| e.to_string())?;
    let codes = [failing, passing, failing_sampled, perturbed, syntax, pole];
    let detail = format!("{} identical record lines; exit codes crafted/ok/sampled/perturb/syntax/pole = {codes:?}", o1.split(|&b| b == b'\n').count() - 1);
    if codes == [EXIT_FAIL, EXIT_PASS, EXIT_FAIL, EXIT_FAIL, 2, 3] { Ok(detail) } else { Err(detail) }
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("symbolic sweep N <= 6", symbolic_sweep),
        ("sampled sweep N <= 12, seed 7", sampled_sweep),
        ("specializations b -> 1, t = 1", specializations),
        ("limit suite at D = 8", limits),
        ("stabilization F_20 vs F to q^8", stabilization),
        ("property suites and perturbation", properties),
        ("CLI determinism and exit codes", determinism),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
