//! The identity catalog and its verification drivers.

mod catalog;

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::{Field, Integer, Rational, RationalFunction, Var, Vars};
use crate::{Error, Result};

pub use catalog::{catalog, hn1_from_ac3};

/// Integer parameters of one instance, e.g. `N=3` or `N=2,m=2,r=3`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(Vec<(&'static str, i64)>);

impl Params {
    pub fn new(entries: Vec<(&'static str, i64)>) -> Self {
        Params(entries)
    }

    pub fn with_n(n: usize) -> Self {
        Params(vec![("N", n as i64)])
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    /// The truncation order `N`.
    pub fn n(&self) -> usize {
        self.get("N").unwrap_or(0) as usize
    }

    pub fn entries(&self) -> &[(&'static str, i64)] {
        &self.0
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, value)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

/// One side of an identity, instantiated for symbolic and for exact rational
/// evaluation.
#[derive(Clone, Copy)]
pub struct Builder {
    pub sym: fn(&Params, &Vars<RationalFunction>) -> Result<RationalFunction>,
    pub exact: fn(&Params, &Vars<Rational>) -> Result<Rational>,
}

/// How a form relates to the displayed statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormKind {
    /// The display as printed, when it holds.
    Printed,
    /// The display as printed, known to fail; reported but not gating.
    PrintedErratum,
    /// A correction obtained by replaying the derivation.
    Corrected,
    /// A further reading checked for comparison; not gating.
    Variant,
    /// An equivalent form that must also hold.
    Alternate,
}

impl FormKind {
    pub fn gating(self) -> bool {
        matches!(self, FormKind::Printed | FormKind::Corrected | FormKind::Alternate)
    }
}

#[derive(Clone, Copy)]
pub struct Form {
    pub name: &'static str,
    pub kind: FormKind,
    pub lhs: Builder,
    pub rhs: Builder,
}

/// Post-processing applied to both sides before comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Post {
    None,
    /// Substitute `t = 1`; the sides must already be regular there.
    TAtOne,
}

/// Auxiliary integer parameters beyond `N`, each with an inclusive range.
pub type AuxRange = (&'static str, i64, i64);

#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    pub title: &'static str,
    /// Phrase locating the display in the source text.
    pub anchor: &'static str,
    pub n_min: usize,
    pub aux: &'static [AuxRange],
    pub constraints: &'static [&'static str],
    pub post: Post,
    pub forms: Vec<Form>,
    pub note: Option<&'static str>,
}

impl Identity {
    pub fn form(&self, name: &str) -> Option<&Form> {
        self.forms.iter().find(|f| f.name == name)
    }

    /// The gating form checked by default.
    pub fn primary(&self) -> &Form {
        self.forms.iter().find(|f| f.kind.gating()).expect("every identity has a gating form")
    }

    pub fn is_erratum_candidate(&self) -> bool {
        self.forms.iter().any(|f| f.kind == FormKind::PrintedErratum)
    }

    /// Parameter sets with `N <= n_max`, including those below the declared range.
    pub fn grid(&self, n_max: usize) -> Vec<Params> {
        let mut out = Vec::new();
        for n in 0..=n_max {
            let mut combos: Vec<Vec<(&'static str, i64)>> = vec![vec![("N", n as i64)]];
            for &(name, lo, hi) in self.aux {
                combos = combos
                    .into_iter()
                    .flat_map(|c| {
                        (lo..=hi).map(move |x| {
                            let mut c = c.clone();
                            c.push((name, x));
                            c
                        })
                    })
                    .collect();
            }
            out.extend(combos.into_iter().map(Params::new));
        }
        out
    }

    fn check_params(&self, params: &Params) -> Result<()> {
        if params.n() < self.n_min {
            return Err(Error::ConstraintViolation(format!("{} needs N >= {}", self.id, self.n_min)));
        }
        for &(name, lo, _) in self.aux {
            match params.get(name) {
                Some(x) if x >= lo => {}
                _ => return Err(Error::ConstraintViolation(format!("{} needs {name} >= {lo}", self.id))),
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Symbolic,
    Sampled,
    Series,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Sampled => "sampled",
            Mode::Series => "series",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub mode: Mode,
    pub params: Vec<(String, i64)>,
    pub form: Option<String>,
    pub outcome: Outcome,
    /// Digest of the canonical difference on failure, or of the skip reason.
    pub witness: Option<String>,
    /// Human-readable detail: the difference or the skip reason.
    pub note: Option<String>,
    pub millis: u64,
    /// Whether a failure of this report counts against the run.
    pub gating: bool,
    /// Skipped because no pole-free sample point was found.
    pub exhausted: bool,
}

impl VerificationReport {
    /// `id=.. mode=.. params=.. outcome=.. witness=.. millis=..`; `millis` is
    /// written as 0 unless `timings` is set, so runs compare byte for byte.
    pub fn record(&self, timings: bool) -> String {
        let mut params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if let Some(form) = &self.form {
            params.push(format!("form={form}"));
        }
        let params = if params.is_empty() { "-".to_string() } else { params.join(",") };
        format!(
            "id={} mode={} params={} outcome={} witness={} millis={}",
            self.id,
            self.mode.name(),
            params,
            self.outcome.name(),
            self.witness.as_deref().unwrap_or("-"),
            if timings { self.millis } else { 0 }
        )
    }

    pub fn is_gating_failure(&self) -> bool {
        self.gating && self.outcome == Outcome::Fail
    }

    fn sort_key(&self) -> (String, Option<String>, Vec<(String, i64)>) {
        (self.id.clone(), self.form.clone(), self.params.clone())
    }
}

/// Short hex digest used as a failure witness.
pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hex::encode(&hash[..8])
}

fn report(identity: &Identity, form: &Form, mode: Mode, params: &Params, outcome: Outcome, note: Option<String>, millis: u64) -> VerificationReport {
    VerificationReport {
        id: identity.id.to_string(),
        mode,
        params: params.entries().iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        form: Some(form.name.to_string()),
        outcome,
        witness: match outcome {
            Outcome::Pass => None,
            _ => note.as_deref().map(digest),
        },
        note,
        millis,
        gating: form.kind.gating(),
        exhausted: false,
    }
}

/// Knobs shared by the drivers.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Multiply the right side by `1 + q`; every identity must then fail.
    pub perturb: bool,
}

fn symbolic_sides(identity: &Identity, form: &Form, params: &Params, opts: VerifyOptions) -> Result<(RationalFunction, RationalFunction)> {
    let v = Vars::symbolic();
    let mut lhs = (form.lhs.sym)(params, &v)?;
    let mut rhs = (form.rhs.sym)(params, &v)?;
    if opts.perturb {
        rhs = rhs.mul_ref(&v.q.add(&v.one()));
    }
    if identity.post == Post::TAtOne {
        lhs = lhs.substitute(Var::T, &RationalFunction::one())?;
        rhs = rhs.substitute(Var::T, &RationalFunction::one())?;
    }
    Ok((lhs, rhs))
}

/// Builds both sides as rational functions and compares canonical forms.
pub fn verify_symbolic(identity: &Identity, form: &Form, params: &Params, opts: VerifyOptions) -> Result<VerificationReport> {
    identity.check_params(params)?;
    let start = Instant::now();
    let (lhs, rhs) = symbolic_sides(identity, form, params, opts)?;
    let (outcome, note) = if lhs == rhs {
        (Outcome::Pass, None)
    } else {
        (Outcome::Fail, Some(lhs.sub_ref(&rhs).to_string()))
    };
    Ok(report(identity, form, Mode::Symbolic, params, outcome, note, start.elapsed().as_millis() as u64))
}

/// A sample point `(q, a, b, t)`.
pub type Point = [Rational; 4];

fn exact_sides(identity: &Identity, form: &Form, params: &Params, point: &Point, opts: VerifyOptions) -> Result<(Rational, Rational)> {
    match identity.post {
        Post::None => {
            let v = Vars::at(point);
            let lhs = (form.lhs.exact)(params, &v)?;
            let mut rhs = (form.rhs.exact)(params, &v)?;
            if opts.perturb {
                rhs = rhs.mul(&v.q.add(&v.one()));
            }
            Ok((lhs, rhs))
        }
        Post::TAtOne => {
            // q, a, b fixed; t kept symbolic until it is set to 1.
            let c = RationalFunction::from_rational;
            let v = Vars { q: c(&point[0]), a: c(&point[1]), b: c(&point[2]), t: RationalFunction::var(Var::T) };
            let lhs = (form.lhs.sym)(params, &v)?;
            let mut rhs = (form.rhs.sym)(params, &v)?;
            if opts.perturb {
                rhs = rhs.mul_ref(&v.q.add(&v.one()));
            }
            let at_one = |f: RationalFunction| -> Result<Rational> {
                let g = f.substitute(Var::T, &RationalFunction::one()).map_err(|_| Error::Pole)?;
                g.as_rational().ok_or_else(|| Error::Internal("value depends on a free variable".into()))
            };
            Ok((at_one(lhs)?, at_one(rhs)?))
        }
    }
}

/// Compares both sides at one exact point; a pole anywhere gives a skipped report.
pub fn verify_at_point(identity: &Identity, form: &Form, params: &Params, point: &Point, opts: VerifyOptions) -> Result<VerificationReport> {
    identity.check_params(params)?;
    let start = Instant::now();
    let (outcome, note) = match exact_sides(identity, form, params, point, opts) {
        Ok((l, r)) if l == r => (Outcome::Pass, None),
        Ok((l, r)) => (Outcome::Fail, Some(format!("{}", l - r))),
        Err(Error::Pole | Error::IdenticallyZeroDenominator(_)) => (
            Outcome::Skipped,
            Some(format!("pole at q={},a={},b={},t={}", point[0], point[1], point[2], point[3])),
        ),
        Err(e) => return Err(e),
    };
    Ok(report(identity, form, Mode::Sampled, params, outcome, note, start.elapsed().as_millis() as u64))
}

/// Seeded source of sample points: `q` in `(0, 1)`, and nonzero `a`, `b`, `t`,
/// all with numerator and denominator at most 64 in absolute value.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A sampler whose stream depends only on `seed` and `label`.
    pub fn for_label(seed: u64, label: &str) -> Self {
        let hash = Sha256::digest(format!("{seed}:{label}").as_bytes());
        let mut bytes = [0u8; 32];
        bytes.copy_from_slice(&hash);
        Sampler { rng: ChaCha8Rng::from_seed(bytes) }
    }

    const BOUND: i64 = 64;

    fn nonzero(&mut self) -> Rational {
        let num = self.rng.random_range(1..=Self::BOUND);
        let den = self.rng.random_range(1..=Self::BOUND);
        let sign = if self.rng.random_bool(0.5) { -1 } else { 1 };
        Rational::new(Integer::from(sign * num), Integer::from(den))
    }

    fn unit_interval(&mut self) -> Rational {
        let den = self.rng.random_range(2..=Self::BOUND);
        let num = self.rng.random_range(1..den);
        Rational::new(Integer::from(num), Integer::from(den))
    }

    pub fn point(&mut self) -> Point {
        let q = self.unit_interval();
        [q, self.nonzero(), self.nonzero(), self.nonzero()]
    }
}

/// Draws points until one is pole-free, then reports the comparison there.
pub fn verify_sampled(identity: &Identity, form: &Form, params: &Params, sampler: &mut Sampler, redraw_budget: usize, opts: VerifyOptions) -> Result<VerificationReport> {
    for _ in 0..=redraw_budget {
        let point = sampler.point();
        let r = verify_at_point(identity, form, params, &point, opts)?;
        if r.outcome != Outcome::Skipped {
            return Ok(r);
        }
    }
    Err(Error::Exhausted(redraw_budget))
}

/// Settings for a sweep over the catalog.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub n_max: usize,
    pub mode: Mode,
    pub seed: u64,
    /// Pole-free points per instance in sampled mode.
    pub points: usize,
    pub redraw_budget: usize,
    /// Restrict to these ids; empty means all.
    pub ids: Vec<String>,
    /// Include non-gating forms.
    pub all_forms: bool,
    pub threads: Option<usize>,
    pub options: VerifyOptions,
}

impl Sweep {
    pub fn new(n_max: usize, mode: Mode, seed: u64) -> Self {
        Sweep {
            n_max,
            mode,
            seed,
            points: 5,
            redraw_budget: 64,
            ids: Vec::new(),
            all_forms: true,
            threads: None,
            options: VerifyOptions::default(),
        }
    }
}

fn run_job(identity: &Identity, form: &Form, params: &Params, sweep: &Sweep) -> VerificationReport {
    let mode = sweep.mode;
    if params.n() < identity.n_min {
        let note = format!("N={} is below the range N >= {}", params.n(), identity.n_min);
        return report(identity, form, mode, params, Outcome::Skipped, Some(note), 0);
    }
    let result = match mode {
        Mode::Symbolic | Mode::Series => verify_symbolic(identity, form, params, sweep.options),
        Mode::Sampled => {
            let label = format!("{}/{}/{}", identity.id, form.name, params);
            let mut sampler = Sampler::for_label(sweep.seed, &label);
            let start = Instant::now();
            let mut worst: Option<VerificationReport> = None;
            let mut err = None;
            for _ in 0..sweep.points {
                match verify_sampled(identity, form, params, &mut sampler, sweep.redraw_budget, sweep.options) {
                    Ok(r) if r.outcome == Outcome::Fail => {
                        worst = Some(r);
                        break;
                    }
                    Ok(r) => worst = worst.or(Some(r)),
                    Err(e) => {
                        err = Some(e);
                        break;
                    }
                }
            }
            match (err, worst) {
                (Some(e), _) => Err(e),
                (None, Some(mut r)) => {
                    r.millis = start.elapsed().as_millis() as u64;
                    Ok(r)
                }
                (None, None) => Err(Error::Exhausted(sweep.redraw_budget)),
            }
        }
    };
    result.unwrap_or_else(|e| {
        let note = e.to_string();
        let exhausted = matches!(e, Error::Exhausted(_));
        let outcome = if exhausted { Outcome::Skipped } else { Outcome::Fail };
        VerificationReport { exhausted, ..report(identity, form, mode, params, outcome, Some(note), 0) }
    })
}

/// Runs every selected catalog entry over its grid up to `n_max`; the result is
/// sorted by (id, form, params) whatever the thread count.
pub fn verify_all(sweep: &Sweep) -> Vec<VerificationReport> {
    verify_catalog(&catalog(), sweep)
}

/// [`verify_all`] over an explicit list of identities.
pub fn verify_catalog(identities: &[Identity], sweep: &Sweep) -> Vec<VerificationReport> {
    let mut jobs = Vec::new();
    for identity in identities {
        if !sweep.ids.is_empty() && !sweep.ids.iter().any(|id| id.eq_ignore_ascii_case(identity.id)) {
            continue;
        }
        for form in &identity.forms {
            if !sweep.all_forms && !form.kind.gating() {
                continue;
            }
            for params in identity.grid(sweep.n_max) {
                jobs.push((identity, form, params));
            }
        }
    }
    // Large instances first keeps the pool busy to the end.
    jobs.sort_by_key(|(_, _, p)| std::cmp::Reverse(p.n()));
    let run = || -> Vec<VerificationReport> {
        jobs.par_iter().map(|(identity, form, params)| run_job(identity, form, params, sweep)).collect()
    };
    let mut reports = match sweep.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    reports.sort_by_key(|r| r.sort_key());
    reports
}

/// Looks an identity up by id, ignoring case.
pub fn find(id: &str) -> Option<Identity> {
    catalog().into_iter().find(|i| i.id.eq_ignore_ascii_case(id))
}
