//! Property suites run by `soleknot verify`, and the braid corpora they
//! share with the test targets.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{permutation_from_endo, Braid, Crossing};
use crate::error::Error;
use crate::freegroup::{FreeEndo, Word};
use crate::knotgrp::{
    abelianize, alexander_polynomial, h1_class, sphere_closure_presentation, tietze_simplify,
    LaurentPoly,
};
use crate::satellite::{
    build_filtration, cable_tight_criterion, h1_transitions, tight_witness_search,
};
use crate::solenoid::{profile, solenoids_equivalent, WindingSeq};
use crate::torusgrp::{TorusContext, TorusElement, DEFAULT_BUDGET};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corpus {
    Quick,
    Default,
}

impl std::str::FromStr for Corpus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "quick" => Ok(Corpus::Quick),
            "default" => Ok(Corpus::Default),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown corpus {other:?}, expected quick or default"),
            }),
        }
    }
}

impl fmt::Display for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Corpus::Quick => "quick",
            Corpus::Default => "default",
        })
    }
}

/// Every freely reduced braid word on `strands` strands of length
/// `<= max_len`, in length-then-lexicographic order.
pub fn all_reduced_braids(strands: usize, max_len: usize) -> Vec<Braid> {
    let gens: Vec<Crossing> = (1..strands as u32)
        .flat_map(|i| [Crossing::new(i, false), Crossing::new(i, true)])
        .collect();
    let mut layer: Vec<Vec<Crossing>> = vec![Vec::new()];
    let mut out = vec![Braid::new(strands, Vec::new()).expect("valid strands")];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in &gens {
                if w.last() == Some(&c.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(
            next.iter()
                .map(|w| Braid::new(strands, w.clone()).expect("valid")),
        );
        layer = next;
    }
    out
}

/// Knot-closure braids among [`all_reduced_braids`].
pub fn all_knot_braids(strands: usize, max_len: usize) -> Vec<Braid> {
    all_reduced_braids(strands, max_len)
        .into_iter()
        .filter(|b| b.closure_info().is_knot)
        .collect()
}

/// A freely reduced braid word: strand count uniform in `strands`, length
/// uniform in `0..=max_len`, each letter uniform among those not cancelling
/// the previous one.
pub fn random_braid<R: Rng>(
    rng: &mut R,
    strands: std::ops::RangeInclusive<usize>,
    max_len: usize,
) -> Braid {
    let n = rng.gen_range(strands);
    let len = rng.gen_range(0..=max_len);
    let gens: Vec<Crossing> = (1..n as u32)
        .flat_map(|i| [Crossing::new(i, false), Crossing::new(i, true)])
        .collect();
    let mut word: Vec<Crossing> = Vec::with_capacity(len);
    while word.len() < len && !gens.is_empty() {
        let c = *gens.choose(rng).expect("nonempty");
        if word.last() != Some(&c.inverse()) {
            word.push(c);
        }
    }
    Braid::new(n, word).expect("valid")
}

/// `count` random braids as in [`random_braid`], rejecting non-knots.
pub fn random_knot_braids(
    seed: u64,
    count: usize,
    strands: std::ops::RangeInclusive<usize>,
    max_len: usize,
) -> Vec<Braid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let b = random_braid(&mut rng, strands.clone(), max_len);
        if b.closure_info().is_knot {
            out.push(b);
        }
    }
    out
}

/// Outcome of one suite. Violations are property failures; skips are cases
/// that hit a resource limit before they could be decided.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub violations: Vec<String>,
    pub skipped: Vec<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} violations, {} skipped",
            if self.passed() { "ok  " } else { "FAIL" },
            self.name,
            self.cases,
            self.violations.len(),
            self.skipped.len()
        )?;
        for v in &self.violations {
            write!(f, "\n    violation: {v}")?;
        }
        for s in &self.skipped {
            write!(f, "\n    skipped: {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub corpus: Corpus,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "corpus={} seed={}", self.corpus, self.seed)?;
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all suites passed"
            } else {
                "violations found"
            }
        )
    }
}

/// Collects case outcomes into a report.
struct Tally {
    name: &'static str,
    cases: usize,
    violations: Vec<String>,
    skipped: Vec<String>,
    start: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            violations: Vec::new(),
            skipped: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Records one case: `Ok(None)` passes, `Ok(Some(msg))` is a violation,
    /// a resource-limit error is a skip and any other error a violation.
    fn case(&mut self, label: impl fmt::Display, outcome: Result<Option<String>, Error>) {
        self.cases += 1;
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => self.violations.push(format!("{label}: {msg}")),
            Err(e @ (Error::WordTooLong { .. } | Error::BudgetExceeded { .. })) => {
                self.skipped.push(format!("{label}: {e}"))
            }
            Err(e) => self.violations.push(format!("{label}: {e}")),
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.into(),
            cases: self.cases,
            violations: self.violations,
            skipped: self.skipped,
            millis: self.start.elapsed().as_millis(),
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!cond).then(msg)
}

fn endo_of(n: usize, word: &[i32]) -> FreeEndo {
    Braid::from_signed(n, word).expect("valid").artin_endo()
}

pub fn suite_braid_relations(corpus: Corpus, seed: u64) -> SuiteReport {
    let mut tally = Tally::new("braid_relations");
    let count = match corpus {
        Corpus::Quick => 100,
        Corpus::Default => 500,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let n = rng.gen_range(3..=6usize);
        let i = rng.gen_range(1..n as i32 - 1);
        let far = (n >= 4).then(|| {
            let j = rng.gen_range(1..n as i32);
            if (i - j).abs() >= 2 {
                j
            } else {
                (i + 2 - 1) % (n as i32 - 1) + 1
            }
        });
        let b = random_braid(&mut rng, n..=n, 10);
        let outcome = (|| {
            let braid_rel = endo_of(n, &[i, i + 1, i]) == endo_of(n, &[i + 1, i, i + 1]);
            let far_rel = far
                .filter(|j| (i - j).abs() >= 2)
                .is_none_or(|j| endo_of(n, &[i, j]) == endo_of(n, &[j, i]));
            let e = b.artin_endo();
            let product = Word::reduce((1..=n as u32).map(crate::freegroup::Letter::gen));
            let fixes = e.apply(&product)? == product;
            let inverse = b.then(&b.inverse())?.artin_endo().is_identity();
            let perm = permutation_from_endo(&e) == Some(b.induced_permutation());
            Ok(check(
                braid_rel && far_rel && fixes && inverse && perm,
                || {
                    format!(
                    "braid={braid_rel} far={far_rel} product={fixes} inverse={inverse} permutation={perm}"
                )
                },
            ))
        })();
        tally.case(format_args!("case {case} ({b})"), outcome);
    }
    tally.finish()
}

/// Knot braids in B2 and B3 up to length 5, plus random knot braids.
pub fn centralizer_corpus(corpus: Corpus, seed: u64) -> Vec<Braid> {
    let (len, random) = match corpus {
        Corpus::Quick => (3, 10),
        Corpus::Default => (5, 100),
    };
    let mut out = all_knot_braids(2, len);
    out.extend(all_knot_braids(3, len));
    out.extend(random_knot_braids(seed, random, 2..=4, 8));
    out
}

fn centralizer_case(beta: &Braid) -> Result<Option<String>, Error> {
    let ctx = TorusContext::new(beta);
    let gens = ctx.centralizer_generators()?;
    let n = beta.strands() as i64;
    let x1 = Word::generator(1);
    let image = ctx.apply_power(n, &x1)?;
    if x1.conjugate_by(&gens.a.tail) != image {
        return Ok(Some("w x1 w^-1 differs from beta^n(x1)".into()));
    }
    if gens.a.tail.last().is_some_and(|l| l.index() == 1) {
        return Ok(Some("w ends in a power of x1".into()));
    }
    if !ctx.commute(&gens.a, &gens.b)? {
        return Ok(Some("generators do not commute".into()));
    }
    for k in -3..=3 {
        if !ctx.power_identity_check(k)? {
            return Ok(Some(format!("power identity fails at k={k}")));
        }
    }
    Ok(None)
}

pub fn suite_centralizer(corpus: Corpus, seed: u64) -> SuiteReport {
    let mut tally = Tally::new("centralizer");
    let braids = centralizer_corpus(corpus, seed);
    let results: Vec<_> = braids.par_iter().map(centralizer_case).collect();
    for (b, r) in braids.iter().zip(results) {
        tally.case(b, r);
    }
    tally.finish()
}

pub fn suite_uniqueness(corpus: Corpus, _seed: u64) -> SuiteReport {
    let mut tally = Tally::new("uniqueness");
    let (len, zlen) = match corpus {
        Corpus::Quick => (3, 3),
        Corpus::Default => (5, 6),
    };
    let mut braids = all_knot_braids(2, len);
    braids.extend(all_knot_braids(3, len));
    let results: Vec<_> = braids
        .par_iter()
        .map(|b| -> Result<Option<String>, Error> {
            let ctx = TorusContext::new(b);
            let texp = 2 * b.strands() as u32;
            let found = ctx.centralizer_enumeration(texp, zlen, DEFAULT_BUDGET)?;
            for e in &found {
                if !ctx.in_predicted_centralizer(e)? {
                    return Ok(Some(format!("{e} commutes with x1 but is not predicted")));
                }
            }
            let predicted = ctx.predicted_in_box(texp, zlen)?;
            Ok(check(found == predicted, || {
                let missing: Vec<&TorusElement> =
                    predicted.iter().filter(|e| !found.contains(e)).collect();
                format!("predicted elements not found: {missing:?}")
            }))
        })
        .collect();
    for (b, r) in braids.iter().zip(results) {
        tally.case(b, r);
    }
    tally.finish()
}

/// `sum_{i=0}^{2k} (-1)^i t^i`.
pub fn torus_2_odd_polynomial(k: usize) -> LaurentPoly {
    let coeffs: Vec<i64> = (0..=2 * k)
        .map(|i| if i % 2 == 0 { 1 } else { -1 })
        .collect();
    LaurentPoly::from_i64(0, &coeffs)
}

fn closure_case(beta: &Braid) -> Result<Option<String>, Error> {
    let p = sphere_closure_presentation(beta)?;
    if !abelianize(&p).is_infinite_cyclic() {
        return Ok(Some(format!("H1 = {}", abelianize(&p))));
    }
    let pp = p.peripheral().ok_or(Error::MissingPeripheral)?;
    let lon = h1_class(&p, &pp.longitude)?;
    if lon != 0 {
        return Ok(Some(format!("longitude class {lon}")));
    }
    let delta = alexander_polynomial(&p)?;
    let at_one = delta.eval_at_one();
    if at_one.magnitude() != &num_bigint::BigUint::from(1u8) {
        return Ok(Some(format!("Delta(1) = {at_one}")));
    }
    if !delta.is_symmetric() {
        return Ok(Some(format!("Delta = {delta} is not symmetric")));
    }
    let simple = tietze_simplify(&p);
    if abelianize(&simple) != abelianize(&p) || alexander_polynomial(&simple)? != delta {
        return Ok(Some("simplification changed an invariant".into()));
    }
    Ok(None)
}

pub fn suite_closures(corpus: Corpus, seed: u64) -> SuiteReport {
    let mut tally = Tally::new("closures");
    for k in 0..=4usize {
        let beta = Braid::from_signed(2, &vec![1; 2 * k + 1]).expect("valid");
        let outcome = sphere_closure_presentation(&beta)
            .and_then(|p| alexander_polynomial(&p))
            .map(|d| {
                let expect = torus_2_odd_polynomial(k);
                check(d == expect, || format!("Delta = {d}, expected {expect}"))
            });
        tally.case(format_args!("torus (2,{})", 2 * k + 1), outcome);
    }
    let braids = centralizer_corpus(corpus, seed);
    let results: Vec<_> = braids.par_iter().map(closure_case).collect();
    for (b, r) in braids.iter().zip(results) {
        tally.case(b, r);
    }
    tally.finish()
}

/// Satellite patterns: the trefoil braid and knot braids in B3.
pub fn satellite_patterns(corpus: Corpus) -> Vec<Braid> {
    let mut out = vec![Braid::from_signed(2, &[1, 1, 1]).expect("valid")];
    let len = match corpus {
        Corpus::Quick => 2,
        Corpus::Default => 4,
    };
    out.extend(all_knot_braids(3, len));
    out
}

fn filtration_case(patterns: &[Braid]) -> Result<Option<String>, Error> {
    let seed = sphere_closure_presentation(&Braid::from_signed(2, &[1, 1, 1])?)?;
    let stages = build_filtration(&seed, patterns, patterns.len(), false)?;
    let transitions = h1_transitions(&stages)?;
    for (k, pattern) in patterns.iter().enumerate() {
        if transitions[k] != pattern.strands() as i64 {
            return Ok(Some(format!("transition {k} is {}", transitions[k])));
        }
    }
    let mut prev = alexander_polynomial(&seed)?;
    for (k, stage) in stages.iter().enumerate() {
        let p = &stage.presentation;
        if !abelianize(p).is_infinite_cyclic() {
            return Ok(Some(format!("stage {k}: H1 = {}", abelianize(p))));
        }
        let pp = p.peripheral().ok_or(Error::MissingPeripheral)?;
        if h1_class(p, &pp.longitude)? != 0 {
            return Ok(Some(format!("stage {k}: longitude not null-homologous")));
        }
        if let Some(beta) = &stage.braid {
            let pattern = alexander_polynomial(&sphere_closure_presentation(beta)?)?;
            let expect = (&pattern * &prev.substitute_power(beta.strands() as i64)).normalized();
            let got = alexander_polynomial(p)?;
            if got != expect {
                return Ok(Some(format!("stage {k}: Delta = {got}, expected {expect}")));
            }
            prev = got;
        }
    }
    Ok(None)
}

pub fn suite_satellite(corpus: Corpus, seed: u64) -> SuiteReport {
    let mut tally = Tally::new("satellite");
    let pool = satellite_patterns(corpus);
    let chains = match corpus {
        Corpus::Quick => 3,
        Corpus::Default => 12,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<Vec<Braid>> = (1..=3).map(|d| vec![pool[0].clone(); d]).collect();
    for _ in 0..chains {
        let depth = rng.gen_range(1..=3);
        cases.push(
            (0..depth)
                .map(|_| pool.choose(&mut rng).expect("nonempty").clone())
                .collect(),
        );
    }
    let results: Vec<_> = cases.par_iter().map(|c| filtration_case(c)).collect();
    for (c, r) in cases.iter().zip(results) {
        let names: Vec<String> = c.iter().map(Braid::to_string).collect();
        tally.case(format_args!("[{}]", names.join(", ")), r);
    }
    tally.finish()
}

pub fn suite_tight(corpus: Corpus, seed: u64) -> SuiteReport {
    let mut tally = Tally::new("tight_criterion");
    let bound = match corpus {
        Corpus::Quick => 8,
        Corpus::Default => 30,
    };
    let witnesses = tight_witness_search(bound);
    tally.case(
        format_args!("search |params| <= {bound}"),
        Ok(check(!witnesses.is_empty(), || "no witnesses".into())),
    );
    let mut bad = 0usize;
    for w in &witnesses {
        match cable_tight_criterion(w.s, w.t, w.p, w.q, w.d, w.eps, w.delta) {
            Ok(c) if c.satisfied => {}
            _ => bad += 1,
        }
    }
    tally.case(
        format_args!("{} witnesses re-checked", witnesses.len()),
        Ok(check(bad == 0, || {
            format!("{bad} witnesses fail the criterion")
        })),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0usize;
    let mut tried = 0usize;
    while tried < 20_000 {
        let mut r = || rng.gen_range(-bound..=bound);
        let (s, t, p, q) = (r(), r(), r(), r());
        let d = if tried.is_multiple_of(2) { 1 } else { r() };
        let (eps, delta) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        if t == 0 || d == 0 || num_integer::gcd(p, q) != 1 {
            continue;
        }
        if d != 1 && num_integer::gcd(t, d) != 1 {
            continue;
        }
        tried += 1;
        if cable_tight_criterion(s, t, p, q, d, eps, delta).is_ok_and(|c| c.satisfied) {
            accepted += 1;
        }
    }
    tally.case(
        "d = 1 or gcd(t, d) = 1 rejected",
        Ok(check(accepted == 0, || {
            format!("{accepted} tuples accepted")
        })),
    );
    tally.finish()
}

pub fn random_winding_seq<R: Rng>(rng: &mut R) -> WindingSeq {
    let mut entries = |lo: usize, hi: usize| -> Vec<u64> {
        let len = rng.gen_range(lo..=hi);
        (0..len).map(|_| rng.gen_range(2..=40)).collect()
    };
    let preperiod = entries(0, 4);
    let period = entries(1, 3);
    WindingSeq { preperiod, period }
}

pub fn suite_solenoid(corpus: Corpus, seed: u64) -> SuiteReport {
    let mut tally = Tally::new("solenoid");
    let count = match corpus {
        Corpus::Quick => 50,
        Corpus::Default => 200,
    };
    let examples = [
        ("pre: | per: 2", "pre: | per: 4", true),
        ("pre: | per: 2", "pre: | per: 3", false),
        ("pre: | per: 2 3", "pre: | per: 6", true),
    ];
    for (a, b, expect) in examples {
        let outcome = a
            .parse::<WindingSeq>()
            .and_then(|a| Ok((a, b.parse::<WindingSeq>()?)))
            .and_then(|(a, b)| solenoids_equivalent(&a, &b))
            .map(|got| check(got == expect, || format!("got {got}")));
        tally.case(format_args!("{a} ~ {b}"), outcome);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let (a, b, c) = (
            random_winding_seq(&mut rng),
            random_winding_seq(&mut rng),
            random_winding_seq(&mut rng),
        );
        let mut edited = a.clone();
        edited
            .preperiod
            .truncate(rng.gen_range(0..=a.preperiod.len()));
        edited.preperiod.push(rng.gen_range(2..=99));
        let mut rotated = a.clone();
        let k = rng.gen_range(0..a.period.len());
        rotated.period.rotate_left(k);
        let outcome = (|| {
            let eq = solenoids_equivalent;
            let refl = eq(&a, &a)?;
            let sym = eq(&a, &b)? == eq(&b, &a)?;
            let trans = !(eq(&a, &b)? && eq(&b, &c)?) || eq(&a, &c)?;
            let edit = eq(&a, &edited)? && eq(&a, &rotated)?;
            let consistent = eq(&a, &b)? == (profile(&a)?.infinite == profile(&b)?.infinite);
            Ok(check(refl && sym && trans && edit && consistent, || {
                format!("refl={refl} sym={sym} trans={trans} edits={edit}")
            }))
        })();
        tally.case(format_args!("case {case} ({a} / {b})"), outcome);
    }
    tally.finish()
}

pub const SUITE_NAMES: [&str; 7] = [
    "braid_relations",
    "centralizer",
    "closures",
    "satellite",
    "solenoid",
    "tight_criterion",
    "uniqueness",
];

/// Runs every suite, in parallel, and orders reports by name.
pub fn run_all(corpus: Corpus, seed: u64) -> VerifyReport {
    type Suite = fn(Corpus, u64) -> SuiteReport;
    let suites: [Suite; 7] = [
        suite_braid_relations,
        suite_centralizer,
        suite_closures,
        suite_satellite,
        suite_solenoid,
        suite_tight,
        suite_uniqueness,
    ];
    let mut reports: Vec<SuiteReport> = suites.par_iter().map(|s| s(corpus, seed)).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    VerifyReport {
        corpus,
        seed,
        suites: reports,
    }
}
