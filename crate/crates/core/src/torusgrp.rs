//! The mapping-torus group `F_n x|_beta Z`, elements in normal form
//! `t^m z`, with the HNN relation `t^-1 x t = beta(x)`.
//!
//! Multiplication: `(m1, z1)(m2, z2) = (m1 + m2, beta^m2(z1) z2)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::braid::Braid;
use crate::error::{Error, Result};
use crate::freegroup::{FreeEndo, Letter, Word};
use crate::knotgrp::{PeripheralPair, Presentation};

/// Default cap on candidates examined by the enumeration oracle.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Default cap on the length of any word materialized by the arithmetic.
pub const DEFAULT_MAX_WORD_LEN: usize = 50_000_000;

/// `t^texp * tail`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TorusElement {
    pub texp: i64,
    pub tail: Word,
}

impl TorusElement {
    pub fn new(texp: i64, tail: Word) -> Self {
        TorusElement { texp, tail }
    }

    pub fn identity() -> Self {
        TorusElement::new(0, Word::identity())
    }

    pub fn t_power(m: i64) -> Self {
        TorusElement::new(m, Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        TorusElement::new(0, w)
    }

    pub fn is_identity(&self) -> bool {
        self.texp == 0 && self.tail.is_empty()
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tail.is_empty() {
            write!(f, "t^{} |", self.texp)
        } else {
            write!(f, "t^{} | {}", self.texp, self.tail)
        }
    }
}

impl FromStr for TorusElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s.split_once('|').ok_or_else(|| Error::Parse {
            position: 0,
            message: "expected `t^<m> | <word>`".into(),
        })?;
        let texp = head
            .trim()
            .strip_prefix("t^")
            .and_then(|m| m.parse::<i64>().ok())
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("bad t-power {:?}", head.trim()),
            })?;
        let tail: Word = tail.parse().map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: position + 1,
                message,
            },
            other => other,
        })?;
        Ok(TorusElement { texp, tail })
    }
}

impl Serialize for TorusElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Arithmetic context for one braid. Powers of `beta` are memoized; the
/// cache only ever holds values that a fresh computation would produce.
pub struct TorusContext {
    braid: Braid,
    forward: FreeEndo,
    backward: FreeEndo,
    powers: RwLock<HashMap<i64, Arc<FreeEndo>>>,
    max_word_len: usize,
}

impl fmt::Debug for TorusContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusContext")
            .field("braid", &self.braid.to_string())
            .field("max_word_len", &self.max_word_len)
            .finish()
    }
}

impl TorusContext {
    pub fn new(braid: &Braid) -> Self {
        TorusContext::with_limit(braid, DEFAULT_MAX_WORD_LEN)
    }

    pub fn with_limit(braid: &Braid, max_word_len: usize) -> Self {
        let forward = braid.artin_endo();
        let backward = braid.inverse().artin_endo();
        let mut cache = HashMap::new();
        cache.insert(0, Arc::new(FreeEndo::identity(braid.strands())));
        cache.insert(1, Arc::new(forward.clone()));
        cache.insert(-1, Arc::new(backward.clone()));
        TorusContext {
            braid: braid.clone(),
            forward,
            backward,
            powers: RwLock::new(cache),
            max_word_len,
        }
    }

    pub fn braid(&self) -> &Braid {
        &self.braid
    }

    pub fn strands(&self) -> usize {
        self.braid.strands()
    }

    pub fn max_word_len(&self) -> usize {
        self.max_word_len
    }

    /// `beta^m` as an endomorphism.
    pub fn power(&self, m: i64) -> Result<Arc<FreeEndo>> {
        if let Some(e) = self.powers.read().expect("cache lock").get(&m) {
            return Ok(e.clone());
        }
        let step = if m > 0 { &self.forward } else { &self.backward };
        let (mut j, mut cur) = {
            let cache = self.powers.read().expect("cache lock");
            (0..m.unsigned_abs() as i64)
                .rev()
                .map(|a| a * m.signum())
                .find_map(|j| cache.get(&j).map(|e| (j, e.clone())))
                .expect("identity is cached")
        };
        while j != m {
            let images = cur
                .images()
                .iter()
                .map(|w| step.apply_bounded(w, self.max_word_len))
                .collect::<Result<Vec<_>>>()?;
            cur = Arc::new(FreeEndo::new(images)?);
            j += m.signum();
            self.powers
                .write()
                .expect("cache lock")
                .entry(j)
                .or_insert_with(|| cur.clone());
        }
        Ok(cur)
    }

    fn check_rank(&self, w: &Word) -> Result<()> {
        let index = w.max_index();
        if index as usize > self.strands() {
            return Err(Error::IndexOutOfRank {
                index,
                rank: self.strands(),
            });
        }
        Ok(())
    }

    /// `beta^m(w)`.
    pub fn apply_power(&self, m: i64, w: &Word) -> Result<Word> {
        self.check_rank(w)?;
        if m == 0 || w.is_empty() {
            return Ok(w.clone());
        }
        self.power(m)?.apply_bounded(w, self.max_word_len)
    }

    pub fn multiply(&self, a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
        self.check_rank(&b.tail)?;
        let texp = a
            .texp
            .checked_add(b.texp)
            .ok_or_else(|| Error::Domain("t-exponent overflow".into()))?;
        let moved = self.apply_power(b.texp, &a.tail)?;
        let length = moved.len() + b.tail.len();
        if length > self.max_word_len {
            return Err(Error::WordTooLong {
                length,
                limit: self.max_word_len,
            });
        }
        Ok(TorusElement::new(texp, moved.multiply(&b.tail)))
    }

    /// `(m, z)^-1 = (-m, beta^-m(z^-1))`.
    pub fn invert(&self, a: &TorusElement) -> Result<TorusElement> {
        let texp = a
            .texp
            .checked_neg()
            .ok_or_else(|| Error::Domain("t-exponent overflow".into()))?;
        Ok(TorusElement::new(
            texp,
            self.apply_power(texp, &a.tail.invert())?,
        ))
    }

    pub fn pow(&self, a: &TorusElement, k: i64) -> Result<TorusElement> {
        let base = if k < 0 { self.invert(a)? } else { a.clone() };
        let mut out = TorusElement::identity();
        for _ in 0..k.unsigned_abs() {
            out = self.multiply(&out, &base)?;
        }
        Ok(out)
    }

    pub fn commute(&self, a: &TorusElement, b: &TorusElement) -> Result<bool> {
        Ok(self.multiply(a, b)? == self.multiply(b, a)?)
    }

    /// The pair `a = (t^n, w)`, `b = (t^0, x1)` generating the centralizer of `x1`.
    pub fn centralizer_generators(&self) -> Result<CentralizerGenerators> {
        let w = meridian_conjugator_bounded(&self.braid, self.max_word_len)?;
        Ok(CentralizerGenerators {
            a: TorusElement::new(self.strands() as i64, w),
            b: TorusElement::from_word(Word::generator(1)),
        })
    }

    /// Whether `beta^{kn}(x1)` equals the tail of
    /// `t^{-kn} (t^n w)^k x1 (t^n w)^-k t^{kn}`.
    ///
    /// The right side is evaluated as `g x1 g^-1` with `g = t^{-kn} (t^n w)^k`,
    /// which is the same group element and avoids detours through
    /// `beta^{-kn}` of long words.
    pub fn power_identity_check(&self, k: i64) -> Result<bool> {
        let gens = self.centralizer_generators()?;
        let n = self.strands() as i64;
        let kn = k
            .checked_mul(n)
            .ok_or_else(|| Error::Domain("power overflow".into()))?;
        // (beta^n)^k applied step by step keeps the cache at small powers
        let step = n * k.signum();
        let mut lhs = Word::generator(1);
        for _ in 0..k.unsigned_abs() {
            lhs = self.apply_power(step, &lhs)?;
        }
        let g = self.multiply(&TorusElement::t_power(-kn), &self.pow(&gens.a, k)?)?;
        let rhs = self.multiply(&self.multiply(&g, &gens.b)?, &self.invert(&g)?)?;
        Ok(rhs.texp == 0 && rhs.tail == lhs)
    }

    /// Whether `elem` lies in `{(t^n w)^k x1^l}`.
    pub fn in_predicted_centralizer(&self, elem: &TorusElement) -> Result<bool> {
        let n = self.strands() as i64;
        if elem.texp % n != 0 {
            return Ok(false);
        }
        let a = self.centralizer_generators()?.a;
        let rest = self.multiply(&self.pow(&a, -elem.texp / n)?, elem)?;
        Ok(rest.texp == 0 && is_x1_power(&rest.tail))
    }

    /// Every `(m, z)` with `|m| <= max_texp`, `|z| <= max_len` commuting
    /// with `x1`, found by exhaustive search. Sorted.
    pub fn centralizer_enumeration(
        &self,
        max_texp: u32,
        max_len: u32,
        budget: u64,
    ) -> Result<Vec<TorusElement>> {
        let needed = enumeration_size(self.strands(), max_texp, max_len);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let x1 = Word::generator(1);
        let mut out = Vec::new();
        for m in -(max_texp as i64)..=max_texp as i64 {
            // z x1 z^-1 has length at most 2|z| + 1
            if self.power(m)?.image(1).len() > 2 * max_len as usize + 1 {
                continue;
            }
            let target = self.apply_power(m, &x1)?;
            let mut found = Vec::new();
            for_each_reduced_word(self.strands() as u32, max_len as usize, &mut |z| {
                if x1.conjugate_by(z) == target {
                    found.push(z.clone());
                }
            });
            out.extend(found.into_iter().map(|z| TorusElement::new(m, z)));
        }
        out.sort();
        Ok(out)
    }

    /// The predicted centralizer `{(t^n w)^k x1^l}` cut down to the box
    /// `|m| <= max_texp`, `|z| <= max_len`. Sorted.
    pub fn predicted_in_box(&self, max_texp: u32, max_len: u32) -> Result<Vec<TorusElement>> {
        let n = self.strands() as i64;
        let a = self.centralizer_generators()?.a;
        let kmax = max_texp as i64 / n;
        let mut out = Vec::new();
        for k in -kmax..=kmax {
            let ak = self.pow(&a, k)?;
            // tail of a^k x1^l is c x1^(r + l), with x1^r the trailing x1 run of a^k
            let keep = ak
                .tail
                .letters()
                .iter()
                .rposition(|l| l.index() != 1)
                .map_or(0, |i| i + 1);
            let Some(room) = (max_len as usize).checked_sub(keep) else {
                continue;
            };
            let c = Word::reduce(ak.tail.letters()[..keep].iter().copied());
            for e in -(room as i64)..=room as i64 {
                out.push(TorusElement::new(
                    ak.texp,
                    c.multiply(&Word::generator(1).pow(e)),
                ));
            }
        }
        out.sort();
        Ok(out)
    }
}

fn is_x1_power(w: &Word) -> bool {
    w.letters().iter().all(|l| l.index() == 1)
}

/// Number of freely reduced words of length `<= max_len` over `rank`
/// generators, times the `2 max_texp + 1` possible t-exponents.
pub fn enumeration_size(rank: usize, max_texp: u32, max_len: u32) -> u128 {
    let r = 2 * rank as u128;
    let mut words = 1u128;
    let mut layer = 1u128;
    for len in 1..=max_len {
        layer = if len == 1 {
            r
        } else {
            layer.saturating_mul(r - 1)
        };
        words = words.saturating_add(layer);
    }
    words.saturating_mul(2 * max_texp as u128 + 1)
}

/// Visits every reduced word of length `<= max_len` in depth-first order.
fn for_each_reduced_word(rank: u32, max_len: usize, f: &mut dyn FnMut(&Word)) {
    fn go(rank: u32, max_len: usize, cur: &mut Vec<Letter>, f: &mut dyn FnMut(&Word)) {
        f(&Word::reduce(cur.iter().copied()));
        if cur.len() == max_len {
            return;
        }
        for i in 1..=rank {
            for inv in [false, true] {
                let l = Letter::new(i, inv);
                if cur.last() == Some(&l.inverse()) {
                    continue;
                }
                cur.push(l);
                go(rank, max_len, cur, f);
                cur.pop();
            }
        }
    }
    go(rank, max_len, &mut Vec::new(), f)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CentralizerGenerators {
    pub a: TorusElement,
    pub b: TorusElement,
}

pub fn mt_multiply(a: &TorusElement, b: &TorusElement, beta: &Braid) -> Result<TorusElement> {
    let ctx = TorusContext::new(beta);
    ctx.check_rank(&a.tail)?;
    ctx.multiply(a, b)
}

pub fn mt_invert(a: &TorusElement, beta: &Braid) -> Result<TorusElement> {
    TorusContext::new(beta).invert(a)
}

pub fn mt_pow(a: &TorusElement, k: i64, beta: &Braid) -> Result<TorusElement> {
    let ctx = TorusContext::new(beta);
    ctx.check_rank(&a.tail)?;
    ctx.pow(a, k)
}

/// The complement of the braid closure in the solid torus, with its two
/// boundary tori.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusPresentation {
    /// Peripheral pair is the outer torus: meridian `x1 .. xn`, longitude `t`.
    pub presentation: Presentation,
    /// Meridian of the braid closure.
    pub closure_meridian: Word,
}

/// `<x1 .. xn, t | t^-1 x_i t beta(x_i)^-1>`.
pub fn solid_torus_presentation(beta: &Braid) -> TorusPresentation {
    let n = beta.strands();
    let endo = beta.artin_endo();
    let t = n as u32 + 1;
    let relators = (1..=n as u32)
        .map(|i| {
            Word::reduce([Letter::inv(t), Letter::gen(i), Letter::gen(t)])
                .multiply(&endo.image(i).invert())
        })
        .collect();
    let mut gens: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    gens.push("t".into());
    let boundary = PeripheralPair {
        meridian: Word::reduce((1..=n as u32).map(Letter::gen)),
        longitude: Word::generator(t),
    };
    TorusPresentation {
        presentation: Presentation::new(gens, relators, Some(boundary))
            .expect("indices within rank"),
        closure_meridian: Word::generator(1),
    }
}

/// The `w` with `beta^n(x1) = w x1 w^-1` that does not end in `x1^{+-1}`.
pub fn meridian_conjugator(beta: &Braid) -> Result<Word> {
    meridian_conjugator_bounded(beta, DEFAULT_MAX_WORD_LEN)
}

pub fn meridian_conjugator_bounded(beta: &Braid, limit: usize) -> Result<Word> {
    let info = beta.closure_info();
    if !info.is_knot {
        return Err(Error::NotAKnot {
            components: info.components,
        });
    }
    let mut image = Word::generator(1);
    let endo = beta.artin_endo();
    for _ in 0..beta.strands() {
        image = endo.apply_bounded(&image, limit)?;
    }
    let (prefix, core) = image.cyclic_decompose();
    if core != Word::generator(1) {
        return Err(Error::CoreMismatch {
            core: core.to_string(),
        });
    }
    let keep = prefix
        .letters()
        .iter()
        .rposition(|l| l.index() != 1)
        .map_or(0, |i| i + 1);
    Ok(Word::reduce(prefix.letters()[..keep].iter().copied()))
}

pub fn centralizer_generators(beta: &Braid) -> Result<CentralizerGenerators> {
    TorusContext::new(beta).centralizer_generators()
}

pub fn power_identity_check(beta: &Braid, k: i64) -> Result<bool> {
    TorusContext::new(beta).power_identity_check(k)
}

pub fn centralizer_enumeration_oracle(
    beta: &Braid,
    max_texp: u32,
    max_len: u32,
    budget: u64,
) -> Result<Vec<TorusElement>> {
    let ctx = TorusContext::new(beta);
    ctx.centralizer_generators()?;
    ctx.centralizer_enumeration(max_texp, max_len, budget)
}

/// `SOLEKNOT_BUDGET` if set and numeric, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("SOLEKNOT_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> Braid {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn te(s: &str) -> TorusElement {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        assert_eq!(te("t^2 | x1 x2"), TorusElement::new(2, w("x1 x2")));
        assert_eq!(te("t^-3 |"), TorusElement::t_power(-3));
        assert_eq!(TorusElement::identity().to_string(), "t^0 |");
        assert_eq!(te("t^1 | x1 X1 x2").to_string(), "t^1 | x2");
        assert!("t2 | x1".parse::<TorusElement>().is_err());
        assert!("x1".parse::<TorusElement>().is_err());
        assert!("t^0 | y1".parse::<TorusElement>().is_err());
    }

    #[test]
    fn multiply_examples() {
        let s1 = b("2: s1");
        assert_eq!(
            mt_multiply(&te("t^1 |"), &te("t^0 | x1"), &s1),
            Ok(te("t^1 | x1"))
        );
        // t^-1 x1 t = beta(x1)
        let ctx = TorusContext::new(&s1);
        let conj = ctx
            .multiply(
                &ctx.multiply(&te("t^-1 |"), &te("t^0 | x1")).unwrap(),
                &te("t^1 |"),
            )
            .unwrap();
        assert_eq!(conj, te("t^0 | x1 x2 X1"));
        assert_eq!(
            mt_multiply(&te("t^0 | x3"), &te("t^0 |"), &s1),
            Err(Error::IndexOutOfRank { index: 3, rank: 2 })
        );
    }

    #[test]
    fn conjugators() {
        assert_eq!(meridian_conjugator(&b("2: s1")), Ok(w("x1 x2")));
        assert_eq!(
            meridian_conjugator(&b("2: s1 s1 s1")),
            Ok(w("x1 x2").pow(3))
        );
        let beta = b("3: s1 s2");
        let c = meridian_conjugator(&beta).unwrap();
        let cube = beta
            .artin_endo()
            .power(3)
            .apply(&Word::generator(1))
            .unwrap();
        assert_eq!(Word::generator(1).conjugate_by(&c), cube);
        assert_eq!(
            meridian_conjugator(&b("2: s1 s1")),
            Err(Error::NotAKnot { components: 2 })
        );
    }

    #[test]
    fn conjugator_trailing_x1_is_stripped() {
        // beta^n(x1) conjugated further by x1 has the same normalized w
        for s in ["2: s1 s1 s1", "3: s1 S2", "3: S1 S2 S1 s2 s2"] {
            let beta = b(s);
            if !beta.closure_info().is_knot {
                continue;
            }
            let c = meridian_conjugator(&beta).unwrap();
            assert!(c.last().is_none_or(|l| l.index() != 1), "{s}: {c}");
        }
    }

    #[test]
    fn centralizer_examples() {
        let g = centralizer_generators(&b("2: s1")).unwrap();
        assert_eq!(g.a, te("t^2 | x1 x2"));
        assert_eq!(g.b, te("t^0 | x1"));
        let ctx = TorusContext::new(&b("2: s1"));
        assert!(ctx.commute(&g.a, &g.b).unwrap());
        let g3 = centralizer_generators(&b("2: s1 s1 s1")).unwrap();
        assert_eq!(g3.a, TorusElement::new(2, w("x1 x2").pow(3)));
        assert_eq!(
            centralizer_generators(&b("2: s1 s1")),
            Err(Error::NotAKnot { components: 2 })
        );
    }

    #[test]
    fn power_identity_examples() {
        for (s, k) in [
            ("2: s1", 0),
            ("2: s1", 1),
            ("2: s1 s1 s1", -2),
            ("3: s1 S2", 3),
            ("3: s1 S2", -3),
        ] {
            assert_eq!(power_identity_check(&b(s), k), Ok(true), "{s} {k}");
        }
    }

    #[test]
    fn enumeration_examples() {
        let s1 = b("2: s1");
        let got = centralizer_enumeration_oracle(&s1, 2, 2, DEFAULT_BUDGET).unwrap();
        for e in [
            "t^0 |",
            "t^0 | x1",
            "t^0 | X1",
            "t^2 | x1 x2",
            "t^-2 | X2 X1",
            "t^0 | x1 x1",
        ] {
            assert!(got.contains(&te(e)), "{e}");
        }
        let ctx = TorusContext::new(&s1);
        assert_eq!(got, ctx.predicted_in_box(2, 2).unwrap());
        let small = centralizer_enumeration_oracle(&s1, 1, 2, DEFAULT_BUDGET).unwrap();
        assert!(small.iter().all(|e| e.texp == 0 && is_x1_power(&e.tail)));
        assert_eq!(
            centralizer_enumeration_oracle(&b("3: s1 s2"), 0, 0, DEFAULT_BUDGET).unwrap(),
            vec![TorusElement::identity()]
        );
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(enumeration_size(2, 0, 2), 1 + 4 + 12);
        assert_eq!(enumeration_size(3, 6, 6), 13 * (1 + 6 * 3906));
        assert_eq!(
            centralizer_enumeration_oracle(&b("2: s1"), 2, 3, 100),
            Err(Error::BudgetExceeded {
                needed: 5 * (1 + 4 + 12 + 36),
                budget: 100
            })
        );
    }

    #[test]
    fn reduced_word_enumeration_counts() {
        let mut count = 0;
        for_each_reduced_word(2, 3, &mut |_| count += 1);
        assert_eq!(count as u128, enumeration_size(2, 0, 3));
    }

    #[test]
    fn word_limit_is_reported() {
        let ctx = TorusContext::with_limit(&b("3: s1 S2"), 50);
        assert!(matches!(
            ctx.apply_power(12, &Word::generator(1)),
            Err(Error::WordTooLong { limit: 50, .. })
        ));
    }

    #[test]
    fn solid_torus_examples() {
        let tp = solid_torus_presentation(&b("2: s1"));
        let p = &tp.presentation;
        assert_eq!(p.gens(), &["x1", "x2", "t"]);
        assert_eq!(
            p.relators()[0],
            Word::reduce([Letter::inv(3), Letter::gen(1), Letter::gen(3)]).multiply(&w("x1 X2 X1"))
        );
        assert_eq!(p.word_to_names(&p.relators()[1]), "T x2 t X1");
        let pp = p.peripheral().unwrap();
        assert_eq!(p.word_to_names(&pp.meridian), "x1 x2");
        assert_eq!(p.word_to_names(&pp.longitude), "t");
        assert_eq!(tp.closure_meridian, Word::generator(1));
        let trivial = solid_torus_presentation(&Braid::identity(2).unwrap()).presentation;
        assert_eq!(p.deficiency(), 1);
        assert_eq!(trivial.word_to_names(&trivial.relators()[0]), "T x1 t X1");
    }

    fn arb_knot_braid() -> impl Strategy<Value = Braid> {
        (
            2usize..=4,
            prop::collection::vec((1i32..=3, any::<bool>()), 0..8),
        )
            .prop_map(|(n, raw)| {
                let word: Vec<i32> = raw
                    .into_iter()
                    .map(|(i, s)| {
                        let i = (i - 1) % (n as i32 - 1) + 1;
                        if s {
                            i
                        } else {
                            -i
                        }
                    })
                    .collect();
                Braid::from_signed(n, &word).unwrap()
            })
            .prop_filter("knot closure", |b| b.closure_info().is_knot)
    }

    fn arb_element(n: usize) -> impl Strategy<Value = TorusElement> {
        (
            -2i64..=2,
            prop::collection::vec((1..=n as i32, any::<bool>()), 0..5),
        )
            .prop_map(|(m, raw)| {
                let signed: Vec<i32> = raw
                    .into_iter()
                    .map(|(i, s)| if s { i } else { -i })
                    .collect();
                TorusElement::new(m, Word::from_signed(&signed))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn group_laws(
            beta in arb_knot_braid(),
            seed in prop::collection::vec(arb_element(4), 3)
        ) {
            let n = beta.strands() as u32;
            let fix = |e: &TorusElement| TorusElement::new(e.texp, e.tail.map_indices(|i| (i - 1) % n + 1));
            let (x, y, z) = (fix(&seed[0]), fix(&seed[1]), fix(&seed[2]));
            let ctx = TorusContext::new(&beta);
            let l = ctx.multiply(&ctx.multiply(&x, &y).unwrap(), &z).unwrap();
            let r = ctx.multiply(&x, &ctx.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(ctx.multiply(&x, &ctx.invert(&x).unwrap()).unwrap(), TorusElement::identity());
            prop_assert_eq!(ctx.multiply(&TorusElement::identity(), &x).unwrap(), x.clone());
        }

        #[test]
        fn defining_relation_and_boundary(beta in arb_knot_braid()) {
            let ctx = TorusContext::new(&beta);
            let endo = beta.artin_endo();
            for i in 1..=beta.strands() as u32 {
                let c = ctx.multiply(
                    &ctx.multiply(&TorusElement::t_power(-1), &TorusElement::from_word(Word::generator(i))).unwrap(),
                    &TorusElement::t_power(1),
                ).unwrap();
                prop_assert_eq!(c, TorusElement::from_word(endo.image(i).clone()));
            }
            let tp = solid_torus_presentation(&beta);
            let pp = tp.presentation.peripheral().unwrap();
            let m = TorusElement::from_word(pp.meridian.clone());
            prop_assert!(ctx.commute(&m, &TorusElement::t_power(1)).unwrap());
            let g = ctx.centralizer_generators().unwrap();
            prop_assert!(ctx.commute(&g.a, &g.b).unwrap());
            prop_assert!(ctx.power_identity_check(1).unwrap());
            prop_assert!(ctx.power_identity_check(-1).unwrap());
        }
    }
}
