//! Classification of solenoids from their winding sequences.
//!
//! The solenoid with windings `n1, n2, ..` is determined up to
//! homeomorphism by the supernatural number `prod n_i`, up to changing
//! finitely many prime exponents. For an eventually periodic sequence, a
//! prime has infinite exponent exactly when it divides some period entry,
//! and every other prime has a finite exponent that comes from the
//! preperiod alone. Two such sequences can therefore differ only in finitely
//! many finite exponents once their infinite sets agree (delete the
//! preperiods and pass to a common multiple of the period lengths), so
//! equivalence reduces to equality of the infinite prime sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries above this are not factored.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// `n1, n2, ..` as a preperiod followed by a repeating period.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WindingSeq {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl WindingSeq {
    /// Validated sequence; the first violation is the error.
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        let seq = WindingSeq { preperiod, period };
        match validate_sequence(&seq).into_iter().next() {
            Some(e) => Err(e),
            None => Ok(seq),
        }
    }

    pub fn constant(n: u64) -> Result<Self> {
        WindingSeq::new(Vec::new(), vec![n])
    }

    /// The `i`-th winding, 0-based.
    pub fn entry(&self, i: usize) -> Option<u64> {
        if i < self.preperiod.len() {
            Some(self.preperiod[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.preperiod.len()) % self.period.len()])
        }
    }
}

impl fmt::Display for WindingSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(|n| format!(" {n}")).collect::<String>();
        write!(
            f,
            "pre:{} | per:{}",
            join(&self.preperiod),
            join(&self.period)
        )
    }
}

fn parse_entries(body: &str, offset: usize) -> Result<Vec<u64>> {
    body.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse().map_err(|_| Error::Parse {
                position: offset + i,
                message: format!("expected a positive integer, found {tok:?}"),
            })
        })
        .collect()
}

/// Parses `pre: 12 5 | per: 2 3`. Only syntax is checked; see
/// [`validate_sequence`] for the entry conditions.
impl FromStr for WindingSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |message: &str| Error::Parse {
            position: 0,
            message: message.into(),
        };
        let (pre, per) = s
            .split_once('|')
            .ok_or_else(|| syntax("expected `pre: .. | per: ..`"))?;
        let pre = pre
            .trim()
            .strip_prefix("pre:")
            .ok_or_else(|| syntax("missing `pre:`"))?;
        let per = per
            .trim()
            .strip_prefix("per:")
            .ok_or_else(|| syntax("missing `per:`"))?;
        let preperiod = parse_entries(pre, 1)?;
        let period = parse_entries(per, preperiod.len() + 2)?;
        Ok(WindingSeq { preperiod, period })
    }
}

impl Serialize for WindingSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WindingSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Every violation of "all entries at least 2, period nonempty".
pub fn validate_sequence(seq: &WindingSeq) -> Vec<Error> {
    let mut out = Vec::new();
    let parts = [("preperiod", &seq.preperiod), ("period", &seq.period)];
    for (name, entries) in parts {
        for (i, &value) in entries.iter().enumerate() {
            if value < 2 {
                out.push(Error::EntryTooSmall {
                    location: format!("{name} {i}"),
                    value,
                });
            }
        }
    }
    if seq.period.is_empty() {
        out.push(Error::EmptyPeriod);
    }
    out
}

/// Prime exponents of a supernatural number.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct PrimeProfile {
    pub finite: BTreeMap<u64, u32>,
    pub infinite: BTreeSet<u64>,
}

impl fmt::Display for PrimeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut exps: BTreeMap<u64, String> = self
            .finite
            .iter()
            .map(|(p, e)| (*p, e.to_string()))
            .collect();
        exps.extend(self.infinite.iter().map(|p| (*p, "inf".to_string())));
        if exps.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = exps.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Inverse of `Display`.
impl FromStr for PrimeProfile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut out = PrimeProfile::default();
        if text.trim() == "1" {
            return Ok(out);
        }
        for (i, tok) in text.split_whitespace().enumerate() {
            let bad = || Error::Parse {
                position: i,
                message: format!("expected p^e, got {tok:?}"),
            };
            let (p, e) = tok.split_once('^').ok_or_else(bad)?;
            let p: u64 = p.parse().map_err(|_| bad())?;
            if p < 2 || out.finite.contains_key(&p) || out.infinite.contains(&p) {
                return Err(bad());
            }
            if e == "inf" {
                out.infinite.insert(p);
            } else {
                out.finite
                    .insert(p, e.parse().ok().filter(|e| *e > 0).ok_or_else(bad)?);
            }
        }
        Ok(out)
    }
}

/// Prime factorization by trial division.
pub fn factor(n: u64, bound: u64) -> Result<Vec<(u64, u32)>> {
    if n > bound {
        return Err(Error::EntryTooLarge { value: n, bound });
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

pub fn profile(seq: &WindingSeq) -> Result<PrimeProfile> {
    profile_with_bound(seq, DEFAULT_FACTOR_BOUND)
}

pub fn profile_with_bound(seq: &WindingSeq, bound: u64) -> Result<PrimeProfile> {
    if let Some(e) = validate_sequence(seq).into_iter().next() {
        return Err(e);
    }
    let mut out = PrimeProfile::default();
    for &n in &seq.period {
        out.infinite
            .extend(factor(n, bound)?.into_iter().map(|(p, _)| p));
    }
    for &n in &seq.preperiod {
        for (p, e) in factor(n, bound)? {
            if !out.infinite.contains(&p) {
                *out.finite.entry(p).or_default() += e;
            }
        }
    }
    Ok(out)
}

/// Whether the two solenoids are homeomorphic.
pub fn solenoids_equivalent(a: &WindingSeq, b: &WindingSeq) -> Result<bool> {
    Ok(profile(a)?.infinite == profile(b)?.infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> WindingSeq {
        s.parse().unwrap()
    }

    fn finite(pairs: &[(u64, u32)]) -> BTreeMap<u64, u32> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn profile_examples() {
        let p = profile(&seq("pre: | per: 2")).unwrap();
        assert_eq!(
            (
                p.finite.clone(),
                p.infinite.iter().copied().collect::<Vec<_>>()
            ),
            (finite(&[]), vec![2])
        );
        let p = profile(&seq("pre: 12 | per: 5")).unwrap();
        assert_eq!(p.finite, finite(&[(2, 2), (3, 1)]));
        assert_eq!(p.infinite, [5].into());
        assert_eq!(p.to_string(), "2^2 3^1 5^inf");
        let p = profile(&seq("pre: 2 | per: 3")).unwrap();
        assert_eq!(p.finite, finite(&[(2, 1)]));
        assert_eq!(p.infinite, [3].into());
        // primes in the period absorb preperiod multiplicity
        let p = profile(&seq("pre: 12 | per: 6")).unwrap();
        assert!(p.finite.is_empty());
        assert_eq!(
            profile(&seq("pre: 1 | per: 2")),
            Err(Error::EntryTooSmall {
                location: "preperiod 0".into(),
                value: 1
            })
        );
        assert_eq!(
            profile(&seq("pre: | per: 1000003")),
            Err(Error::EntryTooLarge {
                value: 1000003,
                bound: DEFAULT_FACTOR_BOUND
            })
        );
    }

    #[test]
    fn equivalence_examples() {
        let eq = |a: &str, b: &str| solenoids_equivalent(&seq(a), &seq(b)).unwrap();
        assert!(eq("pre: | per: 2", "pre: | per: 4"));
        assert!(!eq("pre: | per: 2", "pre: | per: 3"));
        assert!(eq("pre: | per: 2 3", "pre: | per: 6"));
        assert!(eq("pre: 7 9 | per: 10", "pre: | per: 4 25"));
    }

    #[test]
    fn validation_examples() {
        assert_eq!(
            validate_sequence(&seq("pre: | per: 1")),
            vec![Error::EntryTooSmall {
                location: "period 0".into(),
                value: 1
            }]
        );
        assert!(validate_sequence(&seq("pre: 2 | per: 3")).is_empty());
        assert_eq!(
            validate_sequence(&seq("pre: | per:")),
            vec![Error::EmptyPeriod]
        );
        assert_eq!(validate_sequence(&seq("pre: 0 | per:")).len(), 2);
        assert_eq!(WindingSeq::new(vec![], vec![]), Err(Error::EmptyPeriod));
    }

    #[test]
    fn text_form() {
        assert_eq!(
            seq("pre: 12 5 | per: 2 3").to_string(),
            "pre: 12 5 | per: 2 3"
        );
        assert_eq!(seq("pre:|per: 2").to_string(), "pre: | per: 2");
        assert_eq!(seq("  pre:   | per: 2  ").entry(5), Some(2));
        assert_eq!(seq("pre: 4 | per: 2 3").entry(2), Some(3));
        for bad in [
            "per: 2",
            "pre: 2 per: 3",
            "pre: x | per: 2",
            "pre: | per: -2",
            "pre: 2 | 3",
        ] {
            assert!(
                matches!(bad.parse::<WindingSeq>(), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn factor_matches_products() {
        for n in 2..2000u64 {
            let f = factor(n, DEFAULT_FACTOR_BOUND).unwrap();
            assert_eq!(f.iter().map(|(p, e)| p.pow(*e)).product::<u64>(), n);
            assert!(f.iter().all(|(p, _)| (2..*p).all(|d| p % d != 0)));
        }
    }

    fn arb_seq() -> impl Strategy<Value = WindingSeq> {
        (
            prop::collection::vec(2u64..60, 0..4),
            prop::collection::vec(2u64..60, 1..4),
        )
            .prop_map(|(preperiod, period)| WindingSeq { preperiod, period })
    }

    proptest! {
        #[test]
        fn finite_edits_and_rotation(s in arb_seq(), extra in prop::collection::vec(2u64..100, 0..3), r in 0usize..4) {
            let mut edited = s.clone();
            edited.preperiod.extend(extra);
            let mut rotated = s.clone();
            let k = r % rotated.period.len();
            rotated.period.rotate_left(k);
            prop_assert!(solenoids_equivalent(&s, &edited).unwrap());
            prop_assert!(solenoids_equivalent(&s, &rotated).unwrap());
        }

        #[test]
        fn appending_to_preperiod_is_multiplicative(s in arb_seq(), m in 2u64..500) {
            let before = profile(&s).unwrap();
            let mut t = s.clone();
            t.preperiod.push(m);
            let after = profile(&t).unwrap();
            prop_assert_eq!(&after.infinite, &before.infinite);
            let mut expect = before.finite.clone();
            for (p, e) in factor(m, DEFAULT_FACTOR_BOUND).unwrap() {
                if !before.infinite.contains(&p) {
                    *expect.entry(p).or_default() += e;
                }
            }
            prop_assert_eq!(after.finite, expect);
        }

        #[test]
        fn text_round_trip(s in arb_seq()) {
            prop_assert_eq!(s.to_string().parse::<WindingSeq>().unwrap(), s);
        }
    }
}
