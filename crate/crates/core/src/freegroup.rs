//! Words in a free group on indexed generators `x1, x2, ...` and
//! endomorphisms given by generator images.
//!
//! All values are immutable; every operation returns a fresh, freely
//! reduced word. Generator indices are 1-based.
//!
//! Composition convention: [`FreeEndo::compose`]`(e1, e2)` is "apply `e1`,
//! then `e2`", i.e. `x -> e2(e1(x))`. With this order the endomorphism of
//! a braid word is the left-to-right composition of its letters, and the
//! endomorphism of `b^k` is the `k`-fold composition of that of `b`.
//!
//! Conjugation convention: `conj(w, g) = g w g^-1`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use serde::{Deserialize, Serialize};

/// A generator or its inverse. Stored as a nonzero signed index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    /// `index >= 1`; panics on zero.
    pub fn new(index: u32, inverse: bool) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        let i = index as i32;
        Letter(if inverse { -i } else { i })
    }

    pub fn gen(index: u32) -> Self {
        Letter::new(index, false)
    }

    pub fn inv(index: u32) -> Self {
        Letter::new(index, true)
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    /// +1 or -1.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "X{}", self.index())
        } else {
            write!(f, "x{}", self.index())
        }
    }
}

/// Push `l` onto a reduced letter stack, cancelling against the top.
#[inline]
fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: u32) -> Self {
        Word {
            letters: vec![Letter::gen(index)],
        }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut stack = Vec::new();
        for l in raw {
            push_reduced(&mut stack, l);
        }
        Word { letters: stack }
    }

    /// Builds a word from signed indices (`-2` is `X2`).
    pub fn from_signed(raw: &[i32]) -> Self {
        Word::reduce(raw.iter().map(|&i| {
            assert!(i != 0, "generator indices are 1-based");
            Letter::new(i.unsigned_abs(), i < 0)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_index(&self) -> u32 {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.invert())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Splits `self = prefix * core * prefix^-1` with `core` cyclically
    /// reduced.
    pub fn cyclic_decompose(&self) -> (Word, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        (
            Word {
                letters: self.letters[..k].to_vec(),
            },
            Word {
                letters: self.letters[k..n - k].to_vec(),
            },
        )
    }

    /// Signed count of `generator`, or the total signed length when `None`.
    pub fn exponent_sum(&self, generator: Option<u32>) -> i64 {
        self.letters
            .iter()
            .filter(|l| generator.is_none_or(|g| l.index() == g))
            .map(|l| l.sign() as i64)
            .sum()
    }

    /// Replaces every generator index through `f`; the result is reduced.
    pub fn map_indices<F: Fn(u32) -> u32>(&self, f: F) -> Word {
        Word::reduce(
            self.letters
                .iter()
                .map(|l| Letter::new(f(l.index()), l.is_inverse())),
        )
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

pub(crate) fn parse_letter_token(tok: &str, position: usize) -> Result<Letter, Error> {
    let err = |message: &str| Error::Parse {
        position,
        message: format!("{message}: {tok:?}"),
    };
    let mut chars = tok.chars();
    let inverse = match chars.next() {
        Some('x') => false,
        Some('X') => true,
        _ => return Err(err("expected x<k> or X<k>")),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return Err(err("bad generator index"));
    }
    let index: u32 = digits
        .parse()
        .map_err(|_| err("generator index too large"))?;
    if index > i32::MAX as u32 {
        return Err(err("generator index too large"));
    }
    Ok(Letter::new(index, inverse))
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split_whitespace()
            .enumerate()
            .map(|(i, tok)| parse_letter_token(tok, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::reduce(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Endomorphism of the free group of rank `rank`, given by the images of
/// `x1 .. xn`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeEndo {
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn identity(rank: usize) -> Self {
        FreeEndo {
            images: (1..=rank as u32).map(Word::generator).collect(),
        }
    }

    pub fn new(images: Vec<Word>) -> Result<Self, Error> {
        let rank = images.len();
        for w in &images {
            let m = w.max_index();
            if m as usize > rank {
                return Err(Error::IndexOutOfRank { index: m, rank });
            }
        }
        Ok(FreeEndo { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `x_index`.
    pub fn image(&self, index: u32) -> &Word {
        &self.images[index as usize - 1]
    }

    pub fn apply(&self, w: &Word) -> Result<Word, Error> {
        let m = w.max_index();
        if m as usize > self.rank() {
            return Err(Error::IndexOutOfRank {
                index: m,
                rank: self.rank(),
            });
        }
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for &l in w.letters() {
            let img = &self.images[l.index() as usize - 1].letters;
            if l.is_inverse() {
                for &m in img.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in img {
                    push_reduced(&mut out, m);
                }
            }
        }
        Word { letters: out }
    }

    /// `apply`, giving up as soon as the partially reduced image exceeds
    /// `limit` letters.
    pub fn apply_bounded(&self, w: &Word, limit: usize) -> Result<Word, Error> {
        let m = w.max_index();
        if m as usize > self.rank() {
            return Err(Error::IndexOutOfRank {
                index: m,
                rank: self.rank(),
            });
        }
        let mut out = Vec::new();
        for &l in w.letters() {
            let img = &self.images[l.index() as usize - 1].letters;
            if l.is_inverse() {
                for &m in img.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in img {
                    push_reduced(&mut out, m);
                }
            }
            if out.len() > limit {
                return Err(Error::WordTooLong {
                    length: out.len(),
                    limit,
                });
            }
        }
        Ok(Word { letters: out })
    }

    /// `self` then `then`: the result maps `x` to `then(self(x))`.
    pub fn compose(&self, then: &FreeEndo) -> Result<FreeEndo, Error> {
        if self.rank() != then.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: then.rank(),
            });
        }
        Ok(FreeEndo {
            images: self
                .images
                .iter()
                .map(|w| then.apply_unchecked(w))
                .collect(),
        })
    }

    /// `k`-fold composition of `self`, `k >= 0`.
    pub fn power(&self, k: u32) -> FreeEndo {
        let mut out = FreeEndo::identity(self.rank());
        for _ in 0..k {
            out = out.compose(self).expect("same rank");
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.len() == 1 && w.letters[0] == Letter::gen(i as u32 + 1))
    }

    /// Total letters across all images.
    pub fn size(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }
}

impl fmt::Debug for FreeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, w) in self.images.iter().enumerate() {
            m.entry(&format_args!("x{}", i + 1), &format_args!("{}", w));
        }
        m.finish()
    }
}

/// Free functions mirroring the method API.
pub fn reduce(raw: &[Letter]) -> Word {
    Word::reduce(raw.iter().copied())
}

pub fn multiply(a: &Word, b: &Word) -> Word {
    a.multiply(b)
}

pub fn invert(a: &Word) -> Word {
    a.invert()
}

pub fn apply_endo(e: &FreeEndo, w: &Word) -> Result<Word, Error> {
    e.apply(w)
}

pub fn compose(e1: &FreeEndo, e2: &FreeEndo) -> Result<FreeEndo, Error> {
    e1.compose(e2)
}

pub fn cyclic_decompose(w: &Word) -> (Word, Word) {
    w.cyclic_decompose()
}

pub fn exponent_sum(w: &Word, generator: Option<u32>) -> i64 {
    w.exponent_sum(generator)
}
