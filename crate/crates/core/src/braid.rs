//! Braid words, the Artin action on the free group of the punctured disk,
//! induced permutations and closure components.
//!
//! Artin convention used throughout:
//!
//! ```text
//! s_i:  x_i -> x_i x_{i+1} X_i,   x_{i+1} -> x_i,   x_j -> x_j otherwise
//! S_i:  x_i -> x_{i+1},           x_{i+1} -> X_{i+1} x_i x_{i+1}
//! ```
//!
//! Braid words are read left to right and compose the same way as
//! [`FreeEndo::compose`], so `artin_endo(b1 b2) = artin_endo(b1).compose(artin_endo(b2))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{FreeEndo, Letter, Word};

/// A braid generator `s_i` (positive) or `S_i` (negative).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Crossing(i32);

impl Crossing {
    pub fn new(index: u32, inverse: bool) -> Self {
        assert!(index >= 1);
        let i = index as i32;
        Crossing(if inverse { -i } else { i })
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Self {
        Crossing(-self.0)
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_inverse() { 'S' } else { 's' };
        write!(f, "{}{}", c, self.index())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Braid {
    strands: usize,
    word: Vec<Crossing>,
}

impl Braid {
    pub fn new(strands: usize, word: Vec<Crossing>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse {
                position: 0,
                message: "strand count must be at least 1".into(),
            });
        }
        if let Some(c) = word.iter().find(|c| c.index() as usize >= strands) {
            return Err(Error::StrandsOutOfRange {
                index: c.index(),
                strands,
            });
        }
        Ok(Braid { strands, word })
    }

    /// Builds a braid from signed generator indices (`-2` is `S2`).
    pub fn from_signed(strands: usize, word: &[i32]) -> Result<Self> {
        let word = word
            .iter()
            .map(|&i| {
                if i == 0 {
                    Err(Error::Parse {
                        position: 0,
                        message: "braid generator index 0".into(),
                    })
                } else {
                    Ok(Crossing::new(i.unsigned_abs(), i < 0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Braid::new(strands, word)
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Braid::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[Crossing] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Concatenation; both braids must have the same strand count.
    pub fn then(&self, other: &Braid) -> Result<Braid> {
        if self.strands != other.strands {
            return Err(Error::RankMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(Braid {
            strands: self.strands,
            word,
        })
    }

    pub fn inverse(&self) -> Braid {
        Braid {
            strands: self.strands,
            word: self.word.iter().rev().map(|c| c.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Braid {
        Braid {
            strands: self.strands,
            word: (0..k).flat_map(|_| self.word.iter().copied()).collect(),
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.word.iter().map(|c| c.sign() as i64).sum()
    }

    pub fn artin_endo(&self) -> FreeEndo {
        artin_endo(self)
    }

    pub fn induced_permutation(&self) -> Permutation {
        induced_permutation(self)
    }

    pub fn closure_info(&self) -> ClosureInfo {
        closure_info(self)
    }
}

impl fmt::Debug for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Braid({})", self)
    }
}

impl fmt::Display for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for c in &self.word {
            write!(f, " {}", c)?;
        }
        Ok(())
    }
}

/// Parses `<n>: tok tok ...` with `s<i>` for a positive and `S<i>` for a
/// negative crossing.
pub fn parse_braid(text: &str) -> Result<Braid> {
    let (head, body) = text.split_once(':').ok_or_else(|| Error::Parse {
        position: 0,
        message: "expected `<strands>: ...`".into(),
    })?;
    let head = head.trim();
    if head.is_empty() || !head.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            position: 0,
            message: format!("bad strand count {head:?}"),
        });
    }
    let strands: usize = head.parse().map_err(|_| Error::Parse {
        position: 0,
        message: format!("strand count {head:?} too large"),
    })?;
    let mut word = Vec::new();
    for (i, tok) in body.split_whitespace().enumerate() {
        let position = i + 1;
        let bad = |message: &str| Error::Parse {
            position,
            message: format!("{message}: {tok:?}"),
        };
        let mut chars = tok.chars();
        let inverse = match chars.next() {
            Some('s') => false,
            Some('S') => true,
            _ => return Err(bad("expected s<i> or S<i>")),
        };
        let digits = chars.as_str();
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || digits.starts_with('0')
        {
            return Err(bad("bad generator index"));
        }
        let index: u32 = digits
            .parse()
            .ok()
            .filter(|&v: &u32| v <= i32::MAX as u32)
            .ok_or_else(|| bad("generator index too large"))?;
        word.push(Crossing::new(index, inverse));
    }
    Braid::new(strands, word)
}

impl FromStr for Braid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_braid(s)
    }
}

impl Serialize for Braid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Braid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn crossing_endo(strands: usize, c: Crossing) -> FreeEndo {
    let i = c.index();
    let mut images: Vec<Word> = (1..=strands as u32).map(Word::generator).collect();
    let (a, b) = (Letter::gen(i), Letter::gen(i + 1));
    if c.is_inverse() {
        images[i as usize - 1] = Word::generator(i + 1);
        images[i as usize] = Word::reduce([b.inverse(), a, b]);
    } else {
        images[i as usize - 1] = Word::reduce([a, b, a.inverse()]);
        images[i as usize] = Word::generator(i);
    }
    FreeEndo::new(images).expect("indices within strand count")
}

/// Automorphism of the free group of rank `strands` induced by the braid.
pub fn artin_endo(b: &Braid) -> FreeEndo {
    b.word
        .iter()
        .fold(FreeEndo::identity(b.strands), |acc, &c| {
            acc.compose(&crossing_endo(b.strands, c))
                .expect("same rank")
        })
}

/// A bijection of `{1, .., n}`, stored 0-based internally.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// `images[i - 1]` is the image of `i`, all 1-based.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in images {
            if j == 0 || j > n || seen[j - 1] {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
            seen[j - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|j| j - 1).collect(),
        })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Cycles as 1-based point lists, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Reads the permutation off the Artin action: `x_i` maps to a conjugate of
/// `x_{pi(i)}`.
pub fn induced_permutation(b: &Braid) -> Permutation {
    b.word
        .iter()
        .fold(Permutation::identity(b.strands), |acc, c| {
            let i = c.index() as usize;
            acc.then(&Permutation::transposition(b.strands, i, i + 1))
        })
}

/// The permutation recovered from cyclically reduced cores of the images
/// of a braid automorphism. `None` when some image is not a conjugate of a
/// single positive generator.
pub fn permutation_from_endo(e: &FreeEndo) -> Option<Permutation> {
    let images = e
        .images()
        .iter()
        .map(|w| {
            let (_, core) = w.cyclic_decompose();
            match core.letters() {
                [l] if !l.is_inverse() => Some(l.index() as usize),
                _ => None,
            }
        })
        .collect::<Option<Vec<_>>>()?;
    Permutation::from_images(&images).ok()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClosureInfo {
    pub components: usize,
    pub winding: usize,
    pub exponent_sum: i64,
    pub is_knot: bool,
}

impl fmt::Display for ClosureInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "components={} winding={} exponent_sum={} is_knot={}",
            self.components, self.winding, self.exponent_sum, self.is_knot
        )
    }
}

/// Inverse of `Display`.
impl FromStr for ClosureInfo {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let fields: Vec<(&str, &str)> = text
            .split_whitespace()
            .map(|kv| kv.split_once('=').unwrap_or((kv, "")))
            .collect();
        let get = |key: &str| -> Result<&str> {
            match fields.iter().position(|(k, _)| *k == key) {
                Some(i) => Ok(fields[i].1),
                None => Err(Error::Parse {
                    position: 0,
                    message: format!("missing {key}"),
                }),
            }
        };
        let bad = |key: &str| Error::Parse {
            position: 0,
            message: format!("bad value for {key}"),
        };
        if fields.len() != 4 {
            return Err(Error::Parse {
                position: 0,
                message: "expected four key=value fields".into(),
            });
        }
        Ok(ClosureInfo {
            components: get("components")?.parse().map_err(|_| bad("components"))?,
            winding: get("winding")?.parse().map_err(|_| bad("winding"))?,
            exponent_sum: get("exponent_sum")?
                .parse()
                .map_err(|_| bad("exponent_sum"))?,
            is_knot: get("is_knot")?.parse().map_err(|_| bad("is_knot"))?,
        })
    }
}

pub fn closure_info(b: &Braid) -> ClosureInfo {
    let components = induced_permutation(b).cycles().len();
    ClosureInfo {
        components,
        winding: b.strands,
        exponent_sum: b.exponent_sum(),
        is_knot: components == 1,
    }
}
