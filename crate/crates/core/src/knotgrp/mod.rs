//! Knot-group presentations with peripheral structure, abelianization via
//! Smith normal form, Alexander polynomials via Fox calculus, and a small
//! Tietze simplifier.

mod fox;
mod laurent;
mod presentation;
mod snf;
mod tietze;

pub use fox::{alexander_polynomial, fox_matrix};
pub use laurent::LaurentPoly;
pub use presentation::{
    is_valid_name, PeripheralPair, Presentation, StructuredPeripheral, StructuredPresentation,
};
pub use snf::{smith_normal_form, IntegerMatrix, SmithDecomposition};
pub use tietze::tietze_simplify;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::braid::Braid;
use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};
use crate::torusgrp::meridian_conjugator;

/// Closure of `beta` in the 3-sphere.
///
/// Generators `x1 .. xn`, relators `X_i beta(x_i)` for `i = 2 .. n`; the
/// relator for `x1` follows from the others because `beta` fixes
/// `x1 x2 .. xn`. Peripheral pair: meridian `x1`, longitude
/// `w x1^-s` with `w` the meridian conjugator and `s` its exponent sum.
pub fn sphere_closure_presentation(beta: &Braid) -> Result<Presentation> {
    let info = beta.closure_info();
    if !info.is_knot {
        return Err(Error::NotAKnot {
            components: info.components,
        });
    }
    let n = beta.strands();
    let endo = beta.artin_endo();
    let relators = (2..=n as u32)
        .map(|i| Word::reduce([Letter::inv(i)]).multiply(endo.image(i)))
        .collect();
    let w = meridian_conjugator(beta)?;
    let s = w.exponent_sum(None);
    let longitude = w.multiply(&Word::generator(1).pow(-s));
    Presentation::with_indexed_gens(n, relators)?.with_peripheral(Some(PeripheralPair {
        meridian: Word::generator(1),
        longitude,
    }))
}

/// Rows are relators, columns generators, entries exponent sums.
pub fn exponent_matrix(p: &Presentation) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(p.relators().len(), p.rank());
    for (i, r) in p.relators().iter().enumerate() {
        for l in r.letters() {
            let j = l.index() as usize - 1;
            let v = m.get(i, j) + BigInt::from(l.sign());
            m.set(i, j, v);
        }
    }
    m
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Abelianization {
    /// Torsion invariant factors, each greater than 1.
    #[serde(with = "decimal_strings")]
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

mod decimal_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|d| d.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl Abelianization {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.invariant_factors.is_empty()
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Inverse of `Display`.
impl std::str::FromStr for Abelianization {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut out = Abelianization {
            invariant_factors: Vec::new(),
            free_rank: 0,
        };
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        for (i, part) in text.split(" + ").enumerate() {
            let bad = || Error::Parse {
                position: i,
                message: format!("bad summand {part:?}"),
            };
            if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d <= BigInt::one() || out.free_rank > 0 {
                    return Err(bad());
                }
                out.invariant_factors.push(d);
            } else if out.free_rank > 0 {
                return Err(bad());
            } else if part == "Z" {
                out.free_rank = 1;
            } else {
                let r = part.strip_prefix("Z^").ok_or_else(bad)?;
                out.free_rank = r.parse().ok().filter(|r| *r > 1).ok_or_else(bad)?;
            }
        }
        Ok(out)
    }
}

pub fn abelianize(p: &Presentation) -> Abelianization {
    let snf = smith_normal_form(&exponent_matrix(p));
    let diag = snf.diagonal();
    Abelianization {
        invariant_factors: diag
            .iter()
            .filter(|d| *d > &BigInt::one())
            .cloned()
            .collect(),
        free_rank: p.rank() - snf.rank(),
    }
}

/// Image of each generator in `H_1 = Z`. The sign is fixed so that the
/// meridian maps to `+1` when a peripheral pair is present, otherwise so
/// that the first nonzero generator class is positive.
pub fn abelian_coordinates(p: &Presentation) -> Result<Vec<i64>> {
    let snf = smith_normal_form(&exponent_matrix(p));
    let rank = snf.rank();
    let torsion = snf.diagonal().iter().any(|d| d > &BigInt::one());
    if p.rank() != rank + 1 || torsion {
        return Err(Error::NotInfiniteCyclic(abelianize(p).to_string()));
    }
    // Row vector v maps to v V; the last column of V is the free coordinate.
    let mut coords = (0..p.rank())
        .map(|j| {
            snf.v
                .get(j, rank)
                .to_i64()
                .ok_or_else(|| Error::Domain("homology coordinate overflow".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let sign = match p.peripheral() {
        Some(pp) => {
            let m = class_of(&coords, &pp.meridian);
            if m.abs() != 1 {
                return Err(Error::NotInfiniteCyclic(format!(
                    "meridian has class {m}, not a generator"
                )));
            }
            m
        }
        None => coords
            .iter()
            .copied()
            .find(|&c| c != 0)
            .map_or(1, i64::signum),
    };
    if sign < 0 {
        for c in &mut coords {
            *c = -*c;
        }
    }
    Ok(coords)
}

fn class_of(coords: &[i64], w: &Word) -> i64 {
    w.letters()
        .iter()
        .map(|l| l.sign() as i64 * coords[l.index() as usize - 1])
        .sum()
}

/// Image of `w` in `H_1(P) = Z`, normalized so the meridian maps to `+1`.
pub fn h1_class(p: &Presentation, w: &Word) -> Result<i64> {
    if p.peripheral().is_none() {
        return Err(Error::MissingPeripheral);
    }
    if w.max_index() as usize > p.rank() {
        return Err(Error::IndexOutOfRank {
            index: w.max_index(),
            rank: p.rank(),
        });
    }
    let coords = abelian_coordinates(p)?;
    Ok(class_of(&coords, w))
}
