use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};

/// Meridian and longitude words of a boundary torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeripheralPair {
    pub meridian: Word,
    pub longitude: Word,
}

/// A finite presentation with named generators. Relator and peripheral
/// words address generators by 1-based position in `gens`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<Word>,
    peripheral: Option<PeripheralPair>,
}

/// Generator names start with a lowercase ASCII letter; the inverse token
/// is the name with its first letter uppercased.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn inverse_token(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    let mut chars = name.chars();
    if let Some(c) = chars.next() {
        out.push(c.to_ascii_uppercase());
    }
    out.push_str(chars.as_str());
    out
}

impl Presentation {
    pub fn new(
        gens: Vec<String>,
        relators: Vec<Word>,
        peripheral: Option<PeripheralPair>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if !is_valid_name(g) {
                return Err(Error::Parse {
                    position: i,
                    message: format!("invalid generator name {g:?}"),
                });
            }
            if seen.insert(g.as_str(), i).is_some() {
                return Err(Error::Parse {
                    position: i,
                    message: format!("duplicate generator name {g:?}"),
                });
            }
        }
        let rank = gens.len();
        let words = relators
            .iter()
            .chain(peripheral.iter().flat_map(|p| [&p.meridian, &p.longitude]));
        for w in words {
            let m = w.max_index();
            if m as usize > rank {
                return Err(Error::IndexOutOfRank { index: m, rank });
            }
        }
        Ok(Presentation {
            gens,
            relators,
            peripheral,
        })
    }

    /// Generators `x1 .. xn` and the given relators, no peripheral data.
    pub fn with_indexed_gens(rank: usize, relators: Vec<Word>) -> Result<Self> {
        let gens = (1..=rank).map(|i| format!("x{i}")).collect();
        Presentation::new(gens, relators, None)
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn peripheral(&self) -> Option<&PeripheralPair> {
        self.peripheral.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// `gens - relators`.
    pub fn deficiency(&self) -> i64 {
        self.gens.len() as i64 - self.relators.len() as i64
    }

    pub fn with_peripheral(&self, peripheral: Option<PeripheralPair>) -> Result<Self> {
        Presentation::new(self.gens.clone(), self.relators.clone(), peripheral)
    }

    /// 1-based index of the named generator.
    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.gens
            .iter()
            .position(|g| g == name)
            .map(|i| i as u32 + 1)
    }

    pub fn word_to_names(&self, w: &Word) -> String {
        let mut out = String::new();
        for (i, l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let name = &self.gens[l.index() as usize - 1];
            if l.is_inverse() {
                out.push_str(&inverse_token(name));
            } else {
                out.push_str(name);
            }
        }
        out
    }

    /// Parses a whitespace-separated word in this presentation's generator
    /// names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let table = self.token_table();
        parse_tokens(text, &table, 0)
    }

    fn token_table(&self) -> HashMap<String, Letter> {
        let mut table = HashMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            let idx = i as u32 + 1;
            table.insert(g.clone(), Letter::gen(idx));
            table.insert(inverse_token(g), Letter::inv(idx));
        }
        table
    }

    pub fn to_structured(&self) -> StructuredPresentation {
        StructuredPresentation {
            gens: self.gens.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| self.word_to_names(r))
                .collect(),
            peripheral: self.peripheral.as_ref().map(|p| StructuredPeripheral {
                meridian: self.word_to_names(&p.meridian),
                longitude: self.word_to_names(&p.longitude),
            }),
        }
    }

    pub fn from_structured(s: &StructuredPresentation) -> Result<Self> {
        let bare = Presentation::new(s.gens.clone(), Vec::new(), None)?;
        let table = bare.token_table();
        let relators = s
            .relators
            .iter()
            .enumerate()
            .map(|(i, r)| parse_tokens(r, &table, i))
            .collect::<Result<Vec<_>>>()?;
        let peripheral = match &s.peripheral {
            Some(p) => Some(PeripheralPair {
                meridian: parse_tokens(&p.meridian, &table, 0)?,
                longitude: parse_tokens(&p.longitude, &table, 0)?,
            }),
            None => None,
        };
        Presentation::new(s.gens.clone(), relators, peripheral)
    }
}

fn parse_tokens(text: &str, table: &HashMap<String, Letter>, line: usize) -> Result<Word> {
    let letters = text
        .split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            table.get(tok).copied().ok_or_else(|| Error::Parse {
                position: line,
                message: format!("unknown generator token {tok:?} at position {i}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::reduce(letters))
}

/// Machine-readable form: words are written with generator names.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructuredPresentation {
    pub gens: Vec<String>,
    pub relators: Vec<String>,
    pub peripheral: Option<StructuredPeripheral>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructuredPeripheral {
    pub meridian: String,
    pub longitude: String,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_structured().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = StructuredPresentation::deserialize(d)?;
        Presentation::from_structured(&s).map_err(serde::de::Error::custom)
    }
}

fn write_line(f: &mut fmt::Formatter<'_>, key: &str, body: &str) -> fmt::Result {
    if body.is_empty() {
        writeln!(f, "{key}:")
    } else {
        writeln!(f, "{key}: {body}")
    }
}

/// Line format, one relator per line:
///
/// ```text
/// gens: a b
/// rel: a b A B
/// meridian: a
/// longitude: b a A A
/// ```
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_line(f, "gens", &self.gens.join(" "))?;
        for r in &self.relators {
            write_line(f, "rel", &self.word_to_names(r))?;
        }
        if let Some(p) = &self.peripheral {
            write_line(f, "meridian", &self.word_to_names(&p.meridian))?;
            write_line(f, "longitude", &self.word_to_names(&p.longitude))?;
        }
        Ok(())
    }
}

/// Lines may also be separated by `;`; blank lines and `#` comments are
/// skipped.
impl FromStr for Presentation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut table = HashMap::new();
        let mut relators = Vec::new();
        let mut meridian = None;
        let mut longitude = None;
        for (lineno, raw) in text.split(['\n', ';']).enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::Parse {
                position: lineno + 1,
                message,
            };
            let (key, body) = line
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `key: ...`, got {line:?}")))?;
            match key.trim() {
                "gens" => {
                    if gens.is_some() {
                        return Err(bad("repeated gens line".into()));
                    }
                    let names: Vec<String> = body.split_whitespace().map(String::from).collect();
                    let p = Presentation::new(names.clone(), Vec::new(), None)
                        .map_err(|e| bad(e.to_string()))?;
                    table = p.token_table();
                    gens = Some(names);
                }
                k @ ("rel" | "meridian" | "longitude") => {
                    if gens.is_none() {
                        return Err(bad(format!("`{k}` before `gens`")));
                    }
                    let w = parse_tokens(body, &table, lineno + 1)?;
                    let slot = match k {
                        "rel" => {
                            relators.push(w);
                            continue;
                        }
                        "meridian" => &mut meridian,
                        _ => &mut longitude,
                    };
                    if slot.is_some() {
                        return Err(bad(format!("repeated `{k}` line")));
                    }
                    *slot = Some(w);
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse {
            position: 0,
            message: "missing `gens` line".into(),
        })?;
        let peripheral = match (meridian, longitude) {
            (Some(meridian), Some(longitude)) => Some(PeripheralPair {
                meridian,
                longitude,
            }),
            (None, None) => None,
            _ => {
                return Err(Error::Parse {
                    position: 0,
                    message: "meridian and longitude must be given together".into(),
                })
            }
        };
        Presentation::new(gens, relators, peripheral)
    }
}
