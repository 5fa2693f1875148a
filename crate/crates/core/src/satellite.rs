//! Satellite knot groups by amalgamating a companion with the braid
//! complement in the solid torus, filtrations of such satellites, and the
//! arithmetic condition for tight knot subgroups of cables of torus knots.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::braid::Braid;
use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};
use crate::knotgrp::{h1_class, PeripheralPair, Presentation};
use crate::torusgrp::meridian_conjugator;

/// Smallest `s >= 1` for which `x1_s .. xn_s, t_s` are all unused.
fn fresh_suffix(companion: &Presentation, n: usize) -> usize {
    (1..)
        .find(|s| {
            (1..=n)
                .map(|i| format!("x{i}_{s}"))
                .chain([format!("t_{s}")])
                .all(|g| companion.index_of(&g).is_none())
        })
        .expect("finitely many names are taken")
}

/// The untwisted satellite with companion `companion` and pattern the
/// closure of `beta`.
///
/// Generators are the companion's followed by fresh `x1_s .. xn_s, t_s`.
/// Relators: the companion's, then `t^-1 x_i t beta(x_i)^-1`, then
/// `mu_C^-1 x1 .. xn` and `lambda_C^-1 t`. The result has deficiency 0;
/// one relator is a consequence of the others.
pub fn satellite_presentation(companion: &Presentation, beta: &Braid) -> Result<Presentation> {
    let pc = companion.peripheral().ok_or(Error::MissingPeripheral)?;
    let n = beta.strands();
    if n < 2 {
        return Err(Error::WindingTooSmall { strands: n });
    }
    let info = beta.closure_info();
    if !info.is_knot {
        return Err(Error::NotAKnot {
            components: info.components,
        });
    }
    let w = meridian_conjugator(beta)?;
    let g = companion.rank() as u32;
    let s = fresh_suffix(companion, n);
    let x = |i: u32| g + i;
    let t = g + n as u32 + 1;
    let shift = |word: &Word| word.map_indices(x);

    let mut gens = companion.gens().to_vec();
    gens.extend((1..=n).map(|i| format!("x{i}_{s}")));
    gens.push(format!("t_{s}"));

    let endo = beta.artin_endo();
    let mut relators = companion.relators().to_vec();
    relators.extend((1..=n as u32).map(|i| {
        Word::reduce([Letter::inv(t), Letter::gen(x(i)), Letter::gen(t)])
            .multiply(&shift(endo.image(i)).invert())
    }));
    let boundary_meridian = Word::reduce((1..=n as u32).map(|i| Letter::gen(x(i))));
    relators.push(pc.meridian.invert().multiply(&boundary_meridian));
    relators.push(pc.longitude.invert().multiply(&Word::generator(t)));

    let longitude = Word::generator(t)
        .pow(n as i64)
        .multiply(&shift(&w))
        .multiply(&Word::generator(x(1)).pow(-w.exponent_sum(None)));
    let out = Presentation::new(
        gens,
        relators,
        Some(PeripheralPair {
            meridian: Word::generator(x(1)),
            longitude: longitude.clone(),
        }),
    )?;
    let class = h1_class(&out, &longitude)?;
    if class != 0 {
        return Err(Error::Domain(format!(
            "satellite longitude has class {class}"
        )));
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiltrationStage {
    pub index: usize,
    /// Pattern used to reach this stage; `None` for the seed.
    pub braid: Option<Braid>,
    pub presentation: Presentation,
    /// Previous-stage generator names paired with their images here.
    pub inclusion: Vec<(String, String)>,
}

/// `K_0 -> K_1 -> ..` with `K_{k+1}` the satellite of `K_k` by
/// `patterns[k]`. With `repeat`, patterns cycle when `depth` exceeds them.
pub fn build_filtration(
    seed: &Presentation,
    patterns: &[Braid],
    depth: usize,
    repeat: bool,
) -> Result<Vec<FiltrationStage>> {
    if seed.peripheral().is_none() {
        return Err(Error::MissingPeripheral);
    }
    if depth > 0 && (patterns.is_empty() || (depth > patterns.len() && !repeat)) {
        return Err(Error::DepthExceedsPatterns {
            depth,
            patterns: patterns.len(),
        });
    }
    let mut stages = vec![FiltrationStage {
        index: 0,
        braid: None,
        presentation: seed.clone(),
        inclusion: Vec::new(),
    }];
    for k in 0..depth {
        let beta = &patterns[k % patterns.len()];
        let prev = &stages[k].presentation;
        let next = satellite_presentation(prev, beta)?;
        let inclusion = prev.gens().iter().map(|g| (g.clone(), g.clone())).collect();
        stages.push(FiltrationStage {
            index: k + 1,
            braid: Some(beta.clone()),
            presentation: next,
            inclusion,
        });
    }
    Ok(stages)
}

/// Rewrites a stage-`k` word into stage `k + 1` through the inclusion.
pub fn include_word(stages: &[FiltrationStage], k: usize, w: &Word) -> Result<Word> {
    if k + 1 >= stages.len() {
        return Err(Error::StageOutOfRange {
            index: k,
            stages: stages.len(),
        });
    }
    let (src, dst) = (&stages[k].presentation, &stages[k + 1].presentation);
    let map: BTreeMap<&str, &str> = stages[k + 1]
        .inclusion
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let mut letters = Vec::with_capacity(w.len());
    for l in w.letters() {
        let name = src
            .gens()
            .get(l.index() as usize - 1)
            .ok_or(Error::IndexOutOfRank {
                index: l.index(),
                rank: src.rank(),
            })?;
        let image = map
            .get(name.as_str())
            .and_then(|n| dst.index_of(n))
            .ok_or_else(|| Error::Domain(format!("generator {name} has no image")))?;
        letters.push(Letter::new(image, l.is_inverse()));
    }
    Ok(Word::reduce(letters))
}

/// Class in `H_1(K_{k+1})` of the stage-`k` meridian.
pub fn h1_transition(stages: &[FiltrationStage], k: usize) -> Result<i64> {
    if k + 1 >= stages.len() {
        return Err(Error::StageOutOfRange {
            index: k,
            stages: stages.len(),
        });
    }
    let meridian = &stages[k]
        .presentation
        .peripheral()
        .ok_or(Error::MissingPeripheral)?
        .meridian;
    let image = include_word(stages, k, meridian)?;
    h1_class(&stages[k + 1].presentation, &image)
}

pub fn h1_transitions(stages: &[FiltrationStage]) -> Result<Vec<i64>> {
    (0..stages.len().saturating_sub(1))
        .map(|k| h1_transition(stages, k))
        .collect()
}

/// Serializable form of one stage.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StageExport {
    pub index: usize,
    pub braid: Option<String>,
    pub presentation: String,
    pub inclusion: Vec<(String, String)>,
}

impl From<&FiltrationStage> for StageExport {
    fn from(s: &FiltrationStage) -> Self {
        StageExport {
            index: s.index,
            braid: s.braid.as_ref().map(Braid::to_string),
            presentation: s.presentation.to_string(),
            inclusion: s.inclusion.clone(),
        }
    }
}

impl TryFrom<&StageExport> for FiltrationStage {
    type Error = Error;

    fn try_from(e: &StageExport) -> Result<Self> {
        Ok(FiltrationStage {
            index: e.index,
            braid: e.braid.as_deref().map(str::parse).transpose()?,
            presentation: e.presentation.parse()?,
            inclusion: e.inclusion.clone(),
        })
    }
}

pub fn export_filtration(stages: &[FiltrationStage]) -> Vec<StageExport> {
    stages.iter().map(StageExport::from).collect()
}

/// Which knot embeds, when the criterion holds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TightBranch {
    /// `|delta| = 1`: the `(s/w, eps delta z)` cable of the same torus knot.
    /// `s_over_w` is `None` in the degenerate case `w = 0`.
    Cable { s_over_w: Option<i128>, slope: i128 },
    /// `delta = 0`: composite of copies of the torus knot and its mirror.
    Composite,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TightCriterion {
    pub satisfied: bool,
    pub z: i128,
    pub w: i128,
    pub branch: Option<TightBranch>,
}

/// Checks `pq - s/t = -eps/d + delta z w / (d t)` with `d > 1`,
/// `|eps| = 1`, `|delta| <= 1`, `z = gcd(t, d) > 1`, `w = gcd(s, d p q + eps)`,
/// using the cleared form `d (p q t - s) = -eps t + delta z w`.
/// `(p, q)` must be coprime.
#[allow(clippy::too_many_arguments)]
pub fn cable_tight_criterion(
    s: i64,
    t: i64,
    p: i64,
    q: i64,
    d: i64,
    eps: i64,
    delta: i64,
) -> Result<TightCriterion> {
    if t == 0 || d == 0 {
        return Err(Error::Domain("t and d must be nonzero".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Domain(format!(
            "torus knot parameters ({p}, {q}) are not coprime"
        )));
    }
    let [s, t, p, q, d, eps, delta] = [s, t, p, q, d, eps, delta].map(i128::from);
    let z = t.gcd(&d);
    let w = s.gcd(&(d * p * q + eps));
    let satisfied = d > 1
        && eps.abs() == 1
        && delta.abs() <= 1
        && z > 1
        && d * (p * q * t - s) == -eps * t + delta * z * w;
    let branch = satisfied.then(|| {
        if delta == 0 {
            TightBranch::Composite
        } else {
            TightBranch::Cable {
                s_over_w: (w != 0).then(|| s / w),
                slope: eps * delta * z,
            }
        }
    });
    Ok(TightCriterion {
        satisfied,
        z,
        w,
        branch,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TightWitness {
    pub s: i64,
    pub t: i64,
    pub p: i64,
    pub q: i64,
    pub d: i64,
    pub eps: i64,
    pub delta: i64,
}

/// Every tuple with all of `|s|, |t|, |p|, |q|, |d| <= bound` satisfying
/// the criterion. The criterion depends on `(p, q)` only through `pq`, so
/// the search runs over products and expands each hit to its coprime pairs.
pub fn tight_witness_search(bound: i64) -> Vec<TightWitness> {
    let mut by_product: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            if p.gcd(&q) == 1 {
                by_product.entry(p * q).or_default().push((p, q));
            }
        }
    }
    let mut out = Vec::new();
    for (&pq, pairs) in &by_product {
        for t in (-bound..=bound).filter(|&t| t != 0) {
            for d in 2..=bound {
                let z = t.gcd(&d);
                if z == 1 {
                    continue;
                }
                for eps in [-1, 1] {
                    for s in -bound..=bound {
                        let lhs = d * (pq * t - s) + eps * t;
                        let w = s.gcd(&(d * pq + eps));
                        for delta in -1..=1 {
                            if lhs != delta * z * w {
                                continue;
                            }
                            out.extend(pairs.iter().map(|&(p, q)| TightWitness {
                                s,
                                t,
                                p,
                                q,
                                d,
                                eps,
                                delta,
                            }));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotgrp::{abelianize, sphere_closure_presentation};

    fn b(s: &str) -> Braid {
        s.parse().unwrap()
    }

    fn trefoil() -> Presentation {
        sphere_closure_presentation(&b("2: s1 s1 s1")).unwrap()
    }

    #[test]
    fn trefoil_cable_of_trefoil() {
        let p = satellite_presentation(&trefoil(), &b("2: s1 s1 s1")).unwrap();
        assert_eq!(p.gens(), &["x1", "x2", "x1_1", "x2_1", "t_1"]);
        assert_eq!(p.relators().len(), 5);
        assert_eq!(p.deficiency(), 0);
        let pp = p.peripheral().unwrap();
        assert_eq!(p.word_to_names(&pp.meridian), "x1_1");
        let lon =
            p.parse_word("t_1 t_1 x1_1 x2_1 x1_1 x2_1 x1_1 x2_1 X1_1 X1_1 X1_1 X1_1 X1_1 X1_1");
        assert_eq!(pp.longitude, lon.unwrap());
        assert!(abelianize(&p).is_infinite_cyclic());
        assert_eq!(h1_class(&p, &pp.longitude), Ok(0));
        assert_eq!(p.word_to_names(&p.relators()[3]), "X1 x1_1 x2_1");
    }

    #[test]
    fn satellite_errors() {
        let bare = trefoil().with_peripheral(None).unwrap();
        assert_eq!(
            satellite_presentation(&bare, &b("2: s1")),
            Err(Error::MissingPeripheral)
        );
        assert_eq!(
            satellite_presentation(&trefoil(), &b("2: s1 s1")),
            Err(Error::NotAKnot { components: 2 })
        );
        assert_eq!(
            satellite_presentation(&trefoil(), &Braid::identity(1).unwrap()),
            Err(Error::WindingTooSmall { strands: 1 })
        );
    }

    #[test]
    fn suffix_skips_taken_names() {
        let seed: Presentation = "gens: x1_1 a\nrel: X1_1 a\nmeridian: a\nlongitude:"
            .parse()
            .unwrap();
        let p = satellite_presentation(&seed, &b("2: s1")).unwrap();
        assert_eq!(&p.gens()[2..], &["x1_2", "x2_2", "t_2"]);
    }

    #[test]
    fn filtration_counts_and_transitions() {
        let pats = [b("2: s1 s1 s1"), b("3: s1 s2 s1 s2")];
        let stages = build_filtration(&trefoil(), &pats, 2, false).unwrap();
        let counts: Vec<usize> = stages.iter().map(|s| s.presentation.rank()).collect();
        assert_eq!(counts, vec![2, 5, 9]);
        assert_eq!(h1_transitions(&stages), Ok(vec![2, 3]));
        // relators of stage k appear verbatim in stage k + 1
        for k in 0..2 {
            let next = stages[k + 1].presentation.relators();
            assert!(stages[k]
                .presentation
                .relators()
                .iter()
                .all(|r| next.contains(r)));
        }
        assert_eq!(
            build_filtration(&trefoil(), &pats, 0, false).unwrap().len(),
            1
        );
        assert_eq!(
            build_filtration(&trefoil(), &pats[..1], 2, false),
            Err(Error::DepthExceedsPatterns {
                depth: 2,
                patterns: 1
            })
        );
        assert_eq!(
            build_filtration(&trefoil(), &pats[..1], 3, true)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(h1_transitions(&stages[..1]), Ok(vec![]));
        assert_eq!(
            h1_transition(&stages, 2),
            Err(Error::StageOutOfRange {
                index: 2,
                stages: 3
            })
        );
    }

    #[test]
    fn export_round_trip() {
        let stages = build_filtration(&trefoil(), &[b("2: s1 s1 s1")], 2, true).unwrap();
        let json = serde_json::to_string(&export_filtration(&stages)).unwrap();
        let back: Vec<StageExport> = serde_json::from_str(&json).unwrap();
        let rebuilt: Vec<FiltrationStage> = back.iter().map(|e| e.try_into().unwrap()).collect();
        assert_eq!(rebuilt, stages);
    }

    #[test]
    fn criterion_examples() {
        // t = 2, d = 2, eps = -1: d (pq t - s) = 2 needs pq t - s = 1
        let c = cable_tight_criterion(1, 2, 1, 1, 2, -1, 0).unwrap();
        assert!(c.satisfied);
        assert_eq!((c.z, c.branch), (2, Some(TightBranch::Composite)));
        assert!(
            !cable_tight_criterion(1, 2, 1, 1, 1, -1, 0)
                .unwrap()
                .satisfied
        );
        assert!(
            !cable_tight_criterion(1, 3, 1, 1, 2, -1, 0)
                .unwrap()
                .satisfied
        );
        assert!(matches!(
            cable_tight_criterion(1, 0, 1, 1, 2, 1, 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            cable_tight_criterion(1, 2, 1, 1, 0, 1, 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            cable_tight_criterion(1, 2, 2, 4, 2, 1, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn small_search_matches_direct_check() {
        let bound = 4;
        let found = tight_witness_search(bound);
        assert!(!found.is_empty());
        let mut direct = Vec::new();
        for s in -bound..=bound {
            for t in -bound..=bound {
                for p in -bound..=bound {
                    for q in -bound..=bound {
                        for d in -bound..=bound {
                            for eps in -1..=1 {
                                for delta in -1..=1 {
                                    if t == 0 || d == 0 || p.gcd(&q) != 1 {
                                        continue;
                                    }
                                    if cable_tight_criterion(s, t, p, q, d, eps, delta)
                                        .unwrap()
                                        .satisfied
                                    {
                                        direct.push(TightWitness {
                                            s,
                                            t,
                                            p,
                                            q,
                                            d,
                                            eps,
                                            delta,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let key = |w: &TightWitness| (w.s, w.t, w.p, w.q, w.d, w.eps, w.delta);
        let mut found = found;
        found.sort_by_key(key);
        direct.sort_by_key(key);
        assert_eq!(found, direct);
    }
}
