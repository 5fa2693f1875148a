use crate::freegroup::{Letter, Word};

use super::presentation::{PeripheralPair, Presentation};

/// Cyclic reduction; a conjugate relator generates the same normal closure.
fn cyclically_reduce(w: &Word) -> Word {
    w.cyclic_decompose().1
}

/// Canonical representative of a relator up to cyclic rotation and
/// inversion, used for duplicate detection.
fn relator_key(w: &Word) -> Vec<Letter> {
    let n = w.len();
    let mut best: Option<Vec<Letter>> = None;
    for base in [w.letters().to_vec(), w.invert().letters().to_vec()] {
        for k in 0..n.max(1) {
            let rot: Vec<Letter> = base[k.min(n)..]
                .iter()
                .chain(&base[..k.min(n)])
                .copied()
                .collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Substitutes `x_gen := replacement` and renumbers generators above `gen`
/// down by one.
fn eliminate_in(w: &Word, gen: u32, replacement: &Word) -> Word {
    let inv = replacement.invert();
    let mut letters = Vec::new();
    for l in w.letters() {
        match l.index().cmp(&gen) {
            std::cmp::Ordering::Equal => {
                let r = if l.is_inverse() { &inv } else { replacement };
                letters.extend(r.letters().iter().map(|m| renumber(*m, gen)));
            }
            _ => letters.push(renumber(*l, gen)),
        }
    }
    Word::reduce(letters)
}

fn renumber(l: Letter, removed: u32) -> Letter {
    if l.index() > removed {
        Letter::new(l.index() - 1, l.is_inverse())
    } else {
        l
    }
}

struct Elimination {
    relator: usize,
    gen: u32,
    replacement: Word,
    new_total: usize,
}

/// Applies sound Tietze moves until none applies: free and cyclic
/// reduction of relators, removal of trivial and duplicate relators, and
/// elimination of a generator occurring exactly once in some relator when
/// that does not increase total relator length. Peripheral words are
/// rewritten through every elimination.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    let mut gens: Vec<String> = p.gens().to_vec();
    let mut relators: Vec<Word> = p.relators().to_vec();
    let mut peripheral = p.peripheral().cloned();

    loop {
        let mut seen = std::collections::HashSet::new();
        relators = relators
            .iter()
            .map(cyclically_reduce)
            .filter(|r| !r.is_empty())
            .filter(|r| seen.insert(relator_key(r)))
            .collect();

        let total: usize = relators.iter().map(Word::len).sum();
        let mut best: Option<Elimination> = None;
        for (ri, r) in relators.iter().enumerate() {
            for gen in 1..=gens.len() as u32 {
                let positions: Vec<usize> = r
                    .letters()
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l.index() == gen)
                    .map(|(i, _)| i)
                    .collect();
                let [pos] = positions[..] else { continue };
                // r = u g^e v  =>  g = u^-1 v^-1 (e = 1) or g = v u (e = -1)
                let u = Word::reduce(r.letters()[..pos].iter().copied());
                let v = Word::reduce(r.letters()[pos + 1..].iter().copied());
                let replacement = if r.letters()[pos].is_inverse() {
                    v.multiply(&u)
                } else {
                    u.invert().multiply(&v.invert())
                };
                let new_total: usize = relators
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != ri)
                    .map(|(_, w)| cyclically_reduce(&eliminate_in(w, gen, &replacement)).len())
                    .sum();
                if new_total > total {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some(b) => {
                        (new_total, std::cmp::Reverse(gen))
                            < (b.new_total, std::cmp::Reverse(b.gen))
                    }
                };
                if better {
                    best = Some(Elimination {
                        relator: ri,
                        gen,
                        replacement,
                        new_total,
                    });
                }
            }
        }
        let Some(e) = best else { break };
        relators.remove(e.relator);
        relators = relators
            .iter()
            .map(|w| eliminate_in(w, e.gen, &e.replacement))
            .collect();
        peripheral = peripheral.map(|pp| PeripheralPair {
            meridian: eliminate_in(&pp.meridian, e.gen, &e.replacement),
            longitude: eliminate_in(&pp.longitude, e.gen, &e.replacement),
        });
        gens.remove(e.gen as usize - 1);
    }
    Presentation::new(gens, relators, peripheral).expect("eliminations keep indices in range")
}
