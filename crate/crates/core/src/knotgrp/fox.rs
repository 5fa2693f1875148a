//! Fox free differential calculus and the Alexander polynomial.

use super::abelian_coordinates;
use super::laurent::LaurentPoly;
use super::presentation::Presentation;
use crate::error::{Error, Result};

/// Max number of row subsets whose minors are combined.
const MAX_MINOR_SETS: usize = 4096;

/// Fox derivatives `d r_i / d x_j` pushed through `x_j -> t^{coords[j]}`.
pub fn fox_matrix(p: &Presentation, coords: &[i64]) -> Vec<Vec<LaurentPoly>> {
    p.relators()
        .iter()
        .map(|r| {
            let mut row = vec![Vec::<(i64, i64)>::new(); p.rank()];
            let mut prefix = 0i64;
            for l in r.letters() {
                let j = l.index() as usize - 1;
                if l.is_inverse() {
                    prefix -= coords[j];
                    row[j].push((prefix, -1));
                } else {
                    row[j].push((prefix, 1));
                    prefix += coords[j];
                }
            }
            row.into_iter()
                .map(|terms| {
                    terms.into_iter().fold(LaurentPoly::zero(), |acc, (e, c)| {
                        &acc + &LaurentPoly::monomial(c, e)
                    })
                })
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant over `Z[t, 1/t]`.
pub(crate) fn determinant(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Alexander polynomial of a presentation with `H_1 = Z`.
///
/// Takes the Fox matrix under abelianization and generates the first
/// elementary ideal from the maximal minors that omit one column `j`.
/// With `k` the class of `x_j`, each such minor equals the Alexander
/// polynomial times `(t^k - 1)/(t - 1)` up to units; the gcd over row
/// subsets is taken when there are more relators than `gens - 1`.
/// Result normalized: lowest exponent 0, positive leading coefficient.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPoly> {
    let coords = abelian_coordinates(p).map_err(|e| Error::NotKnotLike(e.to_string()))?;
    let g = p.rank();
    let r = p.relators().len();
    if r + 1 < g {
        return Err(Error::NotKnotLike(format!(
            "{g} generators but only {r} relators"
        )));
    }
    // column with the smallest nonzero class
    let (col, class) = coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .min_by_key(|(_, &c)| c.abs())
        .map(|(j, &c)| (j, c))
        .ok_or_else(|| Error::NotKnotLike("all generators are null-homologous".into()))?;
    if binomial(r, g - 1) > MAX_MINOR_SETS as u128 {
        return Err(Error::NotKnotLike(format!(
            "{r} relators on {g} generators is too far from deficiency one"
        )));
    }
    let fox = fox_matrix(p, &coords);
    let mut ideal = LaurentPoly::zero();
    for rows in combinations(r, g - 1) {
        let minor: Vec<Vec<LaurentPoly>> = rows
            .iter()
            .map(|&i| {
                fox[i]
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let d = determinant(minor);
        if !d.is_zero() {
            ideal = ideal.gcd(&d);
        }
    }
    if ideal.is_zero() {
        return Ok(ideal);
    }
    // divide out (t^k - 1)/(t - 1)
    let k = class.abs();
    let cyclotomic = LaurentPoly::from_i64(0, &vec![1; k as usize]);
    let delta = ideal
        .div_exact(&cyclotomic)
        .ok_or_else(|| Error::NotKnotLike("minor not divisible by the column factor".into()))?;
    Ok(delta.normalized())
}
