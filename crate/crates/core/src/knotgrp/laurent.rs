use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Integer Laurent polynomial in one variable `t`.
///
/// Stored as `t^low * (coeffs[0] + coeffs[1] t + ...)` with no zero
/// coefficient at either end; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        LaurentPoly::from_coeffs(exp, vec![c.into()])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// `coeffs[i]` is the coefficient of `t^(low + i)`.
    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Width of the exponent range, `-1` for zero.
    pub fn span(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `p(t) -> p(t^k)`.
    pub fn substitute_power(&self, k: i64) -> LaurentPoly {
        assert!(k != 0, "t -> t^0 is not an automorphism");
        let mut terms: Vec<(i64, BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((self.low + i as i64) * k, c.clone()))
            .collect();
        terms.sort_by_key(|(e, _)| *e);
        LaurentPoly::from_terms(terms)
    }

    fn from_terms(terms: Vec<(i64, BigInt)>) -> LaurentPoly {
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return LaurentPoly::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        LaurentPoly::from_coeffs(low, coeffs)
    }

    /// `p(1/t)`.
    pub fn mirror(&self) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly::from_coeffs(-self.high_degree(), coeffs)
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale_div(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.low, self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Canonical associate under units `±t^k`: lowest exponent 0, leading
    /// coefficient positive.
    pub fn normalized(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.shift(-self.low);
        if p.leading().unwrap().is_negative() {
            -p
        } else {
            p
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn associated(&self, other: &LaurentPoly) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn is_symmetric(&self) -> bool {
        self.associated(&self.mirror())
    }

    /// Exact quotient, `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (q, r) = poly_divmod(&self.coeffs, &other.coeffs)?;
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::from_coeffs(self.low - other.low, q))
    }

    /// Greatest common divisor in `Z[t, 1/t]`, normalized.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let ca = self.content();
        let cb = other.content();
        let c = ca.gcd(&cb);
        let mut a = self.scale_div(&ca).shift(-self.low).coeffs;
        let mut b = other.scale_div(&cb).shift(-other.low).coeffs;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        // primitive pseudo-remainder sequence
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive(r);
        }
        LaurentPoly::from_coeffs(0, primitive(a))
            .scale_mul(&c)
            .normalized()
    }

    fn scale_mul(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }
}

fn trim_vec(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim_vec(&mut v);
    let c = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if c.is_zero() || c.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &c).collect()
}

/// Polynomial division with integer quotient steps; `None` when a leading
/// coefficient does not divide.
fn poly_divmod(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut r: Vec<BigInt> = a.to_vec();
    let lb = b.last().unwrap();
    if a.len() < b.len() {
        return Some((Vec::new(), r));
    }
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (quot, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &quot * bj;
        }
        q[i] = quot;
    }
    trim_vec(&mut r);
    Some((q, r))
}

/// Pseudo-remainder of `a` by `b` (both dense, low degree first).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim_vec(&mut r);
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        trim_vec(&mut r);
    }
    r
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().max(rhs.high_degree());
        let coeffs = (low..=high).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::from_coeffs(low, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// Highest power first, e.g. `t^2 - t + 1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match e.cmp(&0) {
                Ordering::Equal => String::new(),
                _ if e == 1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

/// Inverse of `Display`: terms `c`, `ct`, `ct^e` joined by ` + ` / ` - `.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let bad = |position: usize, message: String| Error::Parse { position, message };
        let mut acc = LaurentPoly::zero();
        let mut sign = 1;
        let mut want_term = true;
        let mut seen = 0;
        for (i, tok) in text.split_whitespace().enumerate() {
            if !want_term {
                sign = match tok {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(bad(i, format!("expected + or -, got {tok:?}"))),
                };
                want_term = true;
                continue;
            }
            let (neg, body) = match tok.strip_prefix('-') {
                Some(rest) if seen == 0 => (true, rest),
                _ => (false, tok),
            };
            let (coeff, exp) =
                parse_term(body).ok_or_else(|| bad(i, format!("bad term {tok:?}")))?;
            let c = if neg { -sign } else { sign };
            acc = &acc + &LaurentPoly::monomial(coeff * c, exp);
            want_term = false;
            seen += 1;
        }
        if want_term {
            return Err(bad(seen, "missing term".into()));
        }
        Ok(acc)
    }
}

fn parse_term(body: &str) -> Option<(BigInt, i64)> {
    let digits_end = body
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(body.len());
    let (num, var) = body.split_at(digits_end);
    let coeff = if num.is_empty() {
        BigInt::one()
    } else {
        num.parse().ok()?
    };
    let exp = match var {
        "" if !num.is_empty() => 0,
        "t" => 1,
        _ => var.strip_prefix("t^")?.parse().ok()?,
    };
    Some((coeff, exp))
}

/// Structured form: lowest exponent plus dense coefficient list.
#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    low: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            low: self.low,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LaurentRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::from_coeffs(r.low, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64(low, c)
    }

    #[test]
    fn display() {
        assert_eq!(p(0, &[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(p(-1, &[-2, 0, 3]).to_string(), "3t - 2t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }

    #[test]
    fn normalization_and_symmetry() {
        let a = p(-3, &[-1, 1, -1]);
        assert_eq!(a.normalized(), p(0, &[1, -1, 1]));
        assert!(a.is_symmetric());
        assert!(!p(0, &[1, 2]).is_symmetric());
        assert_eq!(p(0, &[1, 2, 3]).mirror(), p(-2, &[3, 2, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(0, &[1, -1, 1]);
        let b = p(0, &[-1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&p(0, &[2, 1])), None);
        assert_eq!(prod.gcd(&(&a * &p(2, &[3, 1]))), a);
        assert_eq!(p(0, &[2, 2]).gcd(&p(0, &[4])), p(0, &[2]));
        // (t^3 - 1) / (t - 1)
        assert_eq!(p(0, &[-1, 0, 0, 1]).div_exact(&b), Some(p(0, &[1, 1, 1])));
    }

    #[test]
    fn substitution() {
        assert_eq!(
            p(0, &[1, -1, 1]).substitute_power(2),
            p(0, &[1, 0, -1, 0, 1])
        );
        assert_eq!(p(1, &[1]).substitute_power(-3), p(-3, &[1]));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, prop::collection::vec(-4i64..=4, 0..5)).prop_map(|(l, c)| p(l, &c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let x = &a * &c;
            let y = &b * &c;
            let g = x.gcd(&y);
            prop_assert!(x.div_exact(&g).is_some());
            prop_assert!(y.div_exact(&g).is_some());
            prop_assert!(g.div_exact(&c.normalized()).is_some(), "{} vs {}", g, c);
        }
    }
}
