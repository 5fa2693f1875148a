//! Smith normal form over the integers with explicit unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * a.get(n - 1, n - 1)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = f * self.get(src, j);
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = f * self.get(i, src);
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{:?}", rows)
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|v| !v.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    // remainder is smaller than the pivot: make it the pivot
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, v, d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntegerMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U A V = D");
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", diag);
            }
        }
        s
    }

    #[test]
    fn small_cases() {
        let s = check(&IntegerMatrix::from_rows(&[vec![1, -1]]));
        assert_eq!(s.diagonal(), vec![BigInt::one()]);
        let s = check(&IntegerMatrix::from_rows(&[vec![3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(3)]);
        let s = check(&IntegerMatrix::from_rows(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, -4, -16],
        ]));
        let expect: Vec<BigInt> = [2, 6, 12].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(s.diagonal(), expect);
        let s = check(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
        check(&IntegerMatrix::zeros(2, 3));
        check(&IntegerMatrix::zeros(0, 2));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntegerMatrix::from_rows(&[vec![2, -1, 0], vec![1, 3, 2], vec![0, 5, -4]]);
        // 2*(3*-4 - 2*5) - (-1)*(1*-4 - 0) + 0
        assert_eq!(m.determinant(), BigInt::from(2 * (-12 - 10) - 4));
    }

    proptest! {
        #[test]
        fn random_matrices_decompose(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in prop::collection::vec(-9i64..=9, 16)
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect())
                .collect();
            let a = IntegerMatrix::from_rows(&data);
            let s = check(&a);
            if rows == cols {
                // |det A| is the product of the invariant factors
                let prod: BigInt = s.diagonal().iter().product();
                prop_assert_eq!(prod, a.determinant().abs());
            }
        }
    }
}
