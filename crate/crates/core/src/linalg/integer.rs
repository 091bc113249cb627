//! Integer matrices with Hermite and Smith normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::Matrix;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix literal. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(data).expect("ragged integer literal")
    }

    /// The same matrix, if every entry is an integer.
    pub fn from_rational(m: &Matrix) -> Result<Self> {
        if !m.is_integral() {
            return Err(Error::NotIntegral("matrix has fractional entries".into()));
        }
        Ok(IntMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|x| x.numer().clone()).collect(),
        })
    }

    pub fn to_rational(&self) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .cloned()
                .map(rational::from_bigint)
                .collect(),
        )
        .expect("shape preserved")
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

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend(self.row(i).iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, x);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
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

    /// row[target] -= f * row[source]
    fn row_sub(&mut self, target: usize, source: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let x = self.get(target, j) - f * self.get(source, j);
            self.set(target, j, x);
        }
    }

    /// col[target] -= f * col[source]
    fn col_sub(&mut self, target: usize, source: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let x = self.get(i, target) - f * self.get(i, source);
            self.set(i, target, x);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -self.get(i, j);
            self.set(i, j, x);
        }
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `h = u·m`, `u`
/// unimodular, pivots positive and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are collected at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        while let Some(p) = (r..h.rows)
            .filter(|&i| !h.get(i, c).is_zero())
            .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()))
        {
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..h.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let f = h.get(i, c).div_floor(h.get(r, c));
                h.row_sub(i, r, &f);
                u.row_sub(i, r, &f);
                clean &= h.get(i, c).is_zero();
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let f = h.get(i, c).div_floor(h.get(r, c));
            h.row_sub(i, r, &f);
            u.row_sub(i, r, &f);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(d, u, v)` with `d = u·m·v`, `u` and `v`
/// unimodular, `d` diagonal with nonnegative entries, each dividing the next.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..d.rows {
                let f = d.get(i, t).div_floor(d.get(t, t));
                d.row_sub(i, t, &f);
                u.row_sub(i, t, &f);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..d.cols {
                let f = d.get(t, j).div_floor(d.get(t, t));
                d.col_sub(j, t, &f);
                v.col_sub(j, t, &f);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..d.rows)
                .find(|&i| (t + 1..d.cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    // Fold the offending row in; the next pass shrinks the pivot.
                    let minus_one = BigInt::from(-1);
                    d.row_sub(t, i, &minus_one);
                    u.row_sub(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rational().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let m = Matrix::deserialize(d)?;
        IntMatrix::from_rational(&m).map_err(D::Error::custom)
    }
}

/// Integer rows spanning the same rational space as `m`'s rows, after
/// clearing denominators row by row.
pub fn clear_denominators(m: &Matrix) -> IntMatrix {
    let rows = (0..m.rows())
        .map(|i| {
            let l = rational::common_denominator(m.row(i));
            let scale = Rational::from_integer(l);
            m.row(i).iter().map(|x| (x * &scale).to_integer()).collect()
        })
        .collect();
    IntMatrix::from_rows(rows)
        .map(|x| {
            if m.rows() == 0 {
                IntMatrix::zeros(0, m.cols())
            } else {
                x
            }
        })
        .expect("rectangular")
}
