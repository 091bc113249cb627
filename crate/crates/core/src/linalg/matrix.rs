//! Dense row-major matrices over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix literal from integer rows. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let data: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| rational::int(x)).collect())
            .collect();
        Self::from_rows(data).expect("ragged integer literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
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

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
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
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `v · self` for a row vector `v`.
    pub fn apply_left(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows, "vector length");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += a * self.get(i, j);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch("vstack column counts".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(rational::is_integer)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = self.integer_echelon(true);
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, (row, &p)) in rows.iter().zip(&pivots).enumerate() {
            let lead = &row[p];
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, Rational::new(x.clone(), lead.clone()));
                }
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.integer_echelon(false).1.len()
    }

    /// Fraction-free elimination on the rows scaled to primitive integer
    /// vectors. Returns the nonzero echelon rows, each a multiple of the
    /// corresponding reduced row when `jordan` is set, and the pivots.
    fn integer_echelon(&self, jordan: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let d = rational::common_denominator(row);
                let mut v: Vec<BigInt> = row.iter().map(|x| x.numer() * (&d / x.denom())).collect();
                make_primitive(&mut v);
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].magnitude().bits())
            else {
                continue;
            };
            rows.swap(p, r);
            let (head, tail) = rows.split_at_mut(r);
            let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
            let targets = if jordan {
                head.iter_mut().chain(tail.iter_mut()).collect::<Vec<_>>()
            } else {
                tail.iter_mut().collect()
            };
            for row in targets {
                if row[c].is_zero() {
                    continue;
                }
                let g = pivot_row[c].gcd(&row[c]);
                let (a, b) = (&pivot_row[c] / &g, &row[c] / &g);
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    if y.is_zero() {
                        if !x.is_zero() && !a.is_one() {
                            *x *= &a;
                        }
                    } else {
                        *x = &a * &*x - &b * y;
                    }
                }
                make_primitive(row);
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            let inv = pivot.recip();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let x = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, x);
                }
            }
            det *= pivot;
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n))?.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.select_cols(&cols))
    }

    /// Basis of the right null space `{x : self·x = 0}`, one vector per row.
    ///
    /// The basis is read off the reduced echelon form: one vector per free
    /// column, with a 1 in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, Rational::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(k, p, -r.get(i, f).clone());
            }
        }
        out
    }

    /// One solution `x` of `self·x = b`, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let bcol = Matrix {
            rows: self.rows,
            cols: 1,
            data: b.to_vec(),
        };
        let (r, pivots) = self.hstack(&bcol).ok()?.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Coordinates of each row of `other` in terms of the rows of `self`,
    /// which must be linearly independent. `None` if some row is outside.
    pub fn coordinates_of(&self, other: &Matrix) -> Option<Matrix> {
        let t = self.transpose();
        let rows: Option<Vec<Vec<Rational>>> =
            (0..other.rows).map(|i| t.solve(other.row(i))).collect();
        Matrix::from_rows(rows?).ok().map(|m| {
            if m.rows == 0 {
                Matrix::zeros(0, self.rows)
            } else {
                m
            }
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Divide by the gcd of the entries.
fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(
        BigInt::zero(),
        |g, x| if x.is_zero() { g } else { g.gcd(x) },
    );
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// Basis of the intersection of the row spaces of `a` and `b`, by the
/// Zassenhaus block echelon form `[[a, a], [b, 0]]`.
pub fn intersect_row_spaces(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "{} and {} columns",
            a.cols, b.cols
        )));
    }
    let n = a.cols;
    let top = a.hstack(a)?;
    let bottom = b.hstack(&Matrix::zeros(b.rows, n))?;
    let (r, pivots) = top.vstack(&bottom)?.rref();
    let rows: Vec<Vec<Rational>> = pivots
        .iter()
        .enumerate()
        .filter(|(_, &p)| p >= n)
        .map(|(i, _)| r.row(i)[n..].to_vec())
        .collect();
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, n));
    }
    Matrix::from_rows(rows)
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum dimensions"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference dimensions"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(rational::format).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::format).collect())
            .collect();
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MatrixJson::deserialize(d)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(D::Error::custom("entries do not match rows/cols"));
        }
        let data = j
            .entries
            .iter()
            .flatten()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Matrix {
            rows: j.rows,
            cols: j.cols,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, int};

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::from_i64(&[[1, 1], [1, -1]]).det().unwrap(), int(-2));
        assert_eq!(Matrix::identity(4).det().unwrap(), int(1));
        assert!(matches!(
            Matrix::zeros(2, 3).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel_basis().rows(), 0);
        let k = Matrix::from_i64(&[[1, 1, 1]]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(&[[-1, 1, 0], [-1, 0, 1]]));
    }

    #[test]
    fn rank_of_the_hamming_checks() {
        let g = Matrix::from_i64(&[
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ]);
        assert_eq!(g.rank(), 3);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_i64(&[[2, 1], [1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(m.solve(&[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        let s = Matrix::from_i64(&[[1, 2], [2, 4]]);
        assert!(s.inverse().is_err());
        assert!(s.solve(&[int(1), int(1)]).is_none());
        assert_eq!(
            Matrix::diagonal(&[int(2)]).inverse().unwrap().get(0, 0),
            &frac(1, 2)
        );
    }

    #[test]
    fn json_round_trip() {
        let m =
            Matrix::from_rows(vec![vec![frac(1, 2), int(-3)], vec![int(0), frac(-5, 7)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"rows":2,"cols":2,"entries":[["1/2","-3"],["0","-5/7"]]}"#
        );
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn intersection_of_two_planes() {
        let a = Matrix::from_i64(&[[1, 0, 0], [0, 1, 0]]);
        let b = Matrix::from_i64(&[[1, 1, 1], [0, 1, 0]]);
        let c = intersect_row_spaces(&a, &b).unwrap();
        assert_eq!(c.rows(), 1);
        assert_eq!(c.row(0), &[int(0), int(1), int(0)]);
        assert_eq!(
            intersect_row_spaces(&a, &Matrix::from_i64(&[[0, 0, 1]]))
                .unwrap()
                .rows(),
            0
        );
    }

    proptest::proptest! {
        #[test]
        fn intersection_dimension_is_inclusion_exclusion(
            x in proptest::collection::vec(-2i64..3, 15),
            y in proptest::collection::vec(-2i64..3, 10),
        ) {
            let a = Matrix::from_i64(&x.chunks(5).collect::<Vec<_>>());
            let b = Matrix::from_i64(&y.chunks(5).collect::<Vec<_>>());
            let c = intersect_row_spaces(&a, &b).unwrap();
            proptest::prop_assert_eq!(c.rows() + a.vstack(&b).unwrap().rank(), a.rank() + b.rank());
            for i in 0..c.rows() {
                let v = Matrix::from_rows(vec![c.row(i).to_vec()]).unwrap();
                proptest::prop_assert_eq!(a.vstack(&v).unwrap().rank(), a.rank());
                proptest::prop_assert_eq!(b.vstack(&v).unwrap().rank(), b.rank());
            }
        }
    }
}
