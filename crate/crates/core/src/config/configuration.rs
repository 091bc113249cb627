//! Labeled line configurations in the plane and their Plücker coordinates.
//!
//! A configuration is a 3×n matrix whose columns are the coefficient vectors
//! of the lines. Six-line configurations are labeled by pair slots `0..6`
//! (pairs `{0,1}`, `{2,3}`, `{4,5}`); seven-line configurations by the
//! nonzero characters `1..=7` of `F₂³`.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigJson", into = "ConfigJson")]
pub struct ConfigMatrix {
    matrix: Matrix,
    labels: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    matrix: Matrix,
    labels: Vec<u8>,
}

impl TryFrom<ConfigJson> for ConfigMatrix {
    type Error = Error;
    fn try_from(j: ConfigJson) -> Result<Self> {
        ConfigMatrix::new(j.matrix, j.labels)
    }
}

impl From<ConfigMatrix> for ConfigJson {
    fn from(c: ConfigMatrix) -> Self {
        ConfigJson {
            matrix: c.matrix,
            labels: c.labels,
        }
    }
}

/// The label set a configuration with `n` columns must use.
pub fn standard_labels(n: usize) -> Result<Vec<u8>> {
    match n {
        6 => Ok((0..6).collect()),
        7 => Ok((1..=7).collect()),
        _ => Err(Error::DimensionMismatch(format!(
            "configurations have 6 or 7 lines, got {n}"
        ))),
    }
}

impl ConfigMatrix {
    pub fn new(matrix: Matrix, labels: Vec<u8>) -> Result<Self> {
        if matrix.rows() != 3 {
            return Err(Error::DimensionMismatch(format!(
                "expected 3 rows, got {}",
                matrix.rows()
            )));
        }
        let n = matrix.cols();
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} columns but {} labels",
                labels.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted != standard_labels(n)? {
            return Err(Error::Invalid(format!(
                "labels {labels:?} are not a permutation of the standard set"
            )));
        }
        if let Some(j) = (0..n).find(|&j| (0..3).all(|i| matrix.get(i, j).is_zero())) {
            return Err(Error::ZeroColumn(j));
        }
        Ok(ConfigMatrix { matrix, labels })
    }

    /// Columns labeled in their natural order.
    pub fn standard(matrix: Matrix) -> Result<Self> {
        let labels = standard_labels(matrix.cols())?;
        ConfigMatrix::new(matrix, labels)
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        ConfigMatrix::standard(Matrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.matrix.col(j)
    }

    pub fn position_of(&self, label: u8) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Same lines with the columns reordered so that labels increase.
    pub fn sorted_by_label(&self) -> ConfigMatrix {
        let order: Vec<usize> = (0..self.len()).sorted_by_key(|&j| self.labels[j]).collect();
        self.permuted(&order)
    }

    /// Column `k` of the result is column `order[k]` of `self`, label included.
    pub fn permuted(&self, order: &[usize]) -> ConfigMatrix {
        ConfigMatrix {
            matrix: self.matrix.select_cols(order),
            labels: order.iter().map(|&j| self.labels[j]).collect(),
        }
    }

    /// Columns reordered but labels left in place.
    pub fn with_columns(&self, order: &[usize]) -> ConfigMatrix {
        ConfigMatrix {
            matrix: self.matrix.select_cols(order),
            labels: self.labels.clone(),
        }
    }

    pub fn with_matrix(&self, matrix: Matrix) -> Result<ConfigMatrix> {
        ConfigMatrix::new(matrix, self.labels.clone())
    }

    /// Signed minor `det(Mᵢ, Mⱼ, M_k)` on column positions.
    pub fn minor(&self, i: usize, j: usize, k: usize) -> Rational {
        minor3(&self.column(i), &self.column(j), &self.column(k))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether columns `i` and `j` describe the same line.
    pub fn coincident(&self, i: usize, j: usize) -> bool {
        cross(&self.column(i), &self.column(j))
            .iter()
            .all(Zero::is_zero)
    }
}

pub fn minor3(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    let x = cross(b, c);
    &a[0] * &x[0] + &a[1] * &x[1] + &a[2] * &x[2]
}

pub fn cross(a: &[Rational], b: &[Rational]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Scale so that the first nonzero entry is 1.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(p) => {
            let inv = p.recip();
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

/// All `C(n,3)` minors, keyed by increasing column triples.
#[serde_with::serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerVector {
    pub n: usize,
    #[serde_as(as = "Vec<(_, serde_with::DisplayFromStr)>")]
    pub values: Vec<([usize; 3], Rational)>,
}

impl PluckerVector {
    fn index(&self, t: [usize; 3]) -> usize {
        self.values
            .binary_search_by_key(&t, |(k, _)| *k)
            .expect("triple in range")
    }

    /// Value on an increasing triple.
    pub fn get(&self, t: [usize; 3]) -> &Rational {
        &self.values[self.index(t)].1
    }

    /// Alternating extension to arbitrary triples; zero on repeats.
    pub fn signed(&self, i: usize, j: usize, k: usize) -> Rational {
        if i == j || j == k || i == k {
            return Rational::zero();
        }
        let mut t = [i, j, k];
        let mut sign = Rational::one();
        for a in 0..3 {
            for b in 0..2 - a {
                if t[b] > t[b + 1] {
                    t.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        sign * self.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|(_, v)| v.is_zero())
    }

    /// Every three-term Grassmann–Plücker relation
    /// `p_aij p_akl − p_aik p_ajl + p_ail p_ajk = 0`.
    pub fn satisfies_relations(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).filter(|&x| x != a).combinations(4).all(|q| {
                let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
                let s = self.signed(a, i, j) * self.signed(a, k, l)
                    - self.signed(a, i, k) * self.signed(a, j, l)
                    + self.signed(a, i, l) * self.signed(a, j, k);
                s.is_zero()
            })
        })
    }
}

pub fn plucker(c: &ConfigMatrix) -> PluckerVector {
    let n = c.len();
    let values = (0..n)
        .combinations(3)
        .map(|t| ([t[0], t[1], t[2]], c.minor(t[0], t[1], t[2])))
        .collect();
    PluckerVector { n, values }
}

/// A concurrent triple of lines and their common point.
#[serde_with::serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplePoint {
    pub lines: [usize; 3],
    #[serde_as(as = "Vec<serde_with::DisplayFromStr>")]
    pub point: Vec<Rational>,
}

/// Every concurrent triple, in lexicographic order. Lines must be distinct.
pub fn triple_points(c: &ConfigMatrix) -> Result<Vec<TriplePoint>> {
    let n = c.len();
    for (i, j) in (0..n).tuple_combinations() {
        if c.coincident(i, j) {
            return Err(Error::CoincidentLines(i, j));
        }
    }
    let mut out = Vec::new();
    for t in (0..n).combinations(3) {
        if !c.minor(t[0], t[1], t[2]).is_zero() {
            continue;
        }
        let sub = c.matrix().select_cols(&t).transpose();
        let k = sub.kernel_basis();
        debug_assert_eq!(k.rows(), 1);
        out.push(TriplePoint {
            lines: [t[0], t[1], t[2]],
            point: normalize(k.row(0)),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;
    use proptest::prelude::*;

    pub(crate) fn quadrangle() -> ConfigMatrix {
        // sides through (1,0,0),(0,1,0),(0,0,1),(1,1,1); opposite sides paired
        ConfigMatrix::from_i64(&[
            [0, 1, 0, 1, 0, 1],
            [0, -1, 1, 0, 1, 0],
            [1, 0, 0, -1, -1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn frame_minor_is_one() {
        let c =
            ConfigMatrix::from_i64(&[[1, 0, 0, 1, 2, 3], [0, 1, 0, 1, 5, 7], [0, 0, 1, 1, 11, 13]])
                .unwrap();
        assert_eq!(plucker(&c).get([0, 1, 2]), &int(1));
    }

    #[test]
    fn repeated_column_kills_its_minors() {
        let c =
            ConfigMatrix::from_i64(&[[1, 0, 0, 1, 2, 2], [0, 1, 0, 1, 5, 5], [0, 0, 1, 1, 3, 3]])
                .unwrap();
        let p = plucker(&c);
        for (t, v) in &p.values {
            if t.contains(&4) && t.contains(&5) {
                assert!(v.is_zero());
            }
        }
        assert!(!p.is_zero());
    }

    #[test]
    fn construction_rejects_bad_input() {
        let z = Matrix::from_i64(&[[1, 0, 0, 1, 2, 0], [0, 1, 0, 1, 5, 0], [0, 0, 1, 1, 3, 0]]);
        assert_eq!(ConfigMatrix::standard(z), Err(Error::ZeroColumn(5)));
        let m = Matrix::from_i64(&[[1, 0, 0, 1, 2, 1], [0, 1, 0, 1, 5, 1], [0, 0, 1, 1, 3, 1]]);
        assert!(matches!(
            ConfigMatrix::new(m.clone(), vec![0, 1, 2, 3, 4, 4]),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            ConfigMatrix::new(m.select_cols(&[0, 1, 2, 3, 4]), vec![0, 1, 2, 3, 4]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn quadrangle_has_four_triple_points() {
        let tp = triple_points(&quadrangle()).unwrap();
        assert_eq!(tp.len(), 4);
        for t in &tp {
            for &l in &t.lines {
                let col = quadrangle().column(l);
                let dot: Rational = col.iter().zip(&t.point).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        let pts: Vec<_> = tp.iter().map(|t| t.point.clone()).collect();
        assert!(pts.contains(&vec![int(1), int(1), int(1)]));
    }

    #[test]
    fn generic_config_has_no_triple_points() {
        let c =
            ConfigMatrix::from_i64(&[[1, 0, 0, 1, 2, 3], [0, 1, 0, 1, 5, 7], [0, 0, 1, 1, 11, 13]])
                .unwrap();
        assert!(triple_points(&c).unwrap().is_empty());
        let d = c.with_columns(&[0, 1, 2, 3, 4, 4]);
        assert_eq!(triple_points(&d), Err(Error::CoincidentLines(4, 5)));
    }

    #[test]
    fn json_round_trip() {
        let c = quadrangle().permuted(&[3, 1, 0, 2, 5, 4]);
        let s = serde_json::to_string(&c).unwrap();
        let back: ConfigMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = s.replace("[3,1,0,2,5,4]", "[3,3,0,2,5,4]");
        assert!(serde_json::from_str::<ConfigMatrix>(&bad).is_err());
    }

    proptest! {
        #[test]
        fn plucker_relations_hold(entries in prop::collection::vec(-6i64..7, 21), seven in any::<bool>()) {
            let n = if seven { 7 } else { 6 };
            let rows: Vec<Vec<i64>> = entries.chunks(7).map(|r| r[..n].to_vec()).collect();
            let m = Matrix::from_i64(&rows);
            prop_assume!((0..n).all(|j| (0..3).any(|i| !m.get(i, j).is_zero())));
            let c = ConfigMatrix::standard(m).unwrap();
            prop_assert!(plucker(&c).satisfies_relations());
        }

        #[test]
        fn minors_are_alternating(entries in prop::collection::vec(-6i64..7, 18), perm in Just(vec![0usize,1,2]).prop_shuffle()) {
            let rows: Vec<Vec<i64>> = entries.chunks(6).map(|r| r.to_vec()).collect();
            let m = Matrix::from_i64(&rows);
            prop_assume!((0..6).all(|j| (0..3).any(|i| !m.get(i, j).is_zero())));
            let c = ConfigMatrix::standard(m).unwrap();
            let p = plucker(&c);
            let t = [1usize, 3, 4];
            let u = [t[perm[0]], t[perm[1]], t[perm[2]]];
            prop_assert_eq!(p.signed(u[0], u[1], u[2]), c.minor(u[0], u[1], u[2]));
        }
    }
}
