//! Lattices given by rational Gram matrices, and the named families.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::{self, int, Rational};
use crate::linalg::{IntMatrix, Matrix};

/// A nondegenerate symmetric bilinear form on `Z^n`, given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    gram: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Lattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram, name: None })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_i64(rows))
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let d: Vec<Rational> = entries.iter().map(|&x| int(x)).collect();
        Self::new(Matrix::diagonal(&d))
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> Rational {
        self.gram.det().expect("square gram")
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        crate::linalg::matrix::dot(x, &self.gram.apply(y))
    }

    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.pair(x, x)
    }

    /// The form multiplied by `c`.
    pub fn rescale(&self, c: &Rational) -> Result<Lattice> {
        let l = Lattice::new(self.gram.scale(c))?;
        Ok(match &self.name {
            Some(n) => l.named(format!("{n}({})", rational::format(c))),
            None => l,
        })
    }

    pub fn direct_sum(parts: &[Lattice]) -> Result<Lattice> {
        let blocks: Vec<Matrix> = parts.iter().map(|p| p.gram.clone()).collect();
        let l = Lattice::new(Matrix::block_diag(&blocks))?;
        let names: Option<Vec<&str>> = parts.iter().map(Lattice::name).collect();
        Ok(match names {
            Some(n) => l.named(n.join("+")),
            None => l,
        })
    }

    /// The dual lattice, in the dual basis (Gram matrix inverted).
    pub fn dual(&self) -> Lattice {
        Lattice {
            gram: self.gram.inverse().expect("nondegenerate"),
            name: None,
        }
    }

    /// Gram matrix of the vectors given by the rows of `basis`.
    pub fn gram_of(&self, basis: &Matrix) -> Matrix {
        &(basis * &self.gram) * &basis.transpose()
    }

    pub fn integer_gram(&self) -> Result<IntMatrix> {
        IntMatrix::from_rational(&self.gram)
            .map_err(|_| Error::NotIntegral("lattice is not integral".into()))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{:?}", self.gram),
        }
    }
}

/// Signature `(positive, negative)`, from a congruence diagonalisation.
pub fn signature(l: &Lattice) -> (usize, usize) {
    let d = congruence_diagonal(l.gram());
    let pos = d.iter().filter(|x| x.is_positive()).count();
    (pos, d.len() - pos)
}

/// Diagonal entries of a form congruent to `g` over the rationals.
/// `g` must be symmetric and nondegenerate.
fn congruence_diagonal(g: &Matrix) -> Vec<Rational> {
    let n = g.rows();
    let mut m = g.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if m.get(k, k).is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !m.get(i, i).is_zero()) {
                swap_sym(&mut m, k, p);
            } else if let Some(p) = (k + 1..n).find(|&j| !m.get(k, j).is_zero()) {
                // x_k += x_p turns the zero diagonal into 2·m[k][p].
                add_sym(&mut m, k, p);
            }
        }
        let pivot = m.get(k, k).clone();
        assert!(!pivot.is_zero(), "degenerate form");
        for i in k + 1..n {
            let f = m.get(i, k) / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let x = m.get(i, j) - &f * m.get(k, j);
                m.set(i, j, x);
            }
            for j in k..n {
                let x = m.get(j, i) - &f * m.get(j, k);
                m.set(j, i, x);
            }
        }
        out.push(pivot);
    }
    out
}

fn swap_sym(m: &mut Matrix, a: usize, b: usize) {
    m.swap_rows(a, b);
    let t = m.transpose();
    *m = t;
    m.swap_rows(a, b);
}

/// Replaces basis vector `a` by `a + b`.
fn add_sym(m: &mut Matrix, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let x = m.get(a, j) + m.get(b, j);
        m.set(a, j, x);
    }
    for i in 0..n {
        let x = m.get(i, a) + m.get(i, b);
        m.set(i, a, x);
    }
}

/// Even iff every diagonal entry is even. The lattice must be integral.
pub fn parity(l: &Lattice) -> Result<Parity> {
    if !l.is_integral() {
        return Err(Error::NotIntegral(
            "parity needs an integral lattice".into(),
        ));
    }
    let two = int(2);
    let even = (0..l.rank()).all(|i| rational::modulo(l.gram().get(i, i), &two).is_zero());
    Ok(if even { Parity::Even } else { Parity::Odd })
}

/// Names of the lattices built by [`make_named`].
#[serde_with::serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeName {
    /// `Z^{p,q}`: diagonal with `p` ones and `q` minus ones.
    Zpq(usize, usize),
    /// The hyperbolic plane.
    H,
    /// The hyperbolic plane scaled by a rational.
    Hscaled(#[serde_as(as = "serde_with::DisplayFromStr")] Rational),
    E8,
    /// `E8 ⊕ H`, the even unimodular lattice of signature (9,1).
    E10,
    /// The even-sum sublattice of `Z^n`.
    Dn(usize),
    /// The even-sum sublattice of `Z^{p,q}`.
    Dpq(usize, usize),
    /// `Z^2(2) ⊕ Z^4(-1)`.
    L,
    DirectSum(Vec<LatticeName>),
    Rescale(
        Box<LatticeName>,
        #[serde_as(as = "serde_with::DisplayFromStr")] Rational,
    ),
}

const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

/// Cartan matrix of E8, simple roots numbered as in Bourbaki (0-based here):
/// the chain 1-3-4-5-6-7-8 with root 2 attached to root 4.
pub fn e8_gram() -> Matrix {
    let mut g = Matrix::zeros(8, 8);
    for i in 0..8 {
        g.set(i, i, int(2));
    }
    for &(a, b) in &E8_EDGES {
        g.set(a, b, int(-1));
        g.set(b, a, int(-1));
    }
    g
}

/// Basis of the even-sum sublattice of `Z^n` in standard coordinates:
/// `e_i - e_{i+1}` for `i < n` and `e_{n-1} + e_n`.
pub fn d_basis(n: usize) -> Result<IntMatrix> {
    if n < 2 {
        return Err(Error::InvalidName(format!("D_n needs n >= 2, got {n}")));
    }
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate().take(n - 1) {
        row[i] = 1;
        row[i + 1] = -1;
    }
    rows[n - 1][n - 2] = 1;
    rows[n - 1][n - 1] = 1;
    Ok(IntMatrix::from_i64(&rows))
}

fn zpq_gram(p: usize, q: usize) -> Matrix {
    let d: Vec<Rational> = std::iter::repeat_n(int(1), p)
        .chain(std::iter::repeat_n(int(-1), q))
        .collect();
    Matrix::diagonal(&d)
}

pub fn make_named(name: &LatticeName) -> Result<Lattice> {
    let label = name.to_string();
    let l = match name {
        LatticeName::Zpq(p, q) => {
            if p + q == 0 {
                return Err(Error::InvalidName("Z^{0,0}".into()));
            }
            Lattice::new(zpq_gram(*p, *q))?
        }
        LatticeName::H => Lattice::from_i64(&[[0, 1], [1, 0]])?,
        LatticeName::Hscaled(c) => make_named(&LatticeName::H)?.rescale(c)?,
        LatticeName::E8 => Lattice::new(e8_gram())?,
        LatticeName::E10 => {
            Lattice::direct_sum(&[make_named(&LatticeName::E8)?, make_named(&LatticeName::H)?])?
        }
        LatticeName::Dn(n) => make_named(&LatticeName::Dpq(*n, 0))?,
        LatticeName::Dpq(p, q) => {
            let b = d_basis(p + q)?.to_rational();
            Lattice::new(&(&b * &zpq_gram(*p, *q)) * &b.transpose())?
        }
        LatticeName::L => Lattice::diagonal(&[2, 2, -1, -1, -1, -1])?,
        LatticeName::DirectSum(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidName("empty direct sum".into()));
            }
            let ls = parts.iter().map(make_named).collect::<Result<Vec<_>>>()?;
            Lattice::direct_sum(&ls)?
        }
        LatticeName::Rescale(inner, c) => {
            if c.is_zero() {
                return Err(Error::InvalidName("rescaling by zero".into()));
            }
            make_named(inner)?.rescale(c)?
        }
    };
    Ok(l.named(label))
}

impl fmt::Display for LatticeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeName::Zpq(p, 0) => write!(f, "Z{p}"),
            LatticeName::Zpq(p, q) => write!(f, "Z{{{p},{q}}}"),
            LatticeName::H => write!(f, "H"),
            LatticeName::Hscaled(c) => write!(f, "H({})", rational::format(c)),
            LatticeName::E8 => write!(f, "E8"),
            LatticeName::E10 => write!(f, "E10"),
            LatticeName::Dn(n) | LatticeName::Dpq(n, 0) => write!(f, "D{n}"),
            LatticeName::Dpq(p, q) => write!(f, "D{{{p},{q}}}"),
            LatticeName::L => write!(f, "L"),
            LatticeName::DirectSum(parts) => {
                let s: Vec<String> = parts
                    .iter()
                    .map(|p| match p {
                        LatticeName::DirectSum(_) => format!("({p})"),
                        _ => p.to_string(),
                    })
                    .collect();
                write!(f, "{}", s.join("+"))
            }
            LatticeName::Rescale(inner, c) => match **inner {
                LatticeName::DirectSum(_) => write!(f, "({inner})({})", rational::format(c)),
                _ => write!(f, "{inner}({})", rational::format(c)),
            },
        }
    }
}

impl std::str::FromStr for LatticeName {
    type Err = Error;

    /// Grammar: `sum := factor ('+' factor)*`, `factor := atom ('(' rational ')')*`,
    /// `atom := H | E8 | E10 | L | Dn | D{p,q} | Zn | Z{p,q} | '(' sum ')'`.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = NameParser {
            s: &chars,
            pos: 0,
            text: s,
        };
        let out = p.sum()?;
        if p.pos != chars.len() {
            return Err(p.fail());
        }
        Ok(out)
    }
}

struct NameParser<'a> {
    s: &'a [char],
    pos: usize,
    text: &'a str,
}

impl NameParser<'_> {
    fn fail(&self) -> Error {
        Error::InvalidName(format!("cannot parse lattice name {:?}", self.text))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let t: String = self.s[start..self.pos].iter().collect();
        t.parse().map_err(|_| self.fail())
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        let p = self.number()?;
        if !self.eat(',') {
            return Err(self.fail());
        }
        let q = self.number()?;
        if !self.eat('}') {
            return Err(self.fail());
        }
        Ok((p, q))
    }

    fn sum(&mut self) -> Result<LatticeName> {
        let mut parts = vec![self.factor()?];
        while self.eat('+') {
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            LatticeName::DirectSum(parts)
        })
    }

    fn factor(&mut self) -> Result<LatticeName> {
        let mut atom = self.atom()?;
        while self.eat('(') {
            let start = self.pos;
            while self.peek().is_some_and(|c| c != ')') {
                self.pos += 1;
            }
            let t: String = self.s[start..self.pos].iter().collect();
            if !self.eat(')') {
                return Err(self.fail());
            }
            let c = rational::parse(&t).map_err(|_| self.fail())?;
            atom = LatticeName::Rescale(Box::new(atom), c);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<LatticeName> {
        match self.peek().ok_or_else(|| self.fail())? {
            '(' => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.fail());
                }
                Ok(inner)
            }
            'H' => {
                self.pos += 1;
                Ok(LatticeName::H)
            }
            'L' => {
                self.pos += 1;
                Ok(LatticeName::L)
            }
            'E' => {
                self.pos += 1;
                match self.number()? {
                    8 => Ok(LatticeName::E8),
                    10 => Ok(LatticeName::E10),
                    _ => Err(self.fail()),
                }
            }
            c @ ('D' | 'Z') => {
                self.pos += 1;
                if self.eat('{') {
                    let (p, q) = self.pair()?;
                    Ok(if c == 'D' {
                        LatticeName::Dpq(p, q)
                    } else {
                        LatticeName::Zpq(p, q)
                    })
                } else {
                    let n = self.number()?;
                    Ok(if c == 'D' {
                        LatticeName::Dn(n)
                    } else {
                        LatticeName::Zpq(n, 0)
                    })
                }
            }
            _ => Err(self.fail()),
        }
    }
}

/// `true` when the Gram matrix is positive or negative definite.
pub fn is_definite(l: &Lattice) -> bool {
    let (p, n) = signature(l);
    p == 0 || n == 0
}

/// `|det|` as a rational.
pub fn abs_det(l: &Lattice) -> Rational {
    l.det().abs()
}

pub fn unimodular(l: &Lattice) -> bool {
    l.is_integral() && abs_det(l).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(s: &str) -> Lattice {
        make_named(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn named_examples() {
        assert_eq!(
            named("L").gram(),
            &Matrix::from_i64(&[
                [2, 0, 0, 0, 0, 0],
                [0, 2, 0, 0, 0, 0],
                [0, 0, -1, 0, 0, 0],
                [0, 0, 0, -1, 0, 0],
                [0, 0, 0, 0, -1, 0],
                [0, 0, 0, 0, 0, -1],
            ])
        );
        assert_eq!(named("H").gram(), &Matrix::from_i64(&[[0, 1], [1, 0]]));
        let l2 = named("L(2)");
        assert_eq!(
            l2.gram(),
            &Matrix::diagonal(&[int(4), int(4), int(-2), int(-2), int(-2), int(-2)])
        );
        assert!(make_named(&LatticeName::Dn(1)).is_err());
        assert_eq!(named("H(1/2)").gram().get(0, 1), &rational::frac(1, 2));
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&named("L")), (2, 4));
        assert_eq!(signature(&named("E8")), (8, 0));
        assert_eq!(signature(&named("Z{2,10}")), (2, 10));
        assert_eq!(signature(&named("H+H")), (2, 2));
        assert_eq!(signature(&named("E10")), (9, 1));
    }

    #[test]
    fn parities() {
        assert_eq!(parity(&named("D6")).unwrap(), Parity::Even);
        assert_eq!(parity(&named("Z{2,4}")).unwrap(), Parity::Odd);
        assert_eq!(parity(&named("D{2,4}")).unwrap(), Parity::Even);
        assert!(parity(&named("H(1/2)")).is_err());
    }

    #[test]
    fn e8_is_unimodular_and_d_dets() {
        assert_eq!(named("E8").det(), int(1));
        for n in 2..9 {
            assert_eq!(
                make_named(&LatticeName::Dn(n)).unwrap().det(),
                int(4),
                "D{n}"
            );
        }
    }

    #[test]
    fn names_round_trip_through_text() {
        for s in [
            "D6",
            "Z{2,10}",
            "D6(-1)+L",
            "H(1/2)+E10(-1)",
            "L(2)",
            "Z2+D{0,4}",
            "(H+H)(2)",
        ] {
            let n: LatticeName = s.parse().unwrap();
            assert_eq!(n.to_string(), s);
        }
        assert!("Q7".parse::<LatticeName>().is_err());
        assert!("D6(".parse::<LatticeName>().is_err());
    }
}
