//! Finite quadratic forms: a finite abelian group `⊕ Z/d_i` with a `Q/Z`
//! valued bilinear form and, optionally, a `Q/2Z` valued quadratic
//! refinement.
//!
//! Group elements are coordinate vectors `x` with `0 <= x_i < d_i`. All the
//! searches below work on an integer table scaled by the exponent `e` of the
//! group, so that `b(x, y)·e` is an integer mod `e` and `q(x)·e` an integer
//! mod `2e`.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::rational::{self, int, Rational};
use crate::linalg::Matrix;

/// Largest group handled by the exhaustive searches.
pub const SEARCH_BOUND: u64 = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteForm {
    orders: Vec<u64>,
    bilinear: Matrix,
    quadratic: Option<Vec<Rational>>,
}

/// What an isometry has to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    BilinearOnly,
    Quadratic,
}

/// Why two forms are not isometric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Obstruction {
    /// The underlying groups differ.
    GroupStructure { left: Vec<u64>, right: Vec<u64> },
    /// Some value (element order, `b(x,x)`, `q(x)`) occurs a different number of times.
    ValueCounts,
    /// The backtracking search over generator images found nothing.
    SearchExhausted { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsometryResult {
    /// `images[i]` is the image of the `i`-th generator.
    Isometric {
        images: Vec<Vec<i64>>,
    },
    NotIsometric(Obstruction),
}

impl IsometryResult {
    pub fn is_isometric(&self) -> bool {
        matches!(self, IsometryResult::Isometric { .. })
    }
}

impl FiniteForm {
    /// Checks the shape and reduces values into `[0,1)` and `[0,2)`.
    pub fn new(
        orders: Vec<u64>,
        bilinear: Matrix,
        quadratic: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let k = orders.len();
        if bilinear.rows() != k || bilinear.cols() != k {
            return Err(Error::DimensionMismatch("bilinear matrix size".into()));
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::Invalid(
                "cyclic factor orders must be at least 2".into(),
            ));
        }
        if orders.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(
                "orders must divide each other in sequence".into(),
            ));
        }
        if !bilinear.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let one = int(1);
        let two = int(2);
        let mut b = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let v = rational::modulo(bilinear.get(i, j), &one);
                let g = int(orders[i].gcd(&orders[j]) as i64);
                if !rational::is_integer(&(&v * &g)) {
                    return Err(Error::Invalid(format!(
                        "b({i},{j}) is not defined on the group"
                    )));
                }
                b.set(i, j, v);
            }
        }
        let quadratic = match quadratic {
            None => None,
            Some(q) => {
                if q.len() != k {
                    return Err(Error::DimensionMismatch("quadratic values".into()));
                }
                let mut out = Vec::with_capacity(k);
                for (i, v) in q.iter().enumerate() {
                    let v = rational::modulo(v, &two);
                    if rational::modulo(&(&v - b.get(i, i)), &one) != Rational::zero() {
                        return Err(Error::Invalid(format!("q({i}) does not refine b({i},{i})")));
                    }
                    let d = int(orders[i] as i64);
                    if !rational::modulo(&(&v * &d * &d), &two).is_zero() {
                        return Err(Error::Invalid(format!(
                            "q({i}) is not defined on the group"
                        )));
                    }
                    out.push(v);
                }
                Some(out)
            }
        };
        Ok(FiniteForm {
            orders,
            bilinear: b,
            quadratic,
        })
    }

    pub fn trivial() -> Self {
        FiniteForm {
            orders: vec![],
            bilinear: Matrix::zeros(0, 0),
            quadratic: Some(vec![]),
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn bilinear(&self) -> &Matrix {
        &self.bilinear
    }

    pub fn quadratic(&self) -> Option<&[Rational]> {
        self.quadratic.as_deref()
    }

    pub fn is_even(&self) -> bool {
        self.quadratic.is_some()
    }

    /// The same group and bilinear form, without quadratic values.
    pub fn bilinear_part(&self) -> FiniteForm {
        FiniteForm {
            quadratic: None,
            ..self.clone()
        }
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.last().copied().unwrap_or(1)
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        let n = self.order() as usize;
        (0..n).map(|i| self.element_at(i)).collect()
    }

    /// Mixed-radix decoding, first coordinate fastest.
    pub fn element_at(&self, mut idx: usize) -> Vec<i64> {
        self.orders
            .iter()
            .map(|&d| {
                let c = idx % d as usize;
                idx /= d as usize;
                c as i64
            })
            .collect()
    }

    pub fn index_of(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for (c, &d) in x.iter().zip(&self.orders) {
            idx += c.rem_euclid(d as i64) as usize * scale;
            scale *= d as usize;
        }
        idx
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(c, &d)| c.rem_euclid(d as i64))
            .collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn multiple(&self, k: i64, x: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().map(|a| a * k).collect();
        self.reduce(&s)
    }

    pub fn element_order(&self, x: &[i64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .map(|(&c, &d)| d / (c.rem_euclid(d as i64) as u64).gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    s += self.bilinear.get(i, j) * int(xi * yj);
                }
            }
        }
        rational::modulo(&s, &int(1))
    }

    /// `q(x)` in `[0, 2)`, when the form is even.
    pub fn q(&self, x: &[i64]) -> Option<Rational> {
        let q = self.quadratic.as_ref()?;
        let mut s = Rational::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            s += &q[i] * int(xi * xi);
            for (j, &xj) in x.iter().enumerate().skip(i + 1) {
                if xj != 0 {
                    s += self.bilinear.get(i, j) * int(2 * xi * xj);
                }
            }
        }
        Some(rational::modulo(&s, &int(2)))
    }

    /// Matrix of `b` on the given elements.
    pub fn gram_on(&self, elements: &[Vec<i64>]) -> Matrix {
        let mut m = Matrix::zeros(elements.len(), elements.len());
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                m.set(i, j, self.b(x, y));
            }
        }
        m
    }

    /// All elements of the subgroup generated by `gens`, sorted by index.
    pub fn span(&self, gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let t = Table::new(self);
        let idx: Vec<usize> = gens.iter().map(|g| self.index_of(g)).collect();
        let mut set = t.span(&idx);
        set.sort_unstable();
        set.into_iter().map(|i| t.coords[i].clone()).collect()
    }

    /// All subgroups on which `b` (and `q`, for [`Comparison::Quadratic`])
    /// vanishes identically, the trivial subgroup included. Each subgroup is
    /// returned as its sorted list of elements; the list is sorted by size
    /// and then lexicographically by element index.
    pub fn isotropic_subgroups(&self, mode: Comparison) -> Result<Vec<Vec<Vec<i64>>>> {
        self.check_bound()?;
        if mode == Comparison::Quadratic && !self.is_even() {
            return Err(Error::MissingQuadratic);
        }
        let t = Table::new(self);
        let candidates: Vec<usize> = (1..t.size)
            .filter(|&x| t.b(x, x) == 0 && (mode == Comparison::BilinearOnly || t.q(x) == Some(0)))
            .collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let start = vec![0usize];
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for &x in &candidates {
                if s.binary_search(&x).is_ok() || s.iter().any(|&y| t.b(x, y) != 0) {
                    continue;
                }
                let mut next = t.extend(&s, x);
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = seen.into_iter().collect();
        groups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(groups
            .into_iter()
            .map(|g| g.into_iter().map(|i| t.coords[i].clone()).collect())
            .collect())
    }

    fn check_bound(&self) -> Result<()> {
        let order = self.order();
        if order > SEARCH_BOUND {
            return Err(Error::TooLarge {
                order,
                bound: SEARCH_BOUND,
            });
        }
        Ok(())
    }

    /// Histogram of `(order, b(x,x), q(x))` over the group.
    fn value_counts(&self, mode: Comparison) -> BTreeMap<(u64, i64, i64), usize> {
        let t = Table::new(self);
        let mut h = BTreeMap::new();
        for x in 0..t.size {
            let q = match mode {
                Comparison::Quadratic => t.q(x).unwrap_or(-1),
                Comparison::BilinearOnly => -1,
            };
            *h.entry((t.order[x], t.b(x, x), q)).or_insert(0) += 1;
        }
        h
    }

    /// Image of `x` under the homomorphism sending generator `i` to `images[i]`.
    pub fn apply(&self, target: &FiniteForm, images: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
        let mut acc = vec![0i64; target.orders.len()];
        for (c, img) in x.iter().zip(images) {
            for (a, y) in acc.iter_mut().zip(img) {
                *a += c * y;
            }
        }
        target.reduce(&acc)
    }
}

/// Integer lookup tables for a form of exponent `e`.
struct Table {
    size: usize,
    coords: Vec<Vec<i64>>,
    order: Vec<u64>,
    orders: Vec<u64>,
    e: i64,
    bn: Vec<Vec<i64>>,
    qn: Option<Vec<i64>>,
}

impl Table {
    fn new(f: &FiniteForm) -> Self {
        let e = f.exponent() as i64;
        let er = int(e);
        let k = f.orders.len();
        let bn = (0..k)
            .map(|i| (0..k).map(|j| scaled(f.bilinear.get(i, j), &er)).collect())
            .collect();
        let qn = f
            .quadratic
            .as_ref()
            .map(|q| q.iter().map(|v| scaled(v, &er)).collect());
        let coords = f.elements();
        let order = coords.iter().map(|x| f.element_order(x)).collect();
        Table {
            size: coords.len(),
            coords,
            order,
            orders: f.orders.clone(),
            e,
            bn,
            qn,
        }
    }

    fn b(&self, x: usize, y: usize) -> i64 {
        let (cx, cy) = (&self.coords[x], &self.coords[y]);
        let mut s = 0i64;
        for (i, &a) in cx.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &c) in cy.iter().enumerate() {
                s += a * c * self.bn[i][j];
            }
        }
        s.rem_euclid(self.e)
    }

    fn q(&self, x: usize) -> Option<i64> {
        let qn = self.qn.as_ref()?;
        let cx = &self.coords[x];
        let mut s = 0i64;
        for (i, &a) in cx.iter().enumerate() {
            if a == 0 {
                continue;
            }
            s += a * a * qn[i];
            for (j, &c) in cx.iter().enumerate().skip(i + 1) {
                s += 2 * a * c * self.bn[i][j];
            }
        }
        Some(s.rem_euclid(2 * self.e))
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for ((a, b), &d) in self.coords[x].iter().zip(&self.coords[y]).zip(&self.orders) {
            idx += ((a + b) % d as i64) as usize * scale;
            scale *= d as usize;
        }
        idx
    }

    /// `s + <x>` for a subgroup `s` given as a list of indices.
    fn extend(&self, s: &[usize], x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for &y in s {
            seen[y] = true;
            out.push(y);
        }
        let mut frontier: Vec<usize> = s.to_vec();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &y in &frontier {
                let z = self.add(y, x);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                    next.push(z);
                }
            }
            frontier = next;
        }
        out
    }

    fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut s = vec![0usize];
        for &g in gens {
            if !s.contains(&g) {
                s = self.extend(&s, g);
            }
        }
        s
    }
}

fn scaled(v: &Rational, e: &Rational) -> i64 {
    let s = v * e;
    debug_assert!(rational::is_integer(&s));
    s.to_integer().to_i64().expect("small value")
}

struct Search<'a> {
    a: &'a Table,
    b: &'a Table,
    candidates: Vec<Vec<usize>>,
    images: Vec<usize>,
    found: Vec<Vec<usize>>,
    want_all: bool,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, i: usize, span: &[usize]) {
        if !self.want_all && !self.found.is_empty() {
            return;
        }
        self.nodes += 1;
        let k = self.candidates.len();
        if i == k {
            if span.len() == self.b.size {
                self.found.push(self.images.clone());
            }
            return;
        }
        let gen_order = self.a.orders[i];
        let candidates = self.candidates[i].clone();
        for y in candidates {
            if (0..i).any(|j| self.b.b(y, self.images[j]) != self.a.bn[i][j].rem_euclid(self.a.e)) {
                continue;
            }
            // <y> must meet the span so far trivially.
            let mut in_span = vec![false; self.b.size];
            for &s in span {
                in_span[s] = true;
            }
            let mut m = y;
            let mut independent = true;
            for _ in 1..gen_order {
                if in_span[m] {
                    independent = false;
                    break;
                }
                m = self.b.add(m, y);
            }
            if !independent {
                continue;
            }
            let next = self.b.extend(span, y);
            self.images.push(y);
            self.run(i + 1, &next);
            self.images.pop();
            if !self.want_all && !self.found.is_empty() {
                return;
            }
        }
    }
}

fn search(
    a: &FiniteForm,
    b: &FiniteForm,
    mode: Comparison,
    want_all: bool,
) -> Result<(Vec<Vec<Vec<i64>>>, u64)> {
    a.check_bound()?;
    b.check_bound()?;
    if mode == Comparison::Quadratic && (!a.is_even() || !b.is_even()) {
        return Err(Error::MissingQuadratic);
    }
    let ta = Table::new(a);
    let tb = Table::new(b);
    let k = a.orders.len();
    let candidates = (0..k)
        .map(|i| {
            let gi = {
                let mut x = vec![0i64; k];
                x[i] = 1;
                a.index_of(&x)
            };
            (0..tb.size)
                .filter(|&y| {
                    tb.order[y] == a.orders[i]
                        && tb.b(y, y) == ta.b(gi, gi)
                        && (mode == Comparison::BilinearOnly || tb.q(y) == ta.q(gi))
                })
                .collect()
        })
        .collect();
    let mut s = Search {
        a: &ta,
        b: &tb,
        candidates,
        images: vec![],
        found: vec![],
        want_all,
        nodes: 0,
    };
    s.run(0, &[0]);
    let found = s
        .found
        .iter()
        .map(|imgs| imgs.iter().map(|&y| tb.coords[y].clone()).collect())
        .collect();
    Ok((found, s.nodes))
}

/// Decides whether two finite forms are isometric by backtracking over the
/// images of the generators of `a`. Both groups must have order at most
/// [`SEARCH_BOUND`].
pub fn finite_form_isometric(
    a: &FiniteForm,
    b: &FiniteForm,
    mode: Comparison,
) -> Result<IsometryResult> {
    a.check_bound()?;
    b.check_bound()?;
    if mode == Comparison::Quadratic && (!a.is_even() || !b.is_even()) {
        return Err(Error::MissingQuadratic);
    }
    if a.orders != b.orders {
        return Ok(IsometryResult::NotIsometric(Obstruction::GroupStructure {
            left: a.orders.clone(),
            right: b.orders.clone(),
        }));
    }
    if a.value_counts(mode) != b.value_counts(mode) {
        return Ok(IsometryResult::NotIsometric(Obstruction::ValueCounts));
    }
    let (found, nodes) = search(a, b, mode, false)?;
    Ok(match found.into_iter().next() {
        Some(images) => IsometryResult::Isometric { images },
        None => IsometryResult::NotIsometric(Obstruction::SearchExhausted { nodes }),
    })
}

/// Every automorphism of the form, as generator images.
pub fn automorphisms(f: &FiniteForm, mode: Comparison) -> Result<Vec<Vec<Vec<i64>>>> {
    Ok(search(f, f, mode, true)?.0)
}

/// Checks a claimed isometry on every element and every pair of elements.
pub fn verify_isometry(
    a: &FiniteForm,
    b: &FiniteForm,
    images: &[Vec<i64>],
    mode: Comparison,
) -> bool {
    if a.order() != b.order() || images.len() != a.orders.len() {
        return false;
    }
    let ta = Table::new(a);
    let tb = Table::new(b);
    // Generator images must respect the relations d_i·g_i = 0.
    if images
        .iter()
        .zip(&a.orders)
        .any(|(y, &d)| d % b.element_order(y) != 0)
    {
        return false;
    }
    let map: Vec<usize> = ta
        .coords
        .iter()
        .map(|x| b.index_of(&a.apply(b, images, x)))
        .collect();
    let mut hit = vec![false; tb.size];
    for &y in &map {
        if hit[y] {
            return false;
        }
        hit[y] = true;
    }
    if ta.e != tb.e {
        return false;
    }
    for x in 0..ta.size {
        if mode == Comparison::Quadratic && ta.q(x) != tb.q(map[x]) {
            return false;
        }
        for y in 0..ta.size {
            if ta.b(x, y) != tb.b(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

#[derive(Serialize, Deserialize)]
struct FiniteFormJson {
    orders: Vec<u64>,
    bilinear: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quadratic: Option<Vec<String>>,
}

impl Serialize for FiniteForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FiniteFormJson {
            orders: self.orders.clone(),
            bilinear: self
                .bilinear
                .to_rows()
                .iter()
                .map(|r| r.iter().map(rational::format).collect())
                .collect(),
            quadratic: self
                .quadratic
                .as_ref()
                .map(|q| q.iter().map(rational::format).collect()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FiniteFormJson::deserialize(d)?;
        let parse_row = |r: &Vec<String>| {
            r.iter()
                .map(|s| rational::parse(s))
                .collect::<Result<Vec<_>>>()
        };
        let rows = j
            .bilinear
            .iter()
            .map(parse_row)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let bilinear = if rows.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows).map_err(D::Error::custom)?
        };
        let quadratic = j
            .quadratic
            .as_ref()
            .map(parse_row)
            .transpose()
            .map_err(D::Error::custom)?;
        FiniteForm::new(j.orders, bilinear, quadratic).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::frac;

    fn z2_form(b: [[i64; 2]; 2], q: Option<[i64; 2]>) -> FiniteForm {
        let m = Matrix::from_rows(
            b.iter()
                .map(|r| r.iter().map(|&x| frac(x, 2)).collect())
                .collect(),
        )
        .unwrap();
        FiniteForm::new(
            vec![2, 2],
            m,
            q.map(|q| q.iter().map(|&x| frac(x, 2)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn hyperbolic_and_diagonal_halves_differ() {
        let hyp = z2_form([[0, 1], [1, 0]], None);
        let diag = z2_form([[1, 0], [0, 1]], None);
        let other = z2_form([[0, 1], [1, 1]], None);
        assert!(
            !finite_form_isometric(&hyp, &diag, Comparison::BilinearOnly)
                .unwrap()
                .is_isometric()
        );
        match finite_form_isometric(&diag, &other, Comparison::BilinearOnly).unwrap() {
            IsometryResult::Isometric { images } => {
                assert!(verify_isometry(
                    &diag,
                    &other,
                    &images,
                    Comparison::BilinearOnly
                ))
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn quadratic_values_separate_forms() {
        // u: q = (0, 0), v: q = (1, 1) share the bilinear form [[0,1/2],[1/2,0]].
        let u = z2_form([[0, 1], [1, 0]], Some([0, 0]));
        let v = z2_form([[0, 1], [1, 0]], Some([2, 2]));
        assert!(finite_form_isometric(&u, &v, Comparison::BilinearOnly)
            .unwrap()
            .is_isometric());
        assert!(!finite_form_isometric(&u, &v, Comparison::Quadratic)
            .unwrap()
            .is_isometric());
        assert_eq!(automorphisms(&u, Comparison::Quadratic).unwrap().len(), 2);
        assert_eq!(automorphisms(&v, Comparison::Quadratic).unwrap().len(), 6);
    }

    #[test]
    fn validation() {
        assert!(FiniteForm::new(vec![4, 2], Matrix::zeros(2, 2), None).is_err());
        let m = Matrix::diagonal(&[frac(1, 3)]);
        assert!(FiniteForm::new(vec![2], m, None).is_err());
        let m = Matrix::diagonal(&[frac(1, 2)]);
        assert!(FiniteForm::new(vec![2], m.clone(), Some(vec![int(0)])).is_err());
        assert!(FiniteForm::new(vec![2], m, Some(vec![frac(3, 2)])).is_ok());
    }

    #[test]
    fn isotropic_subgroups_of_hyperbolic_plane_over_z2() {
        let u = z2_form([[0, 1], [1, 0]], Some([0, 0]));
        let subs = u.isotropic_subgroups(Comparison::Quadratic).unwrap();
        // trivial, <e>, <f>
        assert_eq!(subs.len(), 3);
        let subs = u.isotropic_subgroups(Comparison::BilinearOnly).unwrap();
        // the bilinear form is alternating, so <e+f> joins in
        assert_eq!(subs.len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let u = z2_form([[0, 1], [1, 1]], Some([0, 3]));
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(
            s,
            r#"{"orders":[2,2],"bilinear":[["0","1/2"],["1/2","1/2"]],"quadratic":["0","3/2"]}"#
        );
        let back: FiniteForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
    }
}
