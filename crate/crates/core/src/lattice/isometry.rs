//! Deciding isometry of small lattices, and membership tests for integral
//! isometries.
//!
//! Definite lattices are compared by brute force over short vectors.
//! Indefinite ones are compared only through rank, signature, parity and the
//! discriminant form, with `Undecidable` whenever that is out of reach.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::discriminant::discriminant_form;
use super::finite_form::{finite_form_isometric, Comparison, SEARCH_BOUND};
use super::lattice::{abs_det, is_definite, parity, signature, Lattice};
use crate::error::{Error, Result};
use crate::linalg::rational::{self, frac, int};
use crate::linalg::{IntMatrix, Matrix};

/// Largest rank and `|det|` for the definite brute force.
pub const DEFINITE_RANK_BOUND: usize = 6;
pub const DEFINITE_DET_BOUND: i64 = 64;
/// Cap on the short-vector box, so the search cannot run away.
const BOX_BOUND: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Isometry {
    /// Definite case: `rows[i]` is the image of the `i`-th basis vector of
    /// the first lattice, in coordinates of the second.
    Isometric {
        rows: Vec<Vec<i64>>,
    },
    /// Definite case, exhaustive search found nothing.
    NotIsometric,
    /// Indefinite case: same rank, signature, parity and discriminant form.
    IsometricByInvariants,
    DistinctInvariants {
        reason: String,
    },
    Undecidable {
        reason: String,
    },
}

impl Isometry {
    pub fn is_isometric(&self) -> bool {
        matches!(
            self,
            Isometry::Isometric { .. } | Isometry::IsometricByInvariants
        )
    }
}

/// Reduced Gram `[[a,b],[b,c]]` of a definite binary form: `|2b| <= a <= c`
/// and `b >= 0` (GL2(Z) equivalence). Negative definite forms are reduced
/// through their negatives.
pub fn gauss_reduce_binary(g: &Matrix) -> Result<Matrix> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let im = IntMatrix::from_rational(g)
        .map_err(|_| Error::NotIntegral("binary form must be integral".into()))?;
    let get = |i, j| im.get(i, j).clone();
    let (mut a, mut b, mut c) = (get(0, 0), get(0, 1), get(1, 1));
    let det = &a * &c - &b * &b;
    if !det.is_positive() {
        return Err(Error::Invalid("binary form is not definite".into()));
    }
    let sign = if a.is_negative() { -1 } else { 1 };
    if sign < 0 {
        a = -a;
        b = -b;
        c = -c;
    }
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        let two_b: BigInt = &b * 2;
        if two_b.abs() <= a {
            break;
        }
        // nearest integer to b/a
        let k = num_integer::Integer::div_floor(&(&two_b + &a), &(&a * 2));
        c = &c - &k * &b * 2 + &k * &k * &a;
        b = &b - &k * &a;
    }
    let b = b.abs();
    let s = num_bigint::BigInt::from(sign);
    let r = |x: num_bigint::BigInt| rational::from_bigint(x * &s);
    Matrix::from_rows(vec![vec![r(a), r(b.clone())], vec![r(b), r(c)]])
}

/// Decide whether `a` and `b` are isometric, within the supported scope.
pub fn is_isometric_small(a: &Lattice, b: &Lattice) -> Isometry {
    if !a.is_integral() || !b.is_integral() {
        return Isometry::Undecidable {
            reason: "non-integral input".into(),
        };
    }
    if a.rank() != b.rank() {
        return distinct(format!("ranks {} and {}", a.rank(), b.rank()));
    }
    let (sa, sb) = (signature(a), signature(b));
    if sa != sb {
        return distinct(format!("signatures {sa:?} and {sb:?}"));
    }
    let (pa, pb) = (parity(a).expect("integral"), parity(b).expect("integral"));
    if pa != pb {
        return distinct(format!("parities {pa:?} and {pb:?}"));
    }
    let (da, db) = (abs_det(a), abs_det(b));
    if da != db {
        return distinct(format!(
            "discriminants {} and {}",
            rational::format(&da),
            rational::format(&db)
        ));
    }
    if is_definite(a) {
        if a.rank() > DEFINITE_RANK_BOUND || da > int(DEFINITE_DET_BOUND) {
            return Isometry::Undecidable {
                reason: "definite lattice too large".into(),
            };
        }
        return definite_search(a, b);
    }
    if da > int(SEARCH_BOUND as i64) {
        return Isometry::Undecidable {
            reason: "discriminant group too large".into(),
        };
    }
    let (fa, fb) = match (discriminant_form(a), discriminant_form(b)) {
        (Ok(fa), Ok(fb)) => (fa, fb),
        _ => {
            return Isometry::Undecidable {
                reason: "discriminant form unavailable".into(),
            }
        }
    };
    let mode = if fa.form().is_even() && fb.form().is_even() {
        Comparison::Quadratic
    } else {
        Comparison::BilinearOnly
    };
    match finite_form_isometric(fa.form(), fb.form(), mode) {
        Ok(r) if r.is_isometric() => Isometry::IsometricByInvariants,
        Ok(_) => distinct("discriminant forms differ".into()),
        Err(e) => Isometry::Undecidable {
            reason: e.to_string(),
        },
    }
}

fn distinct(reason: String) -> Isometry {
    Isometry::DistinctInvariants { reason }
}

fn small_gram(l: &Lattice, sign: i64) -> Vec<Vec<i64>> {
    let n = l.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| sign * rational::to_i64(l.gram().get(i, j)).expect("small entry"))
                .collect()
        })
        .collect()
}

fn ipair(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            s += xi * g[i][j] * yj;
        }
    }
    s
}

/// All nonzero vectors of `b` with norm at most `bound` (positive definite).
fn short_vectors(b: &Lattice, g: &[Vec<i64>], bound: i64) -> Option<Vec<(i64, Vec<i64>)>> {
    let n = b.rank();
    let inv = b.gram().inverse().expect("nondegenerate");
    // |x_i|^2 <= N·|G^{-1}|_ii
    let radii: Vec<i64> = (0..n)
        .map(|i| {
            let r = rational::abs(&(inv.get(i, i) * int(bound)));
            r.floor().to_integer().to_i64().expect("small").sqrt()
        })
        .collect();
    let size: u64 = radii.iter().map(|r| (2 * r + 1) as u64).product();
    if size > BOX_BOUND {
        return None;
    }
    let mut out = Vec::new();
    let mut x: Vec<i64> = radii.iter().map(|r| -r).collect();
    loop {
        if x.iter().any(|&c| c != 0) {
            let nrm = ipair(g, &x, &x);
            if nrm <= bound {
                out.push((nrm, x.clone()));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Some(out);
            }
            if x[i] < radii[i] {
                x[i] += 1;
                break;
            }
            x[i] = -radii[i];
            i += 1;
        }
    }
}

fn definite_search(a: &Lattice, b: &Lattice) -> Isometry {
    let sign = if a.gram().get(0, 0).is_negative() {
        -1
    } else {
        1
    };
    let ga = small_gram(a, sign);
    let gb = small_gram(b, sign);
    let n = a.rank();
    let bound = (0..n).map(|i| ga[i][i]).max().unwrap_or(0);
    let Some(vecs) = short_vectors(b, &gb, bound) else {
        return Isometry::Undecidable {
            reason: "short-vector box too large".into(),
        };
    };
    let by_norm: Vec<Vec<&Vec<i64>>> = (0..n)
        .map(|i| {
            vecs.iter()
                .filter(|(nrm, _)| *nrm == ga[i][i])
                .map(|(_, v)| v)
                .collect()
        })
        .collect();
    let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(n);
    if extend(&ga, &gb, &by_norm, &mut chosen) {
        let t = IntMatrix::from_i64(&chosen);
        debug_assert!(t.det().map(|d| d.abs() == 1.into()).unwrap_or(false));
        Isometry::Isometric { rows: chosen }
    } else {
        Isometry::NotIsometric
    }
}

fn extend(
    ga: &[Vec<i64>],
    gb: &[Vec<i64>],
    cands: &[Vec<&Vec<i64>>],
    chosen: &mut Vec<Vec<i64>>,
) -> bool {
    let i = chosen.len();
    if i == ga.len() {
        return true;
    }
    for v in &cands[i] {
        if (0..i).all(|j| ipair(gb, &chosen[j], v) == ga[j][i]) {
            chosen.push((*v).clone());
            if extend(ga, gb, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn extend_all(
    g: &[Vec<i64>],
    cands: &[Vec<&Vec<i64>>],
    chosen: &mut Vec<Vec<i64>>,
    out: &mut Vec<IntMatrix>,
) {
    let i = chosen.len();
    if i == g.len() {
        // rows are images of basis vectors; store with images as columns
        out.push(IntMatrix::from_i64(chosen).transpose());
        return;
    }
    for v in &cands[i] {
        if (0..i).all(|j| ipair(g, &chosen[j], v) == g[j][i]) {
            chosen.push((*v).clone());
            extend_all(g, cands, chosen, out);
            chosen.pop();
        }
    }
}

/// Every isometry of a small definite lattice, as integral matrices whose
/// columns are the images of the basis vectors.
pub fn orthogonal_group_definite(l: &Lattice) -> Result<Vec<IntMatrix>> {
    if !l.is_integral() {
        return Err(Error::NotIntegral("gram matrix".into()));
    }
    if !is_definite(l) {
        return Err(Error::Invalid("lattice is not definite".into()));
    }
    if l.rank() > DEFINITE_RANK_BOUND || abs_det(l) > int(DEFINITE_DET_BOUND) {
        return Err(Error::TooLarge {
            order: l.rank() as u64,
            bound: DEFINITE_RANK_BOUND as u64,
        });
    }
    let sign = if l.gram().get(0, 0).is_negative() {
        -1
    } else {
        1
    };
    let g = small_gram(l, sign);
    let n = l.rank();
    let bound = (0..n).map(|i| g[i][i]).max().unwrap_or(0);
    let vecs = short_vectors(l, &g, bound).ok_or(Error::TooLarge {
        order: BOX_BOUND + 1,
        bound: BOX_BOUND,
    })?;
    let by_norm: Vec<Vec<&Vec<i64>>> = (0..n)
        .map(|i| {
            vecs.iter()
                .filter(|(nrm, _)| *nrm == g[i][i])
                .map(|(_, v)| v)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    extend_all(&g, &by_norm, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

/// Whether `g` preserves the form: `gᵀ·G·g = G`, with `g` acting on
/// coordinate columns.
pub fn is_isometry(l: &Lattice, g: &IntMatrix) -> Result<bool> {
    let n = l.rank();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, lattice rank is {n}",
            g.rows(),
            g.cols()
        )));
    }
    let gq = g.to_rational();
    Ok(&(&gq.transpose() * l.gram()) * &gq == *l.gram())
}

/// `h ∈ GL2(Z)` with `a ≡ d` and `b ≡ c` mod 2.
pub fn gamma_member(h: &IntMatrix) -> Result<bool> {
    if h.rows() != 2 || h.cols() != 2 {
        return Err(Error::DimensionMismatch("expected a 2x2 matrix".into()));
    }
    let det = h.det()?;
    if det.abs() != 1.into() {
        return Ok(false);
    }
    let even = |x: num_bigint::BigInt| num_integer::Integer::is_even(&x);
    Ok(even(h.get(0, 0) - h.get(1, 1)) && even(h.get(0, 1) - h.get(1, 0)))
}

/// `M·Y·M/2` with `M = [[1,1],[1,−1]]`.
pub fn half_conjugate(y: &IntMatrix) -> Result<Matrix> {
    if y.rows() != 2 || y.cols() != 2 {
        return Err(Error::DimensionMismatch("expected a 2x2 matrix".into()));
    }
    let m = Matrix::from_i64(&[[1, 1], [1, -1]]);
    Ok((&(&m * &y.to_rational()) * &m).scale(&frac(1, 2)))
}

/// Gram matrix `[[0,0,I],[0,−2I,0],[I,0,I]]` (2x2 blocks) of a rank six
/// lattice adapted to an isotropic plane spanned by the first two vectors.
pub fn plane_adapted_gram() -> Lattice {
    let mut g = Matrix::zeros(6, 6);
    for i in 0..2 {
        g.set(i, 4 + i, int(1));
        g.set(4 + i, i, int(1));
        g.set(2 + i, 2 + i, int(-2));
        g.set(4 + i, 4 + i, int(1));
    }
    Lattice::new(g).expect("nondegenerate")
}

/// The block matrix `[[H,0,HN],[0,I,0],[0,0,H†]]` with `H† = H^{-T}` and
/// `N = (I − H†ᵀH†)/2`; `N` is integral exactly when `h` is in γ.
pub fn plane_stabilizer_element(h: &IntMatrix) -> Result<IntMatrix> {
    if !gamma_member(h)? {
        return Err(Error::Invalid("matrix is not in γ".into()));
    }
    let hq = h.to_rational();
    let hd = hq.inverse()?.transpose();
    let n = (&Matrix::identity(2) - &(&hd.transpose() * &hd)).scale(&frac(1, 2));
    let hn = &hq * &n;
    let mut g = Matrix::zeros(6, 6);
    for i in 0..2 {
        for j in 0..2 {
            g.set(i, j, hq.get(i, j).clone());
            g.set(i, 4 + j, hn.get(i, j).clone());
            g.set(4 + i, 4 + j, hd.get(i, j).clone());
        }
        g.set(2 + i, 2 + i, int(1));
    }
    IntMatrix::from_rational(&g).map_err(|_| Error::NotIntegral("stabilizer element".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice::{make_named, LatticeName};
    use proptest::prelude::*;

    fn named(s: &str) -> Lattice {
        make_named(&s.parse::<LatticeName>().unwrap()).unwrap()
    }

    #[test]
    fn scaled_planes_are_distinct() {
        let r = is_isometric_small(&named("Z2(-2)"), &named("Z2(-1)"));
        assert!(matches!(r, Isometry::DistinctInvariants { .. }), "{r:?}");
    }

    #[test]
    fn odd_and_even_certificates_are_distinct() {
        let r = is_isometric_small(&named("Z{1,1}+Z2(-2)"), &named("H+Z2(-2)"));
        assert!(matches!(r, Isometry::DistinctInvariants { .. }), "{r:?}");
    }

    #[test]
    fn definite_search_finds_a_witness() {
        let a = Lattice::from_i64(&[[2, 1], [1, 2]]).unwrap();
        let b = Lattice::from_i64(&[[2, -1], [-1, 2]]).unwrap();
        let Isometry::Isometric { rows } = is_isometric_small(&a, &b) else {
            panic!()
        };
        let t = Matrix::from_i64(&rows);
        assert_eq!(b.gram_of(&t), *a.gram());
    }

    #[test]
    fn definite_search_handles_a_changed_basis() {
        let a = Lattice::from_i64(&[[1, 0], [0, 1]]).unwrap();
        let b = Lattice::from_i64(&[[2, 1], [1, 1]]).unwrap();
        assert!(matches!(
            is_isometric_small(&a, &b),
            Isometry::Isometric { .. }
        ));
    }

    #[test]
    fn definite_search_separates_classes_with_equal_invariants() {
        let a = Lattice::diagonal(&[1, 15]).unwrap();
        let b = Lattice::diagonal(&[3, 5]).unwrap();
        assert_eq!(is_isometric_small(&a, &b), Isometry::NotIsometric);
        let r = is_isometric_small(&a.rescale(&int(-1)).unwrap(), &b.rescale(&int(-1)).unwrap());
        assert_eq!(r, Isometry::NotIsometric);
    }

    #[test]
    fn gauss_reduction_examples() {
        let g = Matrix::from_i64(&[[-4, -2], [-2, -4]]);
        let r = gauss_reduce_binary(&g).unwrap();
        assert_eq!(r, g);
        let g = Matrix::from_i64(&[[5, 7], [7, 10]]);
        assert_eq!(
            gauss_reduce_binary(&g).unwrap(),
            Matrix::from_i64(&[[1, 0], [0, 1]])
        );
        assert!(gauss_reduce_binary(&Matrix::from_i64(&[[0, 1], [1, 0]])).is_err());
    }

    #[test]
    fn plus_minus_identity_are_isometries() {
        let l = named("L");
        assert!(is_isometry(&l, &IntMatrix::identity(6)).unwrap());
        let mut m = IntMatrix::identity(6);
        for i in 0..6 {
            m.set(i, i, (-1).into());
        }
        assert!(is_isometry(&l, &m).unwrap());
        assert!(is_isometry(&l, &IntMatrix::identity(5)).is_err());
    }

    #[test]
    fn stabilizer_elements_preserve_the_form() {
        let l = plane_adapted_gram();
        for h in [[[1, 2], [0, 1]], [[3, 2], [4, 3]], [[0, 1], [1, 0]]] {
            let g = plane_stabilizer_element(&IntMatrix::from_i64(&h)).unwrap();
            assert!(is_isometry(&l, &g).unwrap(), "{h:?}");
        }
        assert!(plane_stabilizer_element(&IntMatrix::from_i64(&[[1, 1], [0, 1]])).is_err());
    }

    #[test]
    fn adapted_gram_matches_l() {
        assert_eq!(
            is_isometric_small(&plane_adapted_gram(), &named("L")),
            Isometry::IsometricByInvariants
        );
    }

    fn gl2() -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec((0usize..3, -3i64..4), 0..6).prop_map(|steps| {
            let mut m = Matrix::identity(2);
            for (kind, k) in steps {
                let e = match kind {
                    0 => Matrix::from_i64(&[[1, k], [0, 1]]),
                    1 => Matrix::from_i64(&[[1, 0], [k, 1]]),
                    _ => Matrix::from_i64(&[[0, 1], [1, 0]]),
                };
                m = &m * &e;
            }
            IntMatrix::from_rational(&m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn half_conjugate_is_integral_exactly_on_gamma(y in gl2()) {
            let x = half_conjugate(&y).unwrap();
            if gamma_member(&y).unwrap() {
                prop_assert!(x.is_integral());
                prop_assert!(gamma_member(&IntMatrix::from_rational(&x).unwrap()).unwrap());
            } else {
                prop_assert!(!x.is_integral());
            }
        }

        #[test]
        fn gauss_reduction_is_idempotent(a in 1i64..20, b in -20i64..20, c in 1i64..40, neg in any::<bool>()) {
            prop_assume!(a * c - b * b > 0);
            let s = if neg { -1 } else { 1 };
            let g = Matrix::from_i64(&[[s * a, s * b], [s * b, s * c]]);
            let r = gauss_reduce_binary(&g).unwrap();
            prop_assert_eq!(gauss_reduce_binary(&r).unwrap(), r.clone());
            prop_assert_eq!(r.det().unwrap(), g.det().unwrap());
            let (ra, rb, rc) = (r.get(0, 0).clone() * int(s), r.get(0, 1).clone() * int(s), r.get(1, 1).clone() * int(s));
            prop_assert!(rb.clone() * int(2) <= ra && ra <= rc && !rb.is_negative());
        }

        #[test]
        fn gauss_reduction_is_an_isometry_class(a in 1i64..12, b in -12i64..12, c in 1i64..20) {
            prop_assume!(a * c - b * b > 0 && a * c - b * b <= 64);
            let g = Lattice::from_i64(&[[a, b], [b, c]]).unwrap();
            let r = Lattice::new(gauss_reduce_binary(g.gram()).unwrap()).unwrap();
            let iso = matches!(is_isometric_small(&g, &r), Isometry::Isometric { .. });
            prop_assert!(iso);
        }
    }
}
