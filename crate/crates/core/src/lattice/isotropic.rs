//! Primitive isotropic vectors and planes of `L = Z^2(2) ⊕ Z^4(-1)`.
//!
//! A vector `ℓ` is even when all pairings `<ℓ, x>` are even. Odd vectors
//! split according to the parity of `ℓ^⊥/ℓ`. A rank two isotropic
//! sublattice is even when it contains an even primitive vector.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::isometry::{is_isometric_small, Isometry};
use super::lattice::{make_named, parity, Lattice, LatticeName, Parity};
use super::sublattice::{orthogonal_complement, Sublattice};
use crate::error::{Error, Result};
use crate::linalg::{snf, IntMatrix, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IsotropicKind {
    EvenVector,
    OddType1Vector,
    OddType2Vector,
    OddPlane,
    EvenPlane,
}

impl IsotropicKind {
    pub const ALL: [IsotropicKind; 5] = [
        IsotropicKind::EvenVector,
        IsotropicKind::OddType1Vector,
        IsotropicKind::OddType2Vector,
        IsotropicKind::OddPlane,
        IsotropicKind::EvenPlane,
    ];

    /// The quotient `ℓ^⊥/ℓ` or `λ^⊥/λ` listed for this kind.
    pub fn expected_quotient(self) -> LatticeName {
        let s = match self {
            IsotropicKind::EvenVector => "Z{1,3}",
            IsotropicKind::OddType1Vector => "Z{1,1}+Z2(-2)",
            IsotropicKind::OddType2Vector => "H+Z2(-2)",
            IsotropicKind::OddPlane => "Z2(-2)",
            IsotropicKind::EvenPlane => "Z2(-1)",
        };
        s.parse().expect("fixed name")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsotropicClass {
    pub kind: IsotropicKind,
    /// Gram matrix of the quotient lattice.
    pub certificate: Matrix,
}

impl IsotropicClass {
    /// Compare the certificate with the listed quotient for its kind.
    pub fn check_certificate(&self) -> Isometry {
        let want = make_named(&self.kind.expected_quotient()).expect("fixed name");
        match Lattice::new(self.certificate.clone()) {
            Ok(c) => is_isometric_small(&c, &want),
            Err(e) => Isometry::Undecidable {
                reason: e.to_string(),
            },
        }
    }
}

pub fn l_lattice() -> Lattice {
    make_named(&LatticeName::L).expect("fixed name")
}

fn check_gram(l: &Lattice) -> Result<Vec<Vec<i64>>> {
    let g = l.integer_gram()?;
    let n = l.rank();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::try_from(g.get(i, j)).expect("small gram"))
                .collect()
        })
        .collect())
}

fn pairings(g: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    g.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Gram of `s^⊥/s` for a primitive totally isotropic `s`, computed by
/// completing the coordinates of `s` inside `s^⊥` to a basis.
fn quotient_gram(s: &Sublattice) -> Result<Matrix> {
    let perp = orthogonal_complement(s)?;
    let pb = perp.basis().to_rational();
    let coords = pb
        .coordinates_of(&s.basis().to_rational())
        .ok_or(Error::NotContained)?;
    let c = IntMatrix::from_rational(&coords)?;
    let (_, _, v) = snf(&c);
    let vinv = IntMatrix::from_rational(&v.to_rational().inverse()?)?;
    let rest: Vec<usize> = (s.rank()..perp.rank()).collect();
    let q = &vinv.select_rows(&rest).to_rational() * &pb;
    Ok(s.ambient().gram_of(&q))
}

/// Classify a primitive isotropic vector of `l` (normally [`l_lattice`]).
pub fn classify_isotropic_vector(l: &Lattice, v: &[i64]) -> Result<IsotropicClass> {
    let g = check_gram(l)?;
    if v.len() != l.rank() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {}",
            v.len()
        )));
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroInput);
    }
    if gcd_all(v) != 1 {
        return Err(Error::NotPrimitive);
    }
    let p = pairings(&g, v);
    if dot(&p, v) != 0 {
        return Err(Error::NotIsotropic);
    }
    let s = Sublattice::from_i64(l.clone(), &[v])?;
    let certificate = quotient_gram(&s)?;
    let kind = match gcd_all(&p) {
        2 => IsotropicKind::EvenVector,
        1 => match parity(&Lattice::new(certificate.clone())?)? {
            Parity::Odd => IsotropicKind::OddType1Vector,
            Parity::Even => IsotropicKind::OddType2Vector,
        },
        d => return Err(Error::Invalid(format!("pairings have gcd {d}"))),
    };
    Ok(IsotropicClass { kind, certificate })
}

/// Even iff one of `u`, `w`, `u+w` pairs evenly with everything; these
/// represent every primitive vector of the plane mod 2.
fn plane_is_even(g: &[Vec<i64>], u: &[i64], w: &[i64]) -> bool {
    let sum: Vec<i64> = u.iter().zip(w).map(|(a, b)| a + b).collect();
    [u, w, &sum[..]]
        .iter()
        .any(|x| pairings(g, x).iter().all(|p| p.rem_euclid(2) == 0))
}

/// Classify a primitive rank two totally isotropic sublattice of `l`.
pub fn classify_isotropic_plane(l: &Lattice, basis: &[Vec<i64>]) -> Result<IsotropicClass> {
    let g = check_gram(l)?;
    if basis.len() != 2 {
        return Err(Error::RankMismatch(basis.len(), 2));
    }
    if basis.iter().any(|r| r.len() != l.rank()) {
        return Err(Error::DimensionMismatch(
            "basis rows have the wrong length".into(),
        ));
    }
    let s = Sublattice::from_i64(l.clone(), basis)?;
    if !s.induced_gram().is_zero() {
        return Err(Error::NotIsotropic);
    }
    if !s.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let certificate = quotient_gram(&s)?;
    let kind = if plane_is_even(&g, &basis[0], &basis[1]) {
        IsotropicKind::EvenPlane
    } else {
        IsotropicKind::OddPlane
    };
    Ok(IsotropicClass { kind, certificate })
}

/// Primitive isotropic vectors of `l` with all coordinates in
/// `[-height, height]`, one per `±` pair (first nonzero coordinate positive).
pub fn primitive_isotropic_vectors(l: &Lattice, height: i64) -> Result<Vec<Vec<i64>>> {
    let g = check_gram(l)?;
    let n = l.rank();
    let mut out = Vec::new();
    let mut x = vec![-height; n];
    loop {
        let lead = x.iter().find(|&&c| c != 0);
        if matches!(lead, Some(&c) if c > 0) && gcd_all(&x) == 1 && dot(&pairings(&g, &x), &x) == 0
        {
            out.push(x.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < height {
                x[i] += 1;
                break;
            }
            x[i] = -height;
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VectorCensus {
    pub total: usize,
    pub counts: BTreeMap<IsotropicKind, usize>,
    /// One representative per kind, the first one met.
    pub representatives: BTreeMap<IsotropicKind, Vec<i64>>,
    /// Vectors whose certificate did not match the listed quotient.
    pub mismatches: usize,
    pub unclassified: usize,
}

pub fn vector_census(l: &Lattice, height: i64) -> Result<VectorCensus> {
    let mut c = VectorCensus::default();
    // The certificate check is the expensive part; it depends only on the
    // kind and the invariants of the quotient, so each distinct quotient
    // Gram is compared once.
    let mut seen: BTreeMap<(IsotropicKind, String), bool> = BTreeMap::new();
    for v in primitive_isotropic_vectors(l, height)? {
        c.total += 1;
        match classify_isotropic_vector(l, &v) {
            Ok(cls) => {
                *c.counts.entry(cls.kind).or_default() += 1;
                c.representatives
                    .entry(cls.kind)
                    .or_insert_with(|| v.clone());
                let key = (cls.kind, format!("{:?}", cls.certificate));
                let ok = *seen
                    .entry(key)
                    .or_insert_with(|| cls.check_certificate().is_isometric());
                if !ok {
                    c.mismatches += 1;
                }
            }
            Err(_) => c.unclassified += 1,
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PlaneCensus {
    /// Unordered orthogonal pairs of distinct vectors from the vector census.
    pub orthogonal_pairs: usize,
    /// Pairs spanning a primitive plane.
    pub primitive_pairs: usize,
    pub counts: BTreeMap<IsotropicKind, usize>,
    pub representatives: BTreeMap<IsotropicKind, [Vec<i64>; 2]>,
    /// Pairs run through the full classifier.
    pub fully_classified: usize,
    /// Full classifications disagreeing with the mod 2 test or the listed quotient.
    pub mismatches: usize,
}

/// Census of planes spanned by pairs of height-bounded vectors. Every
/// primitive pair is sorted by the mod 2 evenness test; every `stride`-th
/// one, and the first of each kind, also goes through the full classifier.
pub fn plane_census(l: &Lattice, height: i64, stride: usize) -> Result<PlaneCensus> {
    let g = check_gram(l)?;
    let vs = primitive_isotropic_vectors(l, height)?;
    let gv: Vec<Vec<i64>> = vs.iter().map(|v| pairings(&g, v)).collect();
    let mut c = PlaneCensus::default();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if dot(&gv[i], &vs[j]) != 0 {
                continue;
            }
            c.orthogonal_pairs += 1;
            if !span_is_primitive(&vs[i], &vs[j]) {
                continue;
            }
            let kind = if plane_is_even(&g, &vs[i], &vs[j]) {
                IsotropicKind::EvenPlane
            } else {
                IsotropicKind::OddPlane
            };
            let first = !c.counts.contains_key(&kind);
            if first || c.primitive_pairs % stride.max(1) == 0 {
                c.fully_classified += 1;
                let cls = classify_isotropic_plane(l, &[vs[i].clone(), vs[j].clone()])?;
                if cls.kind != kind || !cls.check_certificate().is_isometric() {
                    c.mismatches += 1;
                }
            }
            if first {
                c.representatives
                    .insert(kind, [vs[i].clone(), vs[j].clone()]);
            }
            *c.counts.entry(kind).or_default() += 1;
            c.primitive_pairs += 1;
        }
    }
    Ok(c)
}

/// gcd of the 2x2 minors is one.
fn span_is_primitive(u: &[i64], w: &[i64]) -> bool {
    let mut g = 0i64;
    for a in 0..u.len() {
        for b in a + 1..u.len() {
            g = g.gcd(&(u[a] * w[b] - u[b] * w[a]));
            if g == 1 {
                return true;
            }
        }
    }
    g.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn even_vector_example() {
        let c = classify_isotropic_vector(&l_lattice(), &[1, 1, 2, 0, 0, 0]).unwrap();
        assert_eq!(c.kind, IsotropicKind::EvenVector);
        assert_eq!(c.check_certificate(), Isometry::IsometricByInvariants);
    }

    #[test]
    fn odd_vector_type_follows_quotient_parity() {
        let c = classify_isotropic_vector(&l_lattice(), &[1, 0, 1, 1, 0, 0]).unwrap();
        let q = Lattice::new(c.certificate.clone()).unwrap();
        let want = match parity(&q).unwrap() {
            Parity::Odd => IsotropicKind::OddType1Vector,
            Parity::Even => IsotropicKind::OddType2Vector,
        };
        assert_eq!(c.kind, want);
        assert!(c.check_certificate().is_isometric());
    }

    #[test]
    fn bad_vectors_are_rejected() {
        let l = l_lattice();
        assert!(matches!(
            classify_isotropic_vector(&l, &[2, 2, 4, 0, 0, 0]),
            Err(Error::NotPrimitive)
        ));
        assert!(matches!(
            classify_isotropic_vector(&l, &[0; 6]),
            Err(Error::ZeroInput)
        ));
        assert!(matches!(
            classify_isotropic_vector(&l, &[1, 0, 0, 0, 0, 0]),
            Err(Error::NotIsotropic)
        ));
    }

    #[test]
    fn plane_examples() {
        let l = l_lattice();
        let odd = classify_isotropic_plane(&l, &[vec![1, 0, 1, 1, 0, 0], vec![0, 1, 0, 0, 1, 1]])
            .unwrap();
        assert_eq!(odd.kind, IsotropicKind::OddPlane);
        assert!(odd.check_certificate().is_isometric());
        let even = classify_isotropic_plane(&l, &[vec![1, 1, 2, 0, 0, 0], vec![1, 0, 1, 1, 0, 0]])
            .unwrap();
        assert_eq!(even.kind, IsotropicKind::EvenPlane);
        assert!(even.check_certificate().is_isometric());
        assert!(classify_isotropic_plane(&l, &[vec![1, 1, 2, 0, 0, 0]]).is_err());
    }

    #[test]
    fn vector_enumeration_matches_a_naive_filter() {
        let l = l_lattice();
        let got = primitive_isotropic_vectors(&l, 2).unwrap();
        let mut naive = 0;
        for code in 0..5i64.pow(6) {
            let v: Vec<i64> = (0..6).map(|k| (code / 5i64.pow(k)) % 5 - 2).collect();
            let q = 2 * v[0] * v[0] + 2 * v[1] * v[1] - v[2..].iter().map(|x| x * x).sum::<i64>();
            if q == 0 && gcd_all(&v) == 1 {
                naive += 1;
            }
        }
        assert_eq!(got.len() * 2, naive);
    }

    #[test]
    fn small_census_has_three_and_two_classes() {
        let l = l_lattice();
        let v = vector_census(&l, 2).unwrap();
        assert_eq!(v.counts.len(), 3);
        assert_eq!((v.mismatches, v.unclassified), (0, 0));
        let p = plane_census(&l, 2, 1).unwrap();
        assert_eq!(p.counts.len(), 2);
        assert_eq!(p.mismatches, 0);
        assert_eq!(p.fully_classified, p.primitive_pairs);
    }

    fn isotropic_vector() -> impl Strategy<Value = Vec<i64>> {
        prop::sample::select(primitive_isotropic_vectors(&l_lattice(), 3).unwrap())
    }

    proptest! {
        #[test]
        fn odd_type_two_iff_negative_part_all_odd(v in isotropic_vector()) {
            let c = classify_isotropic_vector(&l_lattice(), &v).unwrap();
            let all_odd = v[2..].iter().all(|x| x.rem_euclid(2) == 1);
            prop_assert_eq!(c.kind == IsotropicKind::OddType2Vector, all_odd);
            let q = Lattice::new(c.certificate.clone()).unwrap();
            prop_assert_eq!(super::super::lattice::signature(&q), (1, 3));
        }
    }
}
