//! Sublattices given by integer generators in an ambient basis.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::lattice::Lattice;
use crate::error::{Error, Result};
use crate::linalg::integer::clear_denominators;
use crate::linalg::rational;
use crate::linalg::{hnf, snf, IntMatrix, Matrix};

#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMatrix,
}

impl Sublattice {
    /// Rows of `basis` are generators in ambient coordinates; they must be
    /// linearly independent.
    pub fn new(ambient: Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} columns, ambient rank is {}",
                basis.cols(),
                ambient.rank()
            )));
        }
        let r = basis.to_rational().rank();
        if r != basis.rows() {
            return Err(Error::RankDeficient {
                expected: basis.rows(),
                found: r,
            });
        }
        Ok(Sublattice { ambient, basis })
    }

    pub fn from_i64<R: AsRef<[i64]>>(ambient: Lattice, rows: &[R]) -> Result<Self> {
        Self::new(ambient, IntMatrix::from_i64(rows))
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn induced_gram(&self) -> Matrix {
        self.ambient.gram_of(&self.basis.to_rational())
    }

    /// The sublattice as a lattice in its own right.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.induced_gram())
    }

    pub fn is_primitive(&self) -> bool {
        let (d, _, _) = snf(&self.basis);
        (0..self.rank()).all(|i| d.get(i, i).is_one())
    }
}

/// `(Q·s) ∩ Z^n`, the primitive closure, with an HNF basis.
pub fn saturation(s: &Sublattice) -> Sublattice {
    let k = s.rank();
    let basis = saturate_rows(&s.basis, k);
    Sublattice {
        ambient: s.ambient.clone(),
        basis,
    }
}

/// With `d = u·B·v`, the row space of `B` over `Q` meets `Z^n` in the span
/// of the first `k` rows of `v^{-1}`.
fn saturate_rows(b: &IntMatrix, k: usize) -> IntMatrix {
    let n = b.cols();
    if k == 0 {
        return IntMatrix::zeros(0, n);
    }
    let (_, _, v) = snf(b);
    let vinv = IntMatrix::from_rational(&v.to_rational().inverse().expect("unimodular"))
        .expect("unimodular inverse is integral");
    let rows: Vec<usize> = (0..k).collect();
    let (h, _) = hnf(&vinv.select_rows(&rows));
    h
}

/// All ambient vectors orthogonal to `s`, as a primitive sublattice.
pub fn orthogonal_complement(s: &Sublattice) -> Result<Sublattice> {
    if !s.ambient.is_integral() {
        return Err(Error::NotIntegral("ambient lattice is not integral".into()));
    }
    let bg = &s.basis.to_rational() * s.ambient.gram();
    let ker = bg.kernel_basis();
    let k = ker.rows();
    let ints = clear_denominators(&ker);
    Ok(Sublattice {
        ambient: s.ambient.clone(),
        basis: saturate_rows(&ints, k),
    })
}

/// `[sup : sub]` for sublattices of the same ambient and equal rank.
pub fn sublattice_index(sub: &Sublattice, sup: &Sublattice) -> Result<BigInt> {
    if sub.basis.cols() != sup.basis.cols() {
        return Err(Error::DimensionMismatch("different ambient ranks".into()));
    }
    if sub.rank() != sup.rank() {
        return Err(Error::RankMismatch(sub.rank(), sup.rank()));
    }
    let coords = sup
        .basis
        .to_rational()
        .coordinates_of(&sub.basis.to_rational())
        .ok_or(Error::NotContained)?;
    if !coords.is_integral() {
        return Err(Error::NotContained);
    }
    let det = coords.det()?;
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    Ok(rational::abs(&det).to_integer())
}

/// The full lattice as a sublattice of itself.
pub fn whole(l: &Lattice) -> Sublattice {
    Sublattice {
        ambient: l.clone(),
        basis: IntMatrix::identity(l.rank()),
    }
}

/// Sublattice spanned by integer rows of a rational matrix, for convenience
/// when generators come out of rational computations.
pub fn from_rational_rows(ambient: Lattice, rows: &Matrix) -> Result<Sublattice> {
    Sublattice::new(ambient, IntMatrix::from_rational(rows)?)
}

/// Content of an integer vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter()
        .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice::{d_basis, make_named, LatticeName};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn named(s: &str) -> Lattice {
        make_named(&s.parse::<LatticeName>().unwrap()).unwrap()
    }

    #[test]
    fn complement_of_axis() {
        let s = Sublattice::from_i64(named("Z2"), &[[1, 0]]).unwrap();
        let c = orthogonal_complement(&s).unwrap();
        assert_eq!(c.basis(), &IntMatrix::from_i64(&[[0, 1]]));
    }

    #[test]
    fn dn_has_index_two() {
        let s = Sublattice::new(named("Z6"), d_basis(6).unwrap()).unwrap();
        assert_eq!(
            sublattice_index(&s, &whole(&named("Z6"))).unwrap(),
            BigInt::from(2)
        );
        assert!(!s.is_primitive());
    }

    #[test]
    fn saturation_of_scaled_vector() {
        let s = Sublattice::from_i64(named("Z3"), &[[2, 4, 6]]).unwrap();
        assert!(!s.is_primitive());
        let t = saturation(&s);
        assert_eq!(t.basis(), &IntMatrix::from_i64(&[[1, 2, 3]]));
        assert_eq!(sublattice_index(&s, &t).unwrap(), BigInt::from(2));
    }

    #[test]
    fn index_errors() {
        let z2 = named("Z2");
        let a = Sublattice::from_i64(z2.clone(), &[[1, 0]]).unwrap();
        let b = Sublattice::from_i64(z2.clone(), &[[2, 0], [0, 2]]).unwrap();
        assert!(matches!(
            sublattice_index(&a, &b),
            Err(Error::RankMismatch(1, 2))
        ));
        let c = Sublattice::from_i64(z2, &[[1, 0], [0, 1]]).unwrap();
        assert!(matches!(sublattice_index(&c, &b), Err(Error::NotContained)));
    }

    #[test]
    fn rank_deficient_basis_is_rejected() {
        assert!(Sublattice::from_i64(named("Z2"), &[[1, 1], [2, 2]]).is_err());
    }

    proptest! {
        #[test]
        fn complement_is_orthogonal_and_primitive(
            rows in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 1..3)
        ) {
            let l = named("Z{2,2}");
            let Ok(s) = Sublattice::from_i64(l.clone(), &rows) else { return Ok(()) };
            let c = orthogonal_complement(&s).unwrap();
            prop_assert!(c.is_primitive());
            prop_assert_eq!(c.rank() + s.rank(), 4);
            let cross = &(&s.basis().to_rational() * l.gram()) * &c.basis().to_rational().transpose();
            prop_assert!(cross.is_zero());
            let t = saturation(&s);
            prop_assert!(t.is_primitive());
            prop_assert!(sublattice_index(&s, &t).is_ok());
        }
    }
}
