//! The discriminant form `L^∨/L` of an integral lattice.
//!
//! With `d = u·G·v` the Smith form of the Gram matrix, the dual lattice is
//! `G^{-1}Z^n = v·d^{-1}Z^n` and `L = v·Z^n`, so the columns of `v` divided by
//! the invariant factors give generators of `L^∨/L` in invariant-factor
//! order. Dual vectors are written in the coordinates of the lattice basis.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::finite_form::FiniteForm;
use super::lattice::{parity, Lattice, Parity};
use crate::error::{Error, Result};
use crate::linalg::rational::{self, from_bigint, int, Rational};
use crate::linalg::{snf, Matrix};

#[derive(Clone, Debug)]
pub struct DiscriminantForm {
    form: FiniteForm,
    /// One dual vector per generator, as rows.
    lifts: Matrix,
    /// `v^{-1}`, mapping dual vectors to `d^{-1}Z^n`.
    to_snf: Matrix,
    /// All invariant factors, ones included.
    factors: Vec<BigInt>,
    /// Index of the first factor above one.
    first: usize,
}

impl DiscriminantForm {
    pub fn form(&self) -> &FiniteForm {
        &self.form
    }

    pub fn lifts(&self) -> &Matrix {
        &self.lifts
    }

    /// A dual vector representing the group element `x`.
    pub fn lift(&self, x: &[i64]) -> Vec<Rational> {
        let coeffs: Vec<Rational> = x.iter().map(|&c| int(c)).collect();
        self.lifts.apply_left(&coeffs)
    }

    /// The class of a dual vector; errors if the vector is not in `L^∨`.
    pub fn element_of(&self, y: &[Rational]) -> Result<Vec<i64>> {
        let z = self.to_snf.apply(y);
        let mut out = Vec::with_capacity(self.factors.len() - self.first);
        for (i, (zi, d)) in z.iter().zip(&self.factors).enumerate() {
            let a = zi * from_bigint(d.clone());
            if !rational::is_integer(&a) {
                return Err(Error::Invalid("vector is not in the dual lattice".into()));
            }
            if i >= self.first {
                let r = rational::modulo(&a, &from_bigint(d.clone()));
                out.push(r.to_integer().to_i64().expect("small coordinate"));
            }
        }
        Ok(out)
    }
}

pub fn discriminant_form(l: &Lattice) -> Result<DiscriminantForm> {
    let g = l.integer_gram()?;
    let n = l.rank();
    let (d, _u, v) = snf(&g);
    let factors: Vec<BigInt> = (0..n).map(|i| d.get(i, i).clone()).collect();
    if factors.iter().any(Zero::is_zero) {
        return Err(Error::Degenerate);
    }
    let first = factors.iter().position(|f| !f.is_one()).unwrap_or(n);
    let vq = v.to_rational();
    let mut lifts = Matrix::zeros(n - first, n);
    for (k, i) in (first..n).enumerate() {
        let di = from_bigint(factors[i].clone());
        for r in 0..n {
            lifts.set(k, r, vq.get(r, i) / &di);
        }
    }
    let k = n - first;
    let mut b = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            b.set(i, j, l.pair(lifts.row(i), lifts.row(j)));
        }
    }
    let even = parity(l)? == Parity::Even;
    let q = even.then(|| (0..k).map(|i| l.norm(lifts.row(i))).collect());
    let orders = factors[first..]
        .iter()
        .map(|f| {
            f.to_u64().ok_or(Error::TooLarge {
                order: u64::MAX,
                bound: u64::MAX,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let form = FiniteForm::new(orders, b, q)?;
    Ok(DiscriminantForm {
        form,
        lifts,
        to_snf: vq.inverse()?,
        factors,
        first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice::{make_named, LatticeName};
    use crate::linalg::rational::frac;

    fn named(s: &str) -> Lattice {
        make_named(&s.parse::<LatticeName>().unwrap()).unwrap()
    }

    #[test]
    fn group_order_is_abs_det() {
        for s in [
            "D6",
            "L",
            "L(2)",
            "Z{2,10}",
            "H(2)+E10(-1)",
            "D{2,4}",
            "E8",
            "D5",
        ] {
            let l = named(s);
            let f = discriminant_form(&l).unwrap();
            assert_eq!(int(f.form().order() as i64), rational::abs(&l.det()), "{s}");
        }
    }

    #[test]
    fn unimodular_has_trivial_form() {
        let f = discriminant_form(&named("Z{2,10}")).unwrap();
        assert_eq!(f.form().order(), 1);
        assert!(f.form().orders().is_empty());
    }

    #[test]
    fn lifts_and_classes_agree() {
        let l = named("L(2)");
        let f = discriminant_form(&l).unwrap();
        for x in f.form().elements() {
            assert_eq!(f.element_of(&f.lift(&x)).unwrap(), x);
        }
        // e1/4 is dual, e1/8 is not
        let mut y = vec![int(0); 6];
        y[0] = frac(1, 4);
        assert!(f.element_of(&y).is_ok());
        y[0] = frac(1, 8);
        assert!(f.element_of(&y).is_err());
    }

    #[test]
    fn non_integral_is_rejected() {
        assert!(discriminant_form(&named("H(1/2)")).is_err());
    }
}
