//! Overlattices `L ⊂ M ⊂ L^∨` from subgroups of the discriminant group.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::discriminant::{discriminant_form, DiscriminantForm};
use super::finite_form::Comparison;
use super::lattice::{parity, unimodular, Lattice, Parity};
use crate::error::{Error, Result};
use crate::linalg::rational::{self, from_bigint};
use crate::linalg::{hnf, IntMatrix, Matrix};

#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: Lattice,
    /// Basis of the overlattice, rows in coordinates of the original basis.
    pub basis: Matrix,
    /// Elements of the glue subgroup, in discriminant coordinates.
    pub subgroup: Vec<Vec<i64>>,
    pub index: u64,
}

/// Summary of one integral overlattice.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OverlatticeEntry {
    pub subgroup: Vec<Vec<i64>>,
    pub gram: Matrix,
    pub index: u64,
    pub parity: Parity,
    pub unimodular: bool,
}

/// Glue `l` along the subgroup generated by `gens`.
pub fn overlattice_from_isotropic(l: &Lattice, gens: &[Vec<i64>]) -> Result<Overlattice> {
    let df = discriminant_form(l)?;
    glue(l, &df, gens)
}

fn glue(l: &Lattice, df: &DiscriminantForm, gens: &[Vec<i64>]) -> Result<Overlattice> {
    let form = df.form();
    let k = form.orders().len();
    for g in gens {
        if g.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group has {k} generators",
                g.len()
            )));
        }
    }
    let gens: Vec<Vec<i64>> = gens.iter().map(|g| form.reduce(g)).collect();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let v = form.b(&gens[i], &gens[j]);
            if !v.is_zero() {
                return Err(Error::IntegralityViolation(i, j, rational::format(&v)));
            }
        }
    }
    let subgroup = form.span(&gens);
    let n = l.rank();
    let e = from_bigint(BigInt::from(form.exponent()));
    let mut rows = Matrix::identity(n);
    for g in &gens {
        let lift = Matrix::from_rows(vec![df.lift(g)])?;
        rows = rows.vstack(&lift)?;
    }
    let scaled = IntMatrix::from_rational(&rows.scale(&e))
        .expect("lifts have denominators dividing the exponent");
    let (h, _) = hnf(&scaled);
    let top: Vec<usize> = (0..n).collect();
    let basis = h
        .select_rows(&top)
        .to_rational()
        .scale(&(rational::int(1) / e));
    let lattice = Lattice::new(l.gram_of(&basis))?;
    Ok(Overlattice {
        lattice,
        basis,
        index: subgroup.len() as u64,
        subgroup,
    })
}

/// Every integral overlattice of `l`, the trivial one included, ordered by
/// index and then by subgroup.
pub fn enumerate_integral_overlattices(l: &Lattice) -> Result<Vec<OverlatticeEntry>> {
    let df = discriminant_form(l)?;
    let groups = df.form().isotropic_subgroups(Comparison::BilinearOnly)?;
    groups
        .into_iter()
        .map(|g| {
            let o = glue(l, &df, &g)?;
            Ok(OverlatticeEntry {
                parity: parity(&o.lattice)?,
                unimodular: unimodular(&o.lattice),
                gram: o.lattice.gram().clone(),
                index: o.index,
                subgroup: o.subgroup,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::isometry::{is_isometric_small, Isometry};
    use crate::lattice::lattice::{make_named, signature, LatticeName};
    use crate::linalg::rational::{frac, int};
    use proptest::prelude::*;

    fn named(s: &str) -> Lattice {
        make_named(&s.parse::<LatticeName>().unwrap()).unwrap()
    }

    #[test]
    fn trivial_glue_is_identity() {
        let l = named("L");
        let o = overlattice_from_isotropic(&l, &[]).unwrap();
        assert_eq!(o.index, 1);
        assert_eq!(o.lattice.gram(), l.gram());
    }

    #[test]
    fn l_has_one_proper_overlattice() {
        let all = enumerate_integral_overlattices(&named("L")).unwrap();
        assert_eq!(all.len(), 2);
        let top = &all[1];
        assert_eq!(
            (top.index, top.parity, top.unimodular),
            (2, Parity::Odd, true)
        );
        let z = Lattice::new(top.gram.clone()).unwrap();
        assert_eq!(
            is_isometric_small(&z, &named("Z{2,4}")),
            Isometry::IsometricByInvariants
        );
    }

    #[test]
    fn unimodular_lattice_has_only_itself() {
        let all = enumerate_integral_overlattices(&named("E8")).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn non_isotropic_glue_names_the_pair() {
        // e1/2 in L has norm 1/2
        let l = named("L");
        let df = discriminant_form(&l).unwrap();
        let mut y = vec![int(0); 6];
        y[0] = frac(1, 2);
        let x = df.element_of(&y).unwrap();
        let err = overlattice_from_isotropic(&l, &[x]).unwrap_err();
        assert!(
            matches!(err, Error::IntegralityViolation(0, 0, ref v) if v == "1/2"),
            "{err:?}"
        );
    }

    #[test]
    fn graph_glue_of_d6_and_l_is_unimodular() {
        let l = named("D6(-1)+L");
        let all = enumerate_integral_overlattices(&l).unwrap();
        let full: Vec<_> = all.iter().filter(|o| o.index == 4).collect();
        assert!(!full.is_empty());
        for o in full {
            let m = Lattice::new(o.gram.clone()).unwrap();
            assert_eq!(rational::abs(&m.det()), int(1));
            assert_eq!(signature(&m), (2, 10));
            assert_eq!(
                is_isometric_small(&m, &named("Z{2,10}")),
                Isometry::IsometricByInvariants
            );
        }
    }

    proptest! {
        #[test]
        fn glue_succeeds_exactly_on_isotropic_subgroups(
            diag in prop::collection::vec(prop_oneof![Just(2i64), Just(-2), Just(4), Just(-4), Just(1), Just(-1)], 2..5),
            pick in prop::collection::vec(0usize..1024, 1..3),
        ) {
            let l = Lattice::diagonal(&diag).unwrap();
            let df = discriminant_form(&l).unwrap();
            let f = df.form();
            let gens: Vec<Vec<i64>> = pick.iter().map(|&i| f.element_at(i % f.order() as usize)).collect();
            let isotropic = gens.iter().all(|x| gens.iter().all(|y| f.b(x, y).is_zero()));
            match overlattice_from_isotropic(&l, &gens) {
                Ok(o) => {
                    prop_assert!(isotropic);
                    prop_assert!(o.lattice.is_integral());
                    let i2 = int((o.index * o.index) as i64);
                    prop_assert_eq!(rational::abs(&o.lattice.det()) * i2, rational::abs(&l.det()));
                }
                Err(Error::IntegralityViolation(..)) => prop_assert!(!isotropic),
                Err(e) => prop_assert!(false, "unexpected {e:?}"),
            }
        }
    }
}
