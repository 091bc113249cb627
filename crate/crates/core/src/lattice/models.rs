//! Concrete embeddings and glue data used throughout the checks.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::discriminant::{discriminant_form, DiscriminantForm};
use super::finite_form::Comparison;
use super::index::{index_exponent, IndexFormulaInput};
use super::isometry::{is_isometric_small, Isometry};
use super::lattice::{d_basis, make_named, parity, signature, Lattice, LatticeName, Parity};
use super::overlattice::{
    enumerate_integral_overlattices, overlattice_from_isotropic, OverlatticeEntry,
};
use super::sublattice::{orthogonal_complement, sublattice_index, whole, Sublattice};
use crate::error::Result;
use crate::linalg::rational::{frac, int, Rational};
use crate::linalg::IntMatrix;

fn named(s: &str) -> Lattice {
    make_named(&s.parse::<LatticeName>().expect("fixed name")).expect("fixed name")
}

fn unit_rows(n: usize, idx: impl IntoIterator<Item = usize>) -> IntMatrix {
    let mut rows = Vec::new();
    for i in idx {
        let mut r = vec![0i64; n];
        r[i] = 1;
        rows.push(r);
    }
    IntMatrix::from_i64(&rows)
}

/// `D6 ⊂ E8` spanned by the simple roots 1..=6 (0-based). With the
/// Bourbaki numbering these form the subdiagram with the fork at node 3.
pub fn d6_in_e8() -> Sublattice {
    Sublattice::new(named("E8"), unit_rows(8, 1..7)).expect("independent roots")
}

/// `Z^{2,10}` realised as `Z^{2,2} ⊕ E8(-1)`.
pub fn z210_model() -> Lattice {
    named("Z{2,2}+E8(-1)")
}

/// `D6(-1)` inside the `E8(-1)` summand of [`z210_model`].
pub fn d6_in_z210() -> Sublattice {
    Sublattice::new(z210_model(), unit_rows(12, 5..11)).expect("independent roots")
}

/// `L = D_{2,0} ⊕ Z^{0,4}` inside `Z^{2,4}`.
pub fn l_in_z24() -> Sublattice {
    let rows = [
        [1, -1, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ];
    Sublattice::from_i64(named("Z{2,4}"), &rows).expect("independent rows")
}

/// `D6(-2) ⊂ Z^6(-1)`: the `D6` basis composed with `diag(M, M, M)` for
/// `M = [[1,1],[1,-1]]`, using `M·Mᵀ = 2I`.
pub fn d6_scaled_in_z6() -> Sublattice {
    let d = d_basis(6).expect("n >= 2");
    let mut m = IntMatrix::zeros(6, 6);
    for k in 0..3 {
        let (i, j) = (2 * k, 2 * k + 1);
        m.set(i, i, 1.into());
        m.set(i, j, 1.into());
        m.set(j, i, 1.into());
        m.set(j, j, (-1).into());
    }
    let b = d.try_mul(&m).expect("square");
    Sublattice::new(named("Z6(-1)"), b).expect("nondegenerate")
}

/// `[ambient : a ⊕ b]` for two sublattices of complementary rank.
pub fn sum_index(a: &Sublattice, b: &Sublattice) -> Result<BigInt> {
    let rows: Vec<Vec<BigInt>> = a
        .basis()
        .to_rows()
        .into_iter()
        .chain(b.basis().to_rows())
        .collect();
    let s = Sublattice::new(a.ambient().clone(), IntMatrix::from_rows(rows)?)?;
    sublattice_index(&s, &whole(a.ambient()))
}

/// The discriminant form `Λ` of `L(2)` with the generators
/// `a = e1/4, b = e2/4, c..f = e3/2..e6/2`.
#[derive(Clone, Debug)]
pub struct LambdaModel {
    pub lattice: Lattice,
    pub disc: DiscriminantForm,
    /// `a, b, c, d, e, f` in discriminant coordinates.
    pub gens: Vec<Vec<i64>>,
}

/// Orders of `a, b, c, d, e, f`.
pub const LAMBDA_ORDERS: [i64; 6] = [4, 4, 2, 2, 2, 2];

impl LambdaModel {
    pub fn new() -> Result<Self> {
        let lattice = named("L(2)");
        let disc = discriminant_form(&lattice)?;
        let mut gens = Vec::new();
        for i in 0..6 {
            let mut y: Vec<Rational> = vec![int(0); 6];
            y[i] = frac(1, LAMBDA_ORDERS[i]);
            gens.push(disc.element_of(&y)?);
        }
        Ok(LambdaModel {
            lattice,
            disc,
            gens,
        })
    }

    /// `Σ coeffs[i]·gens[i]`.
    pub fn element(&self, coeffs: &[i64]) -> Vec<i64> {
        let f = self.disc.form();
        let mut acc = vec![0i64; f.orders().len()];
        for (c, g) in coeffs.iter().zip(&self.gens) {
            acc = f.add(&acc, &f.multiple(*c, g));
        }
        acc
    }

    /// Every coefficient vector in `Z/4 × Z/4 × (Z/2)^4`.
    pub fn coefficient_vectors() -> Vec<[i64; 6]> {
        let mut out = Vec::with_capacity(256);
        for code in 0..256i64 {
            let mut c = [0i64; 6];
            let mut r = code;
            for (k, o) in LAMBDA_ORDERS.iter().enumerate() {
                c[k] = r % o;
                r /= o;
            }
            out.push(c);
        }
        out
    }

    /// `(x1y1 + x2y2)/4 − (x3y3 + … + x6y6)/2` before reduction mod 1.
    pub fn stated_pairing(x: &[i64], y: &[i64]) -> Rational {
        frac(x[0] * y[0] + x[1] * y[1], 4)
            - frac(x[2..].iter().zip(&y[2..]).map(|(a, b)| a * b).sum(), 2)
    }

    /// `α ≡ β (mod 2)` and `α + γ + δ + ε + φ ≡ 0 (mod 2)`.
    pub fn stated_integral_norm(c: &[i64]) -> bool {
        (c[0] - c[1]).rem_euclid(2) == 0
            && c[0].rem_euclid(2) == c[2..].iter().sum::<i64>().rem_euclid(2)
    }

    /// `⟨2a, 2b, c+d+e+f⟩`.
    pub fn lambda0_generators(&self) -> Vec<Vec<i64>> {
        vec![
            self.element(&[2, 0, 0, 0, 0, 0]),
            self.element(&[0, 2, 0, 0, 0, 0]),
            self.element(&[0, 0, 1, 1, 1, 1]),
        ]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainIdentity {
    /// `[Z^{2,10} : D6(-1) ⊕ D6(-1)^⊥]`.
    pub complement_index: BigInt,
    /// Exponent from the index formula for the cover.
    pub formula_exponent: i64,
    /// `[Z^6(-1) : D6(-2)]`.
    pub scaled_index: BigInt,
    /// Order of the glue subgroup `Λ0`.
    pub glue_index: u64,
}

impl ChainIdentity {
    pub fn compute() -> Result<Self> {
        let d6 = d6_in_z210();
        let perp = orthogonal_complement(&d6)?;
        let complement_index = sum_index(&d6, &perp)?;
        let formula_exponent = index_exponent(&IndexFormulaInput {
            ell2_base: 0,
            ell2_cover: 2,
            rho: 7,
            kappa_trivial: false,
        });
        let s = d6_scaled_in_z6();
        let scaled_index = sublattice_index(&s, &whole(s.ambient()))?;
        let lm = LambdaModel::new()?;
        let glue = overlattice_from_isotropic(&lm.lattice, &lm.lambda0_generators())?;
        Ok(ChainIdentity {
            complement_index,
            formula_exponent,
            scaled_index,
            glue_index: glue.index,
        })
    }

    /// `complement · 2^exponent == scaled · glue`.
    pub fn holds(&self) -> bool {
        let Ok(e) = u32::try_from(self.formula_exponent) else {
            return false;
        };
        &self.complement_index * BigInt::from(2).pow(e)
            == &self.scaled_index * BigInt::from(self.glue_index)
    }
}

/// Explicit enumeration of `SO(Z²(2)) × O(Z⁴(−1))` modulo `±1`, acting on
/// `Z²(2) ⊕ Z⁴(−1)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerCensus {
    pub plane_orthogonal: usize,
    pub plane_special: usize,
    pub quartic_orthogonal: usize,
    /// Distinct classes of the block products modulo `±1`.
    pub order: usize,
    /// Size of the image in coordinate permutations of the `Z⁴(−1)` block.
    pub permutation_image: usize,
    /// Classes acting diagonally on the `Z⁴(−1)` block.
    pub sign_part: usize,
    /// Every block product preserves the form.
    pub all_isometries: bool,
    /// `Z²(2) ⊕ Z⁴(−1)` shares the invariants of `L`.
    pub matches_l: bool,
}

impl StabilizerCensus {
    pub fn compute() -> Result<Self> {
        use super::isometry::{is_isometry, orthogonal_group_definite};
        use std::collections::BTreeSet;
        let plane = Lattice::diagonal(&[2, 2])?;
        let quartic = Lattice::diagonal(&[-1, -1, -1, -1])?;
        let total = Lattice::diagonal(&[2, 2, -1, -1, -1, -1])?;
        let o2 = orthogonal_group_definite(&plane)?;
        let so2: Vec<&IntMatrix> = o2
            .iter()
            .filter(|g| g.det().map(|d| d == 1.into()).unwrap_or(false))
            .collect();
        let o4 = orthogonal_group_definite(&quartic)?;
        let mut classes: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let mut perms: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut all_isometries = true;
        let mut diagonal = 0usize;
        for a in &so2 {
            for b in &o4 {
                let mut g = IntMatrix::zeros(6, 6);
                for i in 0..2 {
                    for j in 0..2 {
                        g.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..4 {
                    for j in 0..4 {
                        g.set(2 + i, 2 + j, b.get(i, j).clone());
                    }
                }
                all_isometries &= is_isometry(&total, &g)?;
                let flat: Vec<BigInt> = (0..6)
                    .flat_map(|i| (0..6).map(move |j| (i, j)))
                    .map(|(i, j)| g.get(i, j).clone())
                    .collect();
                let neg: Vec<BigInt> = flat.iter().map(|x| -x).collect();
                let key = flat.clone().min(neg);
                if classes.insert(key) {
                    let perm: Vec<usize> = (0..4)
                        .map(|j| {
                            (0..4)
                                .find(|&i| !num_traits::Zero::is_zero(b.get(i, j)))
                                .expect("monomial")
                        })
                        .collect();
                    if perm == [0, 1, 2, 3] {
                        diagonal += 1;
                    }
                    perms.insert(perm);
                }
            }
        }
        Ok(StabilizerCensus {
            plane_orthogonal: o2.len(),
            plane_special: so2.len(),
            quartic_orthogonal: o4.len(),
            order: classes.len(),
            permutation_image: perms.len(),
            sign_part: diagonal,
            all_isometries,
            matches_l: is_isometric_small(&total, &named("L")).is_isometric(),
        })
    }
}

/// The index-two sublattices of `Z^{2,4}` with 2-torsion discriminant
/// group, each beside a second model of the same lattice.
pub const INDEX_TWO_IDENTITIES: [(&str, &str); 7] = [
    ("D{2,4}", "H+H+Z2(-2)"),
    ("D{0,4}+Z2", "H(2)+Z{1,3}"),
    ("D{2,2}+Z{0,2}", "H(2)+H+Z2(-1)"),
    ("D{2,0}+Z{0,4}", "Z2(2)+Z4(-1)"),
    ("D{0,2}+Z{2,2}", "Z{2,2}+Z2(-2)"),
    ("D{1,3}+Z{1,1}", "H+Z2(-2)+Z{1,1}"),
    ("D{1,1}+Z{1,3}", "H(2)+Z{1,3}"),
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub left: String,
    pub right: String,
    pub signature: ((usize, usize), (usize, usize)),
    pub parity: (Parity, Parity),
    /// Exponent of the discriminant group of the left side.
    pub exponent: u64,
    pub result: Isometry,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.result.is_isometric() && self.exponent <= 2
    }
}

pub fn index_two_identities() -> Result<Vec<IdentityCheck>> {
    INDEX_TWO_IDENTITIES
        .iter()
        .map(|(a, b)| {
            let (la, lb) = (named(a), named(b));
            Ok(IdentityCheck {
                left: a.to_string(),
                right: b.to_string(),
                signature: (signature(&la), signature(&lb)),
                parity: (parity(&la)?, parity(&lb)?),
                exponent: discriminant_form(&la)?.form().exponent(),
                result: is_isometric_small(&la, &lb),
            })
        })
        .collect()
}

/// Integral lattices between `H(1/2) ⊕ E10(−1)` and its dual `H(2) ⊕ E10(−1)`.
#[serde_with::serde_as]
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AllcockCensus {
    pub quotient_orders: Vec<u64>,
    /// `q` on the nonzero elements of the quotient, sorted, in `Q/2Z`.
    #[serde_as(as = "Vec<serde_with::DisplayFromStr>")]
    pub q_values: Vec<Rational>,
    pub proper: Vec<OverlatticeEntry>,
    pub odd_unimodular: usize,
}

impl AllcockCensus {
    pub fn compute() -> Result<Self> {
        let big = named("H(1/2)+E10(-1)");
        let dual = big.dual();
        let df = discriminant_form(&dual)?;
        let f = df.form();
        let mut q_values: Vec<Rational> = f
            .elements()
            .iter()
            .filter(|x| x.iter().any(|&c| c != 0))
            .map(|x| f.q(x).expect("even dual"))
            .collect();
        q_values.sort();
        let proper: Vec<OverlatticeEntry> = enumerate_integral_overlattices(&dual)?
            .into_iter()
            .filter(|o| o.index > 1)
            .collect();
        let odd_unimodular = proper
            .iter()
            .filter(|o| o.unimodular && o.parity == Parity::Odd)
            .count();
        Ok(AllcockCensus {
            quotient_orders: f.orders().to_vec(),
            q_values,
            proper,
            odd_unimodular,
        })
    }
}

/// The facts about `Λ`, the discriminant form of `L(2)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LambdaCensus {
    pub orders: Vec<u64>,
    /// `b` agrees with `(x1y1 + x2y2)/4 − (x3y3 + … + x6y6)/2` on all pairs.
    pub pairing_matches: bool,
    pub integral_norm_order: usize,
    /// The integral-norm elements are exactly the stated subgroup.
    pub integral_norm_matches: bool,
    pub lambda0_order: usize,
    pub lambda0_isotropic: bool,
    pub glue_signature: (usize, usize),
    pub glue_parity: Parity,
    pub glue_matches: Isometry,
    pub automorphisms: usize,
    pub lambda0_stable: bool,
}

impl LambdaCensus {
    pub fn compute() -> Result<Self> {
        use super::finite_form::automorphisms;
        use std::collections::BTreeSet;
        let m = LambdaModel::new()?;
        let f = m.disc.form();
        let coeffs = LambdaModel::coefficient_vectors();
        let elems: Vec<Vec<i64>> = coeffs.iter().map(|c| m.element(c)).collect();
        let mut pairing_matches = true;
        for (x, ex) in coeffs.iter().zip(&elems) {
            for (y, ey) in coeffs.iter().zip(&elems) {
                let want =
                    crate::linalg::rational::modulo(&LambdaModel::stated_pairing(x, y), &int(1));
                pairing_matches &= f.b(ex, ey) == want;
            }
        }
        let mut integral_norm_order = 0;
        let mut integral_norm_matches = true;
        for (c, e) in coeffs.iter().zip(&elems) {
            let integral = crate::linalg::rational::is_integer(&f.q(e).expect("even"));
            integral_norm_order += integral as usize;
            integral_norm_matches &= integral == LambdaModel::stated_integral_norm(c);
        }
        let gens = m.lambda0_generators();
        let span: BTreeSet<Vec<i64>> = f.span(&gens).into_iter().collect();
        let lambda0_isotropic = span
            .iter()
            .all(|x| span.iter().all(|y| num_traits::Zero::is_zero(&f.b(x, y))));
        let glue = overlattice_from_isotropic(&m.lattice, &gens)?;
        let auts = automorphisms(f, Comparison::BilinearOnly)?;
        let lambda0_stable = auts
            .iter()
            .all(|a| span.iter().all(|x| span.contains(&f.apply(f, a, x))));
        Ok(LambdaCensus {
            orders: m.gens.iter().map(|g| f.element_order(g)).collect(),
            pairing_matches,
            integral_norm_order,
            integral_norm_matches,
            lambda0_order: span.len(),
            lambda0_isotropic,
            glue_signature: signature(&glue.lattice),
            glue_parity: parity(&glue.lattice)?,
            glue_matches: is_isometric_small(&glue.lattice, &named("Z2+D4(-1)")),
            automorphisms: auts.len(),
            lambda0_stable,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::finite_form::{automorphisms, finite_form_isometric, Comparison};
    use crate::lattice::isometry::{gauss_reduce_binary, is_isometric_small, Isometry};
    use crate::lattice::lattice::{parity, signature, Parity};
    use crate::linalg::rational::modulo;
    use crate::linalg::Matrix;
    use std::collections::BTreeSet;

    #[test]
    fn d6_in_e8_is_d6_and_its_complement_is_two_twos() {
        let s = d6_in_e8();
        let d6 = s.lattice().unwrap();
        assert!(matches!(
            is_isometric_small(&d6, &named("D6")),
            Isometry::Isometric { .. }
        ));
        let c = orthogonal_complement(&s).unwrap();
        let r = gauss_reduce_binary(&c.induced_gram()).unwrap();
        assert_eq!(r, Matrix::from_i64(&[[2, 0], [0, 2]]));
    }

    #[test]
    fn z210_model_is_odd_unimodular() {
        let z = z210_model();
        assert_eq!(signature(&z), (2, 10));
        assert_eq!(parity(&z).unwrap(), Parity::Odd);
        assert_eq!(z.det(), int(1));
    }

    #[test]
    fn transcendental_complement_looks_like_l() {
        let c = orthogonal_complement(&d6_in_z210())
            .unwrap()
            .lattice()
            .unwrap();
        assert_eq!(signature(&c), (2, 4));
        assert_eq!(parity(&c).unwrap(), Parity::Odd);
        assert_eq!(crate::linalg::rational::abs(&c.det()), int(4));
        assert_eq!(
            is_isometric_small(&c, &named("L")),
            Isometry::IsometricByInvariants
        );
    }

    #[test]
    fn embedded_indices() {
        assert_eq!(
            sublattice_index(&l_in_z24(), &whole(&named("Z{2,4}"))).unwrap(),
            2.into()
        );
        assert_eq!(*l_in_z24().lattice().unwrap().gram(), *named("L").gram());
        let s = d6_scaled_in_z6();
        assert_eq!(s.induced_gram(), named("D6(-2)").gram().clone());
    }

    #[test]
    fn seven_index_two_identities() {
        let all = index_two_identities().unwrap();
        assert_eq!(all.len(), 7);
        for c in &all {
            assert!(c.holds(), "{c:?}");
            assert_eq!(c.signature.0, (2, 4));
        }
    }

    #[test]
    fn allcock_census() {
        let c = AllcockCensus::compute().unwrap();
        assert_eq!(c.quotient_orders, vec![2, 2]);
        assert_eq!(c.q_values, vec![int(0), int(0), int(1)]);
        assert_eq!(c.proper.len(), 3);
        assert!(c.proper.iter().all(|o| o.unimodular));
        assert_eq!(c.odd_unimodular, 1);
    }

    #[test]
    fn lambda_census() {
        let c = LambdaCensus::compute().unwrap();
        assert!(
            c.pairing_matches && c.integral_norm_matches && c.lambda0_isotropic && c.lambda0_stable
        );
        assert_eq!((c.integral_norm_order, c.lambda0_order), (64, 8));
        assert_eq!((c.glue_signature, c.glue_parity), ((2, 4), Parity::Odd));
        assert_eq!(c.glue_matches, Isometry::IsometricByInvariants);
    }

    #[test]
    fn stabilizer_order() {
        let c = StabilizerCensus::compute().unwrap();
        assert_eq!(
            (c.plane_orthogonal, c.plane_special, c.quartic_orthogonal),
            (8, 4, 384)
        );
        assert_eq!(c.order, 768);
        assert_eq!((c.permutation_image, c.sign_part), (24, 32));
        assert!(c.all_isometries && c.matches_l);
    }

    #[test]
    fn chain_identity() {
        let c = ChainIdentity::compute().unwrap();
        assert_eq!(c.complement_index, 4.into());
        assert_eq!(c.formula_exponent, 5);
        assert_eq!(c.scaled_index, 16.into());
        assert_eq!(c.glue_index, 8);
        assert!(c.holds());
    }

    #[test]
    fn lambda_generators_have_stated_orders_and_pairing() {
        let m = LambdaModel::new().unwrap();
        let f = m.disc.form();
        assert_eq!(f.orders(), &[2, 2, 2, 2, 4, 4]);
        for (g, o) in m.gens.iter().zip(LAMBDA_ORDERS) {
            assert_eq!(f.element_order(g), o as u64);
        }
        let coeffs = LambdaModel::coefficient_vectors();
        let images: BTreeSet<Vec<i64>> = coeffs.iter().map(|c| m.element(c)).collect();
        assert_eq!(images.len(), 256);
        for x in &coeffs {
            for y in &coeffs {
                let want = modulo(&LambdaModel::stated_pairing(x, y), &int(1));
                assert_eq!(f.b(&m.element(x), &m.element(y)), want);
            }
        }
    }

    #[test]
    fn integral_norm_subgroup() {
        let m = LambdaModel::new().unwrap();
        let f = m.disc.form();
        let mut count = 0;
        for c in LambdaModel::coefficient_vectors() {
            let q = f.q(&m.element(&c)).unwrap();
            let integral = q.is_integer();
            assert_eq!(integral, LambdaModel::stated_integral_norm(&c), "{c:?}");
            count += integral as usize;
        }
        assert_eq!(count, 64);
    }

    #[test]
    fn lambda0_glue() {
        let m = LambdaModel::new().unwrap();
        let f = m.disc.form();
        let g = m.lambda0_generators();
        assert_eq!(f.span(&g).len(), 8);
        let o = overlattice_from_isotropic(&m.lattice, &g).unwrap();
        assert_eq!(signature(&o.lattice), (2, 4));
        assert_eq!(parity(&o.lattice).unwrap(), Parity::Odd);
        assert_eq!(
            is_isometric_small(&o.lattice, &named("Z2+D4(-1)")),
            Isometry::IsometricByInvariants
        );
    }

    #[test]
    fn lambda0_is_stable_under_automorphisms() {
        let m = LambdaModel::new().unwrap();
        let f = m.disc.form();
        let span: BTreeSet<Vec<i64>> = f.span(&m.lambda0_generators()).into_iter().collect();
        let auts = automorphisms(f, Comparison::BilinearOnly).unwrap();
        assert!(!auts.is_empty());
        for a in &auts {
            for x in &span {
                assert!(span.contains(&f.apply(f, a, x)));
            }
        }
        assert!(finite_form_isometric(f, f, Comparison::Quadratic)
            .unwrap()
            .is_isometric());
    }
}
