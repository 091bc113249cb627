//! Normal form of a configuration under `GL₃ ×` column scalings.

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::configuration::{normalize, ConfigMatrix};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub config: ConfigMatrix,
    /// Input positions of the four frame columns.
    pub frame: [usize; 4],
    /// Output column `k` is input column `permutation[k]`.
    pub permutation: Vec<usize>,
}

/// Lexicographically first four columns no three of which are concurrent.
pub fn first_frame(c: &ConfigMatrix) -> Option<[usize; 4]> {
    (0..c.len()).combinations(4).find_map(|f| {
        let ok = f
            .iter()
            .copied()
            .combinations(3)
            .all(|t| !c.minor(t[0], t[1], t[2]).is_zero());
        ok.then(|| [f[0], f[1], f[2], f[3]])
    })
}

/// Send the first frame to `e₁, e₂, e₃, (1,1,1)` and scale every other
/// column to have leading entry 1. The frame comes first in the output,
/// then the remaining columns in their original order.
pub fn canonical_form(c: &ConfigMatrix) -> Result<CanonicalForm> {
    let frame = first_frame(c).ok_or(Error::NoFrame)?;
    let m = c.matrix();
    let b = m.select_cols(&frame[..3]);
    let lambda = b
        .solve(&c.column(frame[3]))
        .expect("frame columns are independent");
    let a = (&b * &Matrix::diagonal(&lambda)).inverse()?;
    let image = &a * m;
    let mut permutation: Vec<usize> = frame.to_vec();
    permutation.extend((0..c.len()).filter(|j| !frame.contains(j)));
    let mut out = Matrix::zeros(3, c.len());
    for (k, &j) in permutation.iter().enumerate() {
        // frame columns become e1/λ1, e2/λ2, e3/λ3 and exactly (1,1,1)
        let col: Vec<Rational> = normalize(&image.col(j));
        for (i, x) in col.into_iter().enumerate() {
            out.set(i, k, x);
        }
    }
    let labels = permutation.iter().map(|&j| c.labels()[j]).collect();
    Ok(CanonicalForm {
        config: ConfigMatrix::new(out, labels)?,
        frame,
        permutation,
    })
}

/// A key equal for two labeled configurations exactly when they agree up
/// to `GL₃`, column scalings and column order.
#[serde_with::serde_as]
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassKey {
    pub labels: Vec<u8>,
    #[serde_as(as = "Vec<serde_with::DisplayFromStr>")]
    pub entries: Vec<Rational>,
}

pub fn class_key(c: &ConfigMatrix) -> Result<ClassKey> {
    let cf = canonical_form(&c.sorted_by_label())?;
    Ok(ClassKey {
        labels: cf.config.labels().to_vec(),
        entries: cf.config.matrix().entries().to_vec(),
    })
}

pub fn equivalent(a: &ConfigMatrix, b: &ConfigMatrix) -> Result<bool> {
    Ok(class_key(a)? == class_key(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::configuration::plucker;
    use crate::linalg::rational::frac;
    use proptest::prelude::*;

    fn chart(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> ConfigMatrix {
        ConfigMatrix::from_i64(&[[1, 0, 0, 1, a, b], [0, 1, 0, 1, c, d], [0, 0, 1, 1, e, f]])
            .unwrap()
    }

    #[test]
    fn canonical_input_is_fixed() {
        let c = chart(1, 1, 3, 5, 7, 2);
        let cf = canonical_form(&c).unwrap();
        assert_eq!(cf.config, c);
        assert_eq!(cf.frame, [0, 1, 2, 3]);
    }

    #[test]
    fn one_triple_point_slice() {
        // e = 0 with a = b = 1
        let c = chart(1, 1, 3, 5, 0, 2);
        let cf = canonical_form(&c).unwrap();
        assert_eq!(cf.config, c);
        let zero: Vec<[usize; 3]> = plucker(&cf.config)
            .values
            .into_iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(t, _)| t)
            .collect();
        assert_eq!(zero, vec![[0, 1, 4]]);
    }

    #[test]
    fn frame_skips_concurrent_lines() {
        // lines 0,1,2 concurrent at (0,0,1)
        let c =
            ConfigMatrix::from_i64(&[[1, 0, 1, 0, 2, 3], [0, 1, 1, 0, 5, 7], [0, 0, 0, 1, 11, 13]])
                .unwrap();
        let cf = canonical_form(&c).unwrap();
        assert_eq!(cf.frame, [0, 1, 3, 4]);
        assert_eq!(cf.permutation, vec![0, 1, 3, 4, 2, 5]);
        assert_eq!(cf.config.labels(), &[0, 1, 3, 4, 2, 5]);
        assert_eq!(canonical_form(&cf.config).unwrap().config, cf.config);
    }

    #[test]
    fn no_frame() {
        // five concurrent lines leave no frame
        let c =
            ConfigMatrix::from_i64(&[[1, 0, 1, 2, 3, 0], [0, 1, 1, 5, 7, 0], [0, 0, 0, 0, 0, 1]])
                .unwrap();
        assert_eq!(canonical_form(&c), Err(Error::NoFrame));
    }

    fn arb_config() -> impl Strategy<Value = ConfigMatrix> {
        prop::collection::vec(-5i64..6, 18).prop_filter_map("frame", |e| {
            let rows: Vec<Vec<i64>> = e.chunks(6).map(|r| r.to_vec()).collect();
            let m = Matrix::from_i64(&rows);
            let c = ConfigMatrix::standard(m).ok()?;
            first_frame(&c).map(|_| c)
        })
    }

    fn arb_gl3() -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-4i64..5, 9).prop_filter_map("invertible", |e| {
            let g = Matrix::from_i64(&[&e[0..3], &e[3..6], &e[6..9]]);
            (!g.det().unwrap().is_zero()).then_some(g)
        })
    }

    proptest! {
        #[test]
        fn invariant_under_gl3_and_torus(c in arb_config(), g in arb_gl3(), t in prop::collection::vec((1i64..7, 1i64..5, any::<bool>()), 6)) {
            let scale: Vec<Rational> = t.iter().map(|&(p, q, s)| if s { frac(p, q) } else { -frac(p, q) }).collect();
            let moved = &(&g * c.matrix()) * &Matrix::diagonal(&scale);
            let d = c.with_matrix(moved).unwrap();
            prop_assert_eq!(canonical_form(&c).unwrap(), canonical_form(&d).unwrap());
        }

        #[test]
        fn idempotent(c in arb_config()) {
            let once = canonical_form(&c).unwrap().config;
            let twice = canonical_form(&once).unwrap();
            prop_assert_eq!(&twice.config, &once);
            prop_assert_eq!(twice.frame, [0, 1, 2, 3]);
        }

        // degree-zero ratios of minors are GL3 and torus invariants
        #[test]
        fn minor_ratios_survive(c in arb_config()) {
            let cf = canonical_form(&c).unwrap();
            let src = c.permuted(&cf.permutation);
            let (p, q) = (plucker(&src), plucker(&cf.config));
            for (t, v) in &p.values {
                prop_assert_eq!(v.is_zero(), q.get(*t).is_zero());
            }
            let ratios = [([0, 1, 2], [3, 4, 5], [0, 1, 3], [2, 4, 5]), ([0, 1, 4], [2, 3, 5], [0, 1, 5], [2, 3, 4])];
            for (a, b, x, y) in ratios {
                let den = p.get(x) * p.get(y);
                if den.is_zero() {
                    continue;
                }
                let r = p.get(a) * p.get(b) / den;
                prop_assert_eq!(r, q.get(a) * q.get(b) / (q.get(x) * q.get(y)));
            }
        }

        #[test]
        fn key_ignores_column_order(c in arb_config(), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
            prop_assert_eq!(class_key(&c).unwrap(), class_key(&c.permuted(&perm)).unwrap());
        }
    }
}
