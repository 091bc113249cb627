//! Systems of four diagonal quadrics in seven variables, the plane of
//! their common kernel with its seven coordinate lines, and the six-line
//! configurations obtained by dropping one character.

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::configuration::{minor3, plucker, ConfigMatrix};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Rows are the quadrics, column `i` the coefficient of `x_{i+1}²`, that is
/// of the character `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct QuadricSystem {
    matrix: Matrix,
}

impl TryFrom<Matrix> for QuadricSystem {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        QuadricSystem::new(m)
    }
}

impl From<QuadricSystem> for Matrix {
    fn from(q: QuadricSystem) -> Matrix {
        q.matrix
    }
}

impl QuadricSystem {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 7 {
            return Err(Error::DimensionMismatch(format!(
                "quadric systems are 4x7, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(QuadricSystem { matrix })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        QuadricSystem::new(Matrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn require_rank(&self) -> Result<()> {
        let r = self.matrix.rank();
        if r < 4 {
            return Err(Error::RankDeficient {
                expected: 4,
                found: r,
            });
        }
        Ok(())
    }
}

/// Lines `x_χ = 0` on the plane `{Q·x = 0}`: the echelon kernel basis as a
/// 3×7 matrix, column `i` carrying character `i + 1`.
pub fn seven_line_config(q: &QuadricSystem) -> Result<ConfigMatrix> {
    q.require_rank()?;
    ConfigMatrix::standard(q.matrix().kernel_basis())
}

/// Characters in slot order after dropping `kappa`: pairs `{χ, χ⊕κ}` sorted
/// by their smaller member, each pair in increasing order.
pub fn drop_slots(kappa: u8) -> Result<[u8; 6]> {
    if !(1..=7).contains(&kappa) {
        return Err(Error::MissingLabel(kappa.to_string()));
    }
    let mut pairs: Vec<(u8, u8)> = (1u8..=7)
        .filter(|&c| c != kappa)
        .map(|c| (c.min(c ^ kappa), c.max(c ^ kappa)))
        .unique()
        .collect();
    pairs.sort_unstable();
    let v: Vec<u8> = pairs.into_iter().flat_map(|(a, b)| [a, b]).collect();
    Ok([v[0], v[1], v[2], v[3], v[4], v[5]])
}

/// Delete the line labeled `kappa` and regroup the rest into pair slots.
pub fn drop_line(c: &ConfigMatrix, kappa: u8) -> Result<ConfigMatrix> {
    if c.len() != 7 {
        return Err(Error::DimensionMismatch(format!(
            "drop_line needs 7 lines, got {}",
            c.len()
        )));
    }
    c.position_of(kappa)
        .ok_or_else(|| Error::MissingLabel(kappa.to_string()))?;
    let slots = drop_slots(kappa)?;
    let cols: Vec<usize> = slots
        .iter()
        .map(|&chi| c.position_of(chi).expect("labels are 1..=7"))
        .collect();
    ConfigMatrix::standard(c.matrix().select_cols(&cols))
}

/// The same six lines reached through the quadrics: intersect the row
/// space with `{coefficient of x_κ² = 0}`, drop that coordinate, and take
/// the kernel of the resulting 3×6 system.
pub fn drop_line_via_quadrics(q: &QuadricSystem, kappa: u8) -> Result<ConfigMatrix> {
    q.require_rank()?;
    let slots = drop_slots(kappa)?;
    let k = usize::from(kappa - 1);
    // combinations w with (w·Q)_κ = 0
    let col = Matrix::from_rows(vec![q.matrix().col(k)])?;
    let w = col.kernel_basis();
    let restricted = &w * q.matrix();
    let cols: Vec<usize> = slots.iter().map(|&chi| usize::from(chi - 1)).collect();
    let sub = restricted.select_cols(&cols);
    if sub.rank() < 3 {
        return Err(Error::RankDeficient {
            expected: 3,
            found: sub.rank(),
        });
    }
    ConfigMatrix::standard(sub.kernel_basis())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smoothness {
    pub smooth: bool,
    /// First dependent set of four characters, if any.
    pub witness: Option<Vec<u8>>,
}

/// Smooth iff every four columns of `Q` are independent.
pub fn smoothness(q: &QuadricSystem) -> Result<Smoothness> {
    q.require_rank()?;
    let witness = (0..7)
        .combinations(4)
        .find(|c| q.matrix().select_cols(c).det().expect("square").is_zero());
    Ok(Smoothness {
        smooth: witness.is_none(),
        witness: witness.map(to_characters),
    })
}

/// Smooth iff the seven lines have no concurrent triple. A line that
/// vanishes identically lies in every triple.
pub fn smooth_by_triple_points(q: &QuadricSystem) -> Result<bool> {
    q.require_rank()?;
    let k = q.matrix().kernel_basis();
    Ok((0..7)
        .combinations(3)
        .all(|t| !minor3(&k.col(t[0]), &k.col(t[1]), &k.col(t[2])).is_zero()))
}

/// Smooth iff no quadric of the system has rank three or less: for each
/// four coordinates, look for a combination of the rows vanishing there.
pub fn smooth_by_low_rank_quadric(q: &QuadricSystem) -> Result<bool> {
    q.require_rank()?;
    for c in (0..7).combinations(4) {
        let sub = q.matrix().select_cols(&c);
        let left = sub.transpose().kernel_basis();
        if left.rows() > 0 {
            let quadric = left.select_rows(&[0]).try_mul(q.matrix())?;
            debug_assert!(quadric.row(0).iter().filter(|x| !x.is_zero()).count() <= 3);
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_characters(c: Vec<usize>) -> Vec<u8> {
    c.into_iter().map(|i| i as u8 + 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    /// The three labels sum to zero and do not generate.
    Degenerate,
    OnBranch,
    PairFixed,
    ExtraFixedNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeEntry {
    pub characters: [u8; 3],
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub kappa: u8,
    pub nodes: Vec<NodeEntry>,
    pub degenerate: usize,
    pub on_branch: usize,
    pub pair_fixed: usize,
    pub extra_fixed: usize,
}

pub fn classify_triple(t: [u8; 3], kappa: u8) -> NodeKind {
    let [a, b, c] = t;
    if a ^ b ^ c == 0 {
        NodeKind::Degenerate
    } else if t.contains(&kappa) {
        NodeKind::OnBranch
    } else if [a ^ b, a ^ c, b ^ c].contains(&kappa) {
        NodeKind::PairFixed
    } else {
        debug_assert_eq!(a ^ b ^ c, kappa);
        NodeKind::ExtraFixedNode
    }
}

/// Classify every concurrent triple of a seven-line configuration relative
/// to `kappa`.
pub fn node_report(c: &ConfigMatrix, kappa: u8) -> Result<NodeReport> {
    if c.len() != 7 {
        return Err(Error::DimensionMismatch(format!(
            "node_report needs 7 lines, got {}",
            c.len()
        )));
    }
    if !(1..=7).contains(&kappa) {
        return Err(Error::MissingLabel(kappa.to_string()));
    }
    let p = plucker(c);
    let mut nodes: Vec<NodeEntry> = p
        .values
        .iter()
        .filter(|(_, v)| v.is_zero())
        .map(|(t, _)| {
            let mut chars = t.map(|i| c.labels()[i]);
            chars.sort_unstable();
            NodeEntry {
                characters: chars,
                kind: classify_triple(chars, kappa),
            }
        })
        .collect();
    nodes.sort_by_key(|n| n.characters);
    let count = |k: NodeKind| nodes.iter().filter(|n| n.kind == k).count();
    Ok(NodeReport {
        kappa,
        degenerate: count(NodeKind::Degenerate),
        on_branch: count(NodeKind::OnBranch),
        pair_fixed: count(NodeKind::PairFixed),
        extra_fixed: count(NodeKind::ExtraFixedNode),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::canonical::{class_key, equivalent};
    use proptest::prelude::*;

    pub(crate) fn generic() -> QuadricSystem {
        QuadricSystem::from_i64(&[
            [1, 0, 0, 0, 1, 1, 1],
            [0, 1, 0, 0, 1, 2, 3],
            [0, 0, 1, 0, 1, 4, 9],
            [0, 0, 0, 1, 1, 8, 28],
        ])
        .unwrap()
    }

    #[test]
    fn block_kernel_pattern() {
        let q = generic();
        let c = seven_line_config(&q).unwrap();
        let a = q.matrix().select_cols(&[4, 5, 6]);
        let expected = (-&a.transpose()).hstack(&Matrix::identity(3)).unwrap();
        assert_eq!(c.matrix(), &expected);
        assert!((q.matrix() * &c.matrix().transpose()).is_zero());
        assert_eq!(c.labels(), &[1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn generic_is_smooth_three_ways() {
        let q = generic();
        let s = smoothness(&q).unwrap();
        assert!(s.smooth && s.witness.is_none());
        for c in (0..7).combinations(4) {
            assert!(!q.matrix().select_cols(&c).det().unwrap().is_zero());
        }
        assert!(smooth_by_triple_points(&q).unwrap());
        assert!(smooth_by_low_rank_quadric(&q).unwrap());
    }

    #[test]
    fn rank_three_quadric() {
        // first row x5² + x6² + x7²
        let q = QuadricSystem::from_i64(&[
            [0, 0, 0, 0, 1, 1, 1],
            [1, 0, 0, 2, 1, 2, 3],
            [0, 1, 0, 3, 1, 4, 9],
            [0, 0, 1, 5, 1, 8, 28],
        ])
        .unwrap();
        let s = smoothness(&q).unwrap();
        assert_eq!(
            s,
            Smoothness {
                smooth: false,
                witness: Some(vec![1, 2, 3, 4])
            }
        );
        assert!(!smooth_by_triple_points(&q).unwrap());
        assert!(!smooth_by_low_rank_quadric(&q).unwrap());
        let c = seven_line_config(&q).unwrap();
        assert!(c.minor(4, 5, 6).is_zero());
    }

    #[test]
    fn rank_deficient_system() {
        let q = QuadricSystem::from_i64(&[
            [1, 0, 0, 0, 1, 1, 1],
            [0, 1, 0, 0, 1, 2, 3],
            [1, 1, 0, 0, 2, 3, 4],
            [0, 0, 0, 1, 1, 8, 28],
        ])
        .unwrap();
        assert_eq!(
            seven_line_config(&q),
            Err(Error::RankDeficient {
                expected: 4,
                found: 3
            })
        );
        assert!(smoothness(&q).is_err());
    }

    #[test]
    fn slots_pair_with_kappa() {
        assert_eq!(drop_slots(1).unwrap(), [2, 3, 4, 5, 6, 7]);
        assert_eq!(drop_slots(7).unwrap(), [1, 6, 2, 5, 3, 4]);
        for k in 1..=7u8 {
            let s = drop_slots(k).unwrap();
            for p in 0..3 {
                assert_eq!(s[2 * p] ^ s[2 * p + 1], k);
            }
        }
        assert_eq!(drop_slots(0), Err(Error::MissingLabel("0".into())));
    }

    #[test]
    fn drop_paths_agree() {
        let q = generic();
        let c = seven_line_config(&q).unwrap();
        for k in 1..=7 {
            let a = drop_line(&c, k).unwrap();
            let b = drop_line_via_quadrics(&q, k).unwrap();
            assert!(equivalent(&a, &b).unwrap(), "kappa {k}");
        }
        let keys: std::collections::BTreeSet<_> = (1..=7)
            .map(|k| class_key(&drop_line(&c, k).unwrap()).unwrap())
            .collect();
        assert!(keys.len() > 1);
    }

    #[test]
    fn drop_line_survives_column_shuffles() {
        let c = seven_line_config(&generic()).unwrap();
        let shuffled = c.permuted(&[6, 2, 0, 5, 1, 3, 4]);
        assert_eq!(drop_line(&shuffled, 3).unwrap(), drop_line(&c, 3).unwrap());
    }

    #[test]
    fn single_node_is_extra_fixed() {
        // lines 1, 2, 4 meet at a point: a row supported on x1, x2, x4
        let q = QuadricSystem::from_i64(&[
            [1, 1, 0, 1, 0, 0, 0],
            [0, 1, 0, 0, 1, 2, 3],
            [0, 0, 1, 0, 1, 4, 9],
            [0, 0, 0, 1, 1, 8, 27],
        ])
        .unwrap();
        let c = seven_line_config(&q).unwrap();
        let r = node_report(&c, 7).unwrap();
        assert_eq!(
            r.nodes,
            vec![NodeEntry {
                characters: [1, 2, 4],
                kind: NodeKind::ExtraFixedNode
            }]
        );
        assert_eq!(node_report(&c, 1).unwrap().on_branch, 1);
        assert_eq!(node_report(&c, 3).unwrap().pair_fixed, 1);
        assert!(matches!(node_report(&c, 8), Err(Error::MissingLabel(_))));
    }

    #[test]
    fn degenerate_triples_are_flagged() {
        assert_eq!(classify_triple([1, 2, 3], 4), NodeKind::Degenerate);
        let mut census = std::collections::BTreeMap::new();
        for t in (1u8..=7).combinations(3) {
            *census
                .entry(format!("{:?}", classify_triple([t[0], t[1], t[2]], 5)))
                .or_insert(0) += 1;
        }
        assert_eq!(census["Degenerate"], 7);
        assert_eq!(census["ExtraFixedNode"], 4);
        assert_eq!(census["OnBranch"], 12);
        assert_eq!(census["PairFixed"], 12);
    }

    proptest! {
        #[test]
        fn smoothness_paths_agree(e in prop::collection::vec(-3i64..4, 28)) {
            let rows: Vec<Vec<i64>> = e.chunks(7).map(|r| r.to_vec()).collect();
            let q = QuadricSystem::from_i64(&rows).unwrap();
            prop_assume!(q.matrix().rank() == 4);
            let a = smoothness(&q).unwrap().smooth;
            prop_assert_eq!(a, smooth_by_triple_points(&q).unwrap());
            prop_assert_eq!(a, smooth_by_low_rank_quadric(&q).unwrap());
        }

        #[test]
        fn kernel_is_annihilated(e in prop::collection::vec(-3i64..4, 28)) {
            let rows: Vec<Vec<i64>> = e.chunks(7).map(|r| r.to_vec()).collect();
            let q = QuadricSystem::from_i64(&rows).unwrap();
            prop_assume!(q.matrix().rank() == 4);
            let Ok(c) = seven_line_config(&q) else { return Ok(()); };
            prop_assert!((q.matrix() * &c.matrix().transpose()).is_zero());
        }

        #[test]
        fn extra_fixed_nodes_at_most_four(e in prop::collection::vec(-1i64..2, 21), kappa in 1u8..8) {
            let rows: Vec<Vec<i64>> = e.chunks(7).map(|r| r.to_vec()).collect();
            let Ok(c) = ConfigMatrix::standard(Matrix::from_i64(&rows)) else { return Ok(()); };
            let r = node_report(&c, kappa).unwrap();
            prop_assert!(r.extra_fixed <= 4);
            prop_assert_eq!(r.degenerate + r.on_branch + r.pair_fixed + r.extra_fixed, r.nodes.len());
        }
    }
}
