//! Graded pieces of the Jacobian ring of `f = Σ y_j Q_j` for a diagonal
//! quadric system, and multiplication by `x_κ` between two of them.
//!
//! Every piece is a monomial coordinate space with an explicit relation
//! matrix. Monomials of the form `x_i²·m·y_j` use the index `4i + j`
//! (`i` the character minus one, `j` the `y` index minus one).

use serde::{Deserialize, Serialize};

use crate::config::canonical::canonical_form;
use crate::config::f2::squarefree_triples;
use crate::config::seven::{drop_line, seven_line_config, smoothness, QuadricSystem};
use crate::error::{Error, Result};
use crate::linalg::matrix::intersect_row_spaces;
use crate::linalg::rational::int;
use crate::linalg::{Matrix, Rational};
use num_traits::Zero;

/// Exponents of `x_1..x_7` and the index `1..=4` of the single `y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub x: [u8; 7],
    pub y: u8,
}

impl Monomial {
    fn new(chars: &[u8], y: usize) -> Self {
        let mut x = [0u8; 7];
        for &c in chars {
            x[usize::from(c - 1)] += 1;
        }
        Monomial { x, y: y as u8 + 1 }
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().map(|&e| u32::from(e)).sum()
    }

    /// Character under `(Z/2)³`: the sum of the characters of odd exponent.
    pub fn character(&self) -> u8 {
        (0..7)
            .filter(|&i| self.x[i] % 2 == 1)
            .fold(0, |acc, i| acc ^ (i as u8 + 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    /// `(x-degree, y-degree)`.
    pub bidegree: (u32, u32),
    /// `0` for the invariant part, otherwise a character `1..=7`.
    pub character: u8,
    pub ambient_basis: Vec<Monomial>,
    /// Rows span the Jacobian ideal in this bidegree, in ambient coordinates.
    pub relation_matrix: Matrix,
    pub rank: usize,
    pub dimension: usize,
    /// Ambient indices of the monomials spanning the chosen complement:
    /// the non-pivot columns of the relation matrix.
    pub complement: Vec<usize>,
    /// Nonzero rows of the reduced echelon form of the relations.
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl GradedPiece {
    fn new(
        bidegree: (u32, u32),
        character: u8,
        ambient_basis: Vec<Monomial>,
        relations: Matrix,
    ) -> Self {
        let (r, pivots) = relations.rref();
        let complement: Vec<usize> = (0..ambient_basis.len())
            .filter(|c| !pivots.contains(c))
            .collect();
        let reduced = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        GradedPiece {
            bidegree,
            character,
            rank: pivots.len(),
            dimension: complement.len(),
            ambient_basis,
            relation_matrix: relations,
            complement,
            reduced,
            pivots,
        }
    }

    /// Complement coordinates of each row of `vectors` (ambient coordinates)
    /// modulo the relations.
    pub fn coordinates(&self, vectors: &Matrix) -> Result<Matrix> {
        if vectors.cols() != self.ambient_basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "vectors have {} entries, ambient has {}",
                vectors.cols(),
                self.ambient_basis.len()
            )));
        }
        let (r, pivots) = (&self.reduced, &self.pivots);
        let mut out = Matrix::zeros(vectors.rows(), self.dimension);
        for k in 0..vectors.rows() {
            let mut v = vectors.row(k).to_vec();
            for (i, &p) in pivots.iter().enumerate() {
                if v[p].is_zero() {
                    continue;
                }
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(r.row(i)) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            for (c, &m) in self.complement.iter().enumerate() {
                out.set(k, c, v[m].clone());
            }
        }
        Ok(out)
    }
}

fn check_kappa(kappa: u8) -> Result<usize> {
    if !(1..=7).contains(&kappa) {
        return Err(Error::MissingLabel(kappa.to_string()));
    }
    Ok(usize::from(kappa - 1))
}

pub fn require_smooth(q: &QuadricSystem) -> Result<()> {
    let s = smoothness(q)?;
    match s.witness {
        Some(w) => Err(Error::SmoothnessRequired(
            w.into_iter().map(usize::from).collect(),
        )),
        None => Ok(()),
    }
}

/// The products `Q_k·y_j` as vectors: the matrices `QᵀM` for the 16 units `M`.
fn products(q: &QuadricSystem) -> Matrix {
    let m = q.matrix();
    let mut out = Matrix::zeros(16, 28);
    for k in 0..4 {
        for j in 0..4 {
            for i in 0..7 {
                out.set(4 * k + j, 4 * i + j, m.get(k, i).clone());
            }
        }
    }
    out
}

/// One row per character `s`, supported on `x_s²` with `y` coefficients the
/// column `from` of `Q`; `from = s` gives `x_s ∂f/∂x_s / 2`.
fn single_rows(q: &QuadricSystem, rows: &[usize], from: impl Fn(usize) -> usize) -> Matrix {
    let m = q.matrix();
    let mut out = Matrix::zeros(rows.len(), 28);
    for (r, &s) in rows.iter().enumerate() {
        let c = from(s);
        for j in 0..4 {
            out.set(r, 4 * s + j, m.get(j, c).clone());
        }
    }
    out
}

fn diagonal_rows(q: &QuadricSystem) -> Matrix {
    single_rows(q, &(0..7).collect::<Vec<_>>(), |s| s)
}

/// `x_s²·∂f/∂x_κ / 2` for `s ≠ κ`.
fn substitution_rows(q: &QuadricSystem, k: usize) -> Matrix {
    let others: Vec<usize> = (0..7).filter(|&s| s != k).collect();
    single_rows(q, &others, |_| k)
}

fn square_monomials(extra: &[u8]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(28);
    for chi in 1u8..=7 {
        for j in 0..4 {
            let mut chars = vec![chi, chi];
            chars.extend_from_slice(extra);
            out.push(Monomial::new(&chars, j));
        }
    }
    out
}

/// The invariant part of `R_{1,0}`: monomials `x_i²y_j` modulo the products
/// `Q_k y_j` and the seven elements `Σ_j q_{ij} x_i² y_j`.
pub fn invariant_deformations(q: &QuadricSystem) -> Result<GradedPiece> {
    q.require_rank()?;
    let rel = products(q).vstack(&diagonal_rows(q))?;
    Ok(GradedPiece::new((2, 1), 0, square_monomials(&[]), rel))
}

/// The count `28 − 16 − 7 + 1` behind [`invariant_deformations`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceCount {
    pub ambient: usize,
    pub products_rank: usize,
    pub rows_rank: usize,
    pub overlap: usize,
    pub relation_rank: usize,
    pub dimension: usize,
}

pub fn source_count(q: &QuadricSystem) -> Result<SourceCount> {
    let piece = invariant_deformations(q)?;
    let (a, r) = (products(q), diagonal_rows(q));
    Ok(SourceCount {
        ambient: piece.ambient_basis.len(),
        products_rank: a.rank(),
        rows_rank: r.rank(),
        overlap: intersect_row_spaces(&a, &r)?.rows(),
        relation_rank: piece.rank,
        dimension: piece.dimension,
    })
}

/// First summand of `R_{5,1}^{(κ)}` without the smoothness precondition:
/// monomials `x_i² x_κ y_j` modulo `x_κ Q_l y_j`, the seven diagonal
/// elements and the six elements `x_s² ∂f/∂x_κ`.
pub fn first_summand_unchecked(q: &QuadricSystem, kappa: u8) -> Result<GradedPiece> {
    let k = check_kappa(kappa)?;
    q.require_rank()?;
    let rel = products(q)
        .vstack(&diagonal_rows(q))?
        .vstack(&substitution_rows(q, k))?;
    Ok(GradedPiece::new(
        (3, 1),
        kappa,
        square_monomials(&[kappa]),
        rel,
    ))
}

/// Second summand: squarefree `x_p x_q x_r y_j` with `p + q + r = κ`, modulo
/// `x_p x_q x_r Σ_j q_{pj} y_j` for each member `p` of each triple.
pub fn second_summand_unchecked(q: &QuadricSystem, kappa: u8) -> Result<GradedPiece> {
    check_kappa(kappa)?;
    q.require_rank()?;
    let triples = squarefree_triples(kappa);
    let n = 4 * triples.len();
    let mut ambient = Vec::with_capacity(n);
    let mut rel = Matrix::zeros(3 * triples.len(), n);
    for (t, tri) in triples.iter().enumerate() {
        for j in 0..4 {
            ambient.push(Monomial::new(tri, j));
        }
        for (m, &p) in tri.iter().enumerate() {
            for j in 0..4 {
                rel.set(
                    3 * t + m,
                    4 * t + j,
                    q.matrix().get(j, usize::from(p - 1)).clone(),
                );
            }
        }
    }
    Ok(GradedPiece::new((3, 1), kappa, ambient, rel))
}

/// Both summands of `R_{5,1}^{(κ)}`; requires a smooth system.
pub fn kappa_target(q: &QuadricSystem, kappa: u8) -> Result<(GradedPiece, GradedPiece)> {
    check_kappa(kappa)?;
    require_smooth(q)?;
    Ok((
        first_summand_unchecked(q, kappa)?,
        second_summand_unchecked(q, kappa)?,
    ))
}

/// The relation rank of the first summand, computed three ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRankCount {
    /// Rank of the stacked relation matrix.
    pub full_rank: usize,
    pub products_rank: usize,
    /// Rank of the diagonal and substitution elements together.
    pub rows_rank: usize,
    /// Dimension of `{M : r_κ M ∈ ⟨r_κ⟩, r_i M ∈ ⟨r_i, r_κ⟩}`, with `r_i` the
    /// rows of `Qᵀ`.
    pub scalar_dim: usize,
    pub scalar_count: usize,
    /// Dimension of the intersection of the two relation spans.
    pub intersection_dim: usize,
    pub inclusion_exclusion: usize,
}

impl TargetRankCount {
    pub fn consistent(&self) -> bool {
        self.full_rank == self.scalar_count
            && self.full_rank == self.inclusion_exclusion
            && self.scalar_dim == self.intersection_dim
    }
}

pub fn target_rank_count(q: &QuadricSystem, kappa: u8) -> Result<TargetRankCount> {
    let k = check_kappa(kappa)?;
    q.require_rank()?;
    let a = products(q);
    let rows = diagonal_rows(q).vstack(&substitution_rows(q, k))?;
    let full_rank = a.vstack(&rows)?.rank();
    let (products_rank, rows_rank) = (a.rank(), rows.rank());

    // M ↦ QᵀM is injective for rank 4, so the intersection is a space of M.
    let m = q.matrix();
    let r = |i: usize| m.col(i);
    let mut conditions: Vec<Vec<Rational>> = Vec::new();
    for i in 0..7 {
        let span = if i == k { vec![r(k)] } else { vec![r(i), r(k)] };
        let annihilator = Matrix::from_rows(span)?.kernel_basis();
        let ri = r(i);
        for n in annihilator.to_rows() {
            let mut row = vec![Rational::zero(); 16];
            for a in 0..4 {
                for b in 0..4 {
                    row[4 * a + b] = &ri[a] * &n[b];
                }
            }
            conditions.push(row);
        }
    }
    let scalar_dim = 16 - Matrix::from_rows(conditions)?.rank();
    let intersection_dim = intersect_row_spaces(&a, &rows)?.rows();
    Ok(TargetRankCount {
        full_rank,
        products_rank,
        rows_rank,
        scalar_dim,
        scalar_count: products_rank + rows_rank - scalar_dim,
        intersection_dim,
        inclusion_exclusion: products_rank + rows_rank - intersection_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodMapData {
    pub kappa: u8,
    pub source: GradedPiece,
    pub target: GradedPiece,
    /// Row `m` is the image of the `m`-th source basis monomial.
    pub matrix: Matrix,
    pub rank: usize,
    /// Rows span `{c : c·matrix = 0}`, in source complement coordinates.
    pub kernel: Matrix,
}

/// Multiplication by `x_κ` from the invariant deformations to the first
/// summand of `R_{5,1}^{(κ)}`.
pub fn period_map(q: &QuadricSystem, kappa: u8) -> Result<PeriodMapData> {
    check_kappa(kappa)?;
    require_smooth(q)?;
    period_map_unchecked(q, kappa)
}

pub fn period_map_unchecked(q: &QuadricSystem, kappa: u8) -> Result<PeriodMapData> {
    period_map_from(q, kappa, invariant_deformations(q)?)
}

/// [`period_map_unchecked`] with the source piece already computed.
pub fn period_map_from(q: &QuadricSystem, kappa: u8, source: GradedPiece) -> Result<PeriodMapData> {
    let target = first_summand_unchecked(q, kappa)?;
    // both ambients are indexed by (i, j), so x_κ acts as the identity there
    let mut units = Matrix::zeros(source.dimension, 28);
    for (r, &m) in source.complement.iter().enumerate() {
        units.set(r, m, int(1));
    }
    let matrix = target.coordinates(&units)?;
    let rank = matrix.rank();
    let kernel = matrix.transpose().kernel_basis();
    Ok(PeriodMapData {
        kappa,
        source,
        target,
        matrix,
        rank,
        kernel,
    })
}

/// First-order change of `f` under `x_from² ↦ x_from² + h Σ_s ε_s x_s²`, as a
/// vector in the ambient of [`invariant_deformations`].
pub fn deformation_vector(
    q: &QuadricSystem,
    from: u8,
    eps: &[Rational; 7],
) -> Result<Vec<Rational>> {
    let f = check_kappa(from)?;
    let mut v = vec![Rational::zero(); 28];
    for s in (0..7).filter(|&s| s != f) {
        for j in 0..4 {
            v[4 * s + j] = &eps[s] * q.matrix().get(j, f);
        }
    }
    Ok(v)
}

/// The system after `x_from² ↦ x_from² + h Σ_{s ≠ from} ε_s x_s²`: column
/// `s` gains `h ε_s` times column `from`.
pub fn substitute(
    q: &QuadricSystem,
    from: u8,
    eps: &[Rational; 7],
    h: &Rational,
) -> Result<QuadricSystem> {
    let f = check_kappa(from)?;
    let mut m = q.matrix().clone();
    for s in (0..7).filter(|&s| s != f) {
        for k in 0..4 {
            let x = m.get(k, s) + h * &eps[s] * q.matrix().get(k, f);
            m.set(k, s, x);
        }
    }
    QuadricSystem::new(m)
}

/// How the kernel of [`period_map`] compares with the substitutions of
/// `x_κ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCheck {
    pub kernel_dim: usize,
    /// Rank of the six substitution directions in source coordinates.
    pub substitution_rank: usize,
    /// Rank of kernel and substitutions together.
    pub joint_rank: usize,
}

impl KernelCheck {
    pub fn spans_kernel(&self) -> bool {
        self.kernel_dim == self.substitution_rank && self.joint_rank == self.kernel_dim
    }
}

pub fn kernel_check(q: &QuadricSystem, kappa: u8) -> Result<KernelCheck> {
    kernel_check_of(q, &period_map(q, kappa)?)
}

pub fn kernel_check_of(q: &QuadricSystem, data: &PeriodMapData) -> Result<KernelCheck> {
    let k = check_kappa(data.kappa)?;
    let subs = data.source.coordinates(&substitution_rows(q, k))?;
    let joint = if data.kernel.rows() == 0 {
        subs.clone()
    } else {
        data.kernel.vstack(&subs)?
    };
    Ok(KernelCheck {
        kernel_dim: data.kernel.rows(),
        substitution_rank: subs.rank(),
        joint_rank: joint.rank(),
    })
}

/// Whether the canonical form of the six lines left after dropping `kappa`
/// is the same for `q` and for `substitute(q, from, eps, h)`.
pub fn dropped_lines_unchanged(
    q: &QuadricSystem,
    kappa: u8,
    from: u8,
    eps: &[Rational; 7],
    h: &Rational,
) -> Result<bool> {
    let before = canonical_form(&drop_line(&seven_line_config(q)?, kappa)?)?;
    let moved = substitute(q, from, eps, h)?;
    let after = canonical_form(&drop_line(&seven_line_config(&moved)?, kappa)?)?;
    Ok(before.config == after.config)
}

/// `diag(t)` on the variables and `g` on the span of the quadrics.
pub fn torus_act(q: &QuadricSystem, g: &Matrix, t: &[Rational; 7]) -> Result<QuadricSystem> {
    let mut m = g.try_mul(q.matrix())?;
    for (i, ti) in t.iter().enumerate() {
        for k in 0..m.rows() {
            let x = m.get(k, i) * ti;
            m.set(k, i, x);
        }
    }
    QuadricSystem::new(m)
}
