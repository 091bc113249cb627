//! The quadratic space `F₂⁷` carrying the sign vectors, and the character
//! group `F₂³` labelling the seven coordinates.
//!
//! A vector of `F₂⁷` is a `u8` with bit `i` for coordinate `i`. A character
//! is an integer `1..=7`; its binary digits, most significant first, form
//! the corresponding column of [`G_ROWS`].

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

pub const ALL_ONES: u8 = 0b111_1111;

/// Rows of the distinguished 3×7 matrix, coordinate `i` in bit `i`.
pub const G_ROWS: [u8; 3] = [0b111_1000, 0b110_0110, 0b101_0101];

pub fn bit(x: u8, i: usize) -> u8 {
    (x >> i) & 1
}

pub fn popcount(x: u8) -> u32 {
    x.count_ones()
}

/// `Σxᵢ² + Σ_{i<j} xᵢxⱼ`, evaluated term by term.
pub fn q(x: u8) -> u8 {
    let squares: u32 = (0..7).map(|i| u32::from(bit(x, i))).sum();
    let cross: u32 = (0..7)
        .tuple_combinations()
        .map(|(i, j)| u32::from(bit(x, i) * bit(x, j)))
        .sum();
    ((squares + cross) % 2) as u8
}

/// `Σ_{i≠j} uᵢvⱼ`.
pub fn b(u: u8, v: u8) -> u8 {
    let s: u32 = (0..7)
        .flat_map(|i| (0..7).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| u32::from(bit(u, i) * bit(v, j)))
        .sum();
    (s % 2) as u8
}

pub fn is_isotropic(x: u8) -> bool {
    q(x) == 0
}

/// Weight of the sign vector `((−1)^{xᵢ})`: the absolute trace, which is
/// constant on the classes modulo `±1`.
pub fn weight(x: u8) -> u32 {
    (7 - 2 * popcount(x) as i32).unsigned_abs()
}

/// Elements of the span of `gens`.
pub fn span(gens: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8];
    for &g in gens {
        if out.contains(&g) {
            continue;
        }
        let more: Vec<u8> = out.iter().map(|&x| x ^ g).collect();
        out.extend(more);
    }
    out.sort_unstable();
    out
}

pub fn rank(gens: &[u8]) -> u32 {
    span(gens).len().trailing_zeros()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2Census {
    /// Weight histogram over `F₂⁷ / ⟨(1,…,1)⟩`.
    pub weights: BTreeMap<u32, usize>,
    /// `q(x) = 0` iff the popcount is 0, 3, 4 or 7, for all 128 vectors.
    pub isotropy_rule: bool,
    /// `q(x) = n(n+1)/2 mod 2` for all 128 vectors.
    pub closed_form: bool,
    pub radical: Vec<u8>,
    pub g_rank: u32,
    pub g_totally_isotropic: bool,
    /// `b(eᵢ, ·)` on the rows of `G` reproduces column `i`.
    pub g_columns_match: bool,
    /// Isotropic elements of the quotient (the class of zero included).
    pub isotropic_classes: usize,
    /// Weights of the nonzero elements of `G`.
    pub g_weights: Vec<u32>,
}

pub fn census() -> F2Census {
    let all = 0u8..128;
    let mut weights = BTreeMap::new();
    for x in all.clone().filter(|x| bit(*x, 6) == 0) {
        *weights.entry(weight(x)).or_insert(0) += 1;
    }
    let isotropy_rule = all
        .clone()
        .all(|x| is_isotropic(x) == [0, 3, 4, 7].contains(&popcount(x)));
    let closed_form = all.clone().all(|x| {
        let n = popcount(x);
        u32::from(q(x)) == (n * (n + 1) / 2) % 2
    });
    let radical = all
        .clone()
        .filter(|&x| (0..128u8).all(|y| b(x, y) == 0))
        .collect();
    let g = span(&G_ROWS);
    let g_totally_isotropic =
        g.iter().all(|&x| is_isotropic(x)) && g.iter().all(|&x| g.iter().all(|&y| b(x, y) == 0));
    let g_columns_match = (0..7).all(|i| {
        let col: Vec<u8> = G_ROWS.iter().map(|&r| bit(r, i)).collect();
        let pairing: Vec<u8> = G_ROWS.iter().map(|&r| b(1 << i, r)).collect();
        col == pairing && character_bits(i as u8 + 1) == col
    });
    let isotropic_classes = all
        .clone()
        .filter(|x| bit(*x, 6) == 0 && is_isotropic(*x))
        .count();
    F2Census {
        weights,
        isotropy_rule,
        closed_form,
        radical,
        g_rank: rank(&G_ROWS),
        g_totally_isotropic,
        g_columns_match,
        isotropic_classes,
        g_weights: g.iter().filter(|&&x| x != 0).map(|&x| weight(x)).collect(),
    }
}

/// Binary digits of a character, most significant first.
pub fn character_bits(chi: u8) -> Vec<u8> {
    (0..3).rev().map(|k| (chi >> k) & 1).collect()
}

/// Unordered bases of `F₂³`, as increasing character triples.
pub fn bases() -> Vec<[u8; 3]> {
    (1u8..=7)
        .tuple_combinations()
        .filter(|&(a, b, c)| a ^ b ^ c != 0)
        .map(|(a, b, c)| [a, b, c])
        .collect()
}

/// Number of bases with each sum `1..=7`.
pub fn bases_by_sum() -> BTreeMap<u8, usize> {
    let mut m = BTreeMap::new();
    for t in bases() {
        *m.entry(t[0] ^ t[1] ^ t[2]).or_insert(0) += 1;
    }
    m
}

/// Squarefree triples of distinct characters summing to `kappa`, none equal to it.
pub fn squarefree_triples(kappa: u8) -> Vec<[u8; 3]> {
    (1u8..=7)
        .filter(|&c| c != kappa)
        .tuple_combinations()
        .filter(|&(a, b, c)| a ^ b ^ c == kappa)
        .map(|(a, b, c)| [a, b, c])
        .collect()
}

/// A 3×3 matrix over `F₂` as three row bytes, acting on characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gl3F2(pub [u8; 3]);

impl Gl3F2 {
    pub const IDENTITY: Gl3F2 = Gl3F2([0b100, 0b010, 0b001]);

    /// Image of a character read as a column vector.
    pub fn apply(&self, chi: u8) -> u8 {
        self.0
            .iter()
            .fold(0, |acc, &row| (acc << 1) | (popcount(row & chi) % 2) as u8)
    }

    pub fn compose(&self, other: &Gl3F2) -> Gl3F2 {
        // columns of self∘other are self applied to other's columns
        let cols: Vec<u8> = (0..3)
            .rev()
            .map(|k| self.apply(other.apply(1 << k)))
            .collect();
        let rows = [0, 1, 2].map(|r| {
            cols.iter()
                .fold(0, |acc, &c| (acc << 1) | ((c >> (2 - r)) & 1))
        });
        Gl3F2(rows)
    }

    pub fn is_invertible(&self) -> bool {
        rank(&self.0) == 3
    }

    pub fn all() -> Vec<Gl3F2> {
        (0u16..512)
            .map(|m| Gl3F2([(m >> 6) as u8 & 7, (m >> 3) as u8 & 7, m as u8 & 7]))
            .filter(Gl3F2::is_invertible)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn census_values() {
        let c = census();
        let expected: BTreeMap<u32, usize> =
            [(7, 1), (5, 7), (3, 21), (1, 35)].into_iter().collect();
        assert_eq!(c.weights, expected);
        assert!(c.isotropy_rule && c.closed_form);
        assert_eq!(c.radical, vec![0, ALL_ONES]);
        assert_eq!(c.g_rank, 3);
        assert!(c.g_totally_isotropic);
        assert!(c.g_columns_match);
        assert_eq!(c.g_weights, vec![1; 7]);
    }

    #[test]
    fn basis_census() {
        assert_eq!(bases().len(), 28);
        assert!(bases_by_sum().values().all(|&n| n == 4));
        assert_eq!(bases_by_sum().len(), 7);
        // a basis sum never lies in the basis, so the triples avoiding κ are the same four
        for k in 1..=7 {
            assert_eq!(squarefree_triples(k).len(), 4);
        }
    }

    #[test]
    fn gl3_has_order_168() {
        let g = Gl3F2::all();
        assert_eq!(g.len(), 168);
        for a in &g {
            let images: Vec<u8> = (1..=7).map(|c| a.apply(c)).sorted().collect();
            assert_eq!(images, (1..=7).collect::<Vec<u8>>());
        }
        let stab = g.iter().filter(|a| a.apply(3) == 3).count();
        assert_eq!(stab, 24);
    }

    proptest! {
        #[test]
        fn b_closed_form(u in 0u8..128, v in 0u8..128) {
            let expected = (popcount(u) * popcount(v) + popcount(u & v)) % 2;
            prop_assert_eq!(u32::from(b(u, v)), expected);
            prop_assert_eq!(b(u, v), b(v, u));
            // q is a quadratic refinement of b
            prop_assert_eq!(q(u ^ v) ^ q(u) ^ q(v), b(u, v));
        }

        #[test]
        fn weight_is_sign_invariant(x in 0u8..128) {
            prop_assert_eq!(weight(x), weight(x ^ ALL_ONES));
            prop_assert_eq!(q(x), q(x ^ ALL_ONES));
        }

        #[test]
        fn gl3_action_is_a_homomorphism(i in 0usize..168, j in 0usize..168, chi in 1u8..8) {
            let g = Gl3F2::all();
            prop_assert_eq!(g[i].compose(&g[j]).apply(chi), g[i].apply(g[j].apply(chi)));
        }
    }
}
