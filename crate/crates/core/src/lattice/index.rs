//! The 2-exponent of the index of a pullback map of lattices.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexFormulaInput {
    /// 2-length of the torsion on the base.
    pub ell2_base: u32,
    /// 2-length of the invariant torsion on the cover.
    pub ell2_cover: u32,
    /// Number of ramification components.
    pub rho: u32,
    pub kappa_trivial: bool,
}

/// `ℓ₂(base) − ℓ₂(cover) + ρ − ε`, with `ε = 1` iff the character is trivial.
pub fn index_exponent(inp: &IndexFormulaInput) -> i64 {
    i64::from(inp.ell2_base) - i64::from(inp.ell2_cover) + i64::from(inp.rho)
        - i64::from(inp.kappa_trivial)
}
