//! Finite and continuous group actions on labeled configurations.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::canonical::{class_key, ClassKey};
use super::configuration::ConfigMatrix;
use super::cremona::cremona;
use super::f2::Gl3F2;
use super::seven::drop_slots;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// An element of `Z/2 ≀ S₃` acting on the six pair slots: the line in slot
/// `2p + s` moves to slot `2σ(p) + (s ⊕ εₚ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct W3 {
    pub sigma: [u8; 3],
    pub flips: [bool; 3],
}

impl W3 {
    pub const IDENTITY: W3 = W3 {
        sigma: [0, 1, 2],
        flips: [false; 3],
    };

    pub fn slot(&self, l: u8) -> u8 {
        let (p, s) = (usize::from(l / 2), l % 2);
        2 * self.sigma[p] + (s ^ u8::from(self.flips[p]))
    }

    pub fn permutation(&self) -> [u8; 6] {
        [0, 1, 2, 3, 4, 5].map(|l| self.slot(l))
    }

    pub fn from_permutation(perm: &[u8; 6]) -> Option<W3> {
        W3::all().into_iter().find(|w| &w.permutation() == perm)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &W3) -> W3 {
        let perm = [0, 1, 2, 3, 4, 5].map(|l| self.slot(other.slot(l)));
        W3::from_permutation(&perm).expect("W3 is closed under composition")
    }

    /// Parity as a permutation of the six slots, equal to the number of flips mod 2.
    pub fn is_even(&self) -> bool {
        self.flips.iter().filter(|&&f| f).count() % 2 == 0
    }

    pub fn all() -> Vec<W3> {
        let mut out = Vec::with_capacity(48);
        for sigma in (0u8..3).permutations(3) {
            for bits in 0u8..8 {
                out.push(W3 {
                    sigma: [sigma[0], sigma[1], sigma[2]],
                    flips: [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0],
                });
            }
        }
        out
    }

    /// The kernel of the signature, isomorphic to `S₄`.
    pub fn s4() -> Vec<W3> {
        W3::all().into_iter().filter(W3::is_even).collect()
    }
}

/// Parity of a permutation of `0..n`.
pub fn permutation_is_even(perm: &[u8]) -> bool {
    let inversions = (0..perm.len())
        .tuple_combinations()
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 0
}

#[serde_with::serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    W3(W3),
    Gl3F2(Gl3F2),
    /// Column scalings, indexed by column position.
    Torus(#[serde_as(as = "Vec<serde_with::DisplayFromStr>")] Vec<Rational>),
    /// Change of basis of the plane.
    Linear(Matrix),
    Cremona,
}

pub fn act(a: &Action, c: &ConfigMatrix) -> Result<ConfigMatrix> {
    let need = |n: usize| {
        if c.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "action needs {n} lines, got {}",
                c.len()
            )))
        }
    };
    match a {
        Action::W3(w) => {
            need(6)?;
            ConfigMatrix::new(
                c.matrix().clone(),
                c.labels().iter().map(|&l| w.slot(l)).collect(),
            )
        }
        Action::Gl3F2(g) => {
            need(7)?;
            ConfigMatrix::new(
                c.matrix().clone(),
                c.labels().iter().map(|&l| g.apply(l)).collect(),
            )
        }
        Action::Torus(t) => {
            if t.len() != c.len() || t.iter().any(Zero::is_zero) {
                return Err(Error::Invalid(
                    "torus needs one nonzero scalar per column".into(),
                ));
            }
            c.with_matrix(c.matrix() * &Matrix::diagonal(t))
        }
        Action::Linear(g) => {
            if g.rows() != 3 || g.cols() != 3 || g.det()?.is_zero() {
                return Err(Error::Invalid(
                    "linear action needs an invertible 3x3 matrix".into(),
                ));
            }
            c.with_matrix(g * c.matrix())
        }
        Action::Cremona => cremona(c),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    W3,
    S4,
    Glf2,
}

impl std::str::FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group> {
        match s {
            "w3" => Ok(Group::W3),
            "s4" => Ok(Group::S4),
            "glf2" => Ok(Group::Glf2),
            _ => Err(Error::Invalid(format!("unknown group {s}"))),
        }
    }
}

impl Group {
    pub fn elements(self) -> Vec<Action> {
        match self {
            Group::W3 => W3::all().into_iter().map(Action::W3).collect(),
            Group::S4 => W3::s4().into_iter().map(Action::W3).collect(),
            Group::Glf2 => Gl3F2::all().into_iter().map(Action::Gl3F2).collect(),
        }
    }
}

/// How the stabiliser of `kappa` in `GL₃(F₂)` moves the pair slots left
/// after dropping `kappa`.
pub fn kappa_stabilizer_image(kappa: u8) -> Result<Vec<W3>> {
    let slots = drop_slots(kappa)?;
    let slot_of = |chi: u8| {
        slots
            .iter()
            .position(|&s| s == chi)
            .expect("non-kappa character") as u8
    };
    let mut out: Vec<W3> = Gl3F2::all()
        .into_iter()
        .filter(|g| g.apply(kappa) == kappa)
        .map(|g| {
            let perm = slots.map(|chi| slot_of(g.apply(chi)));
            W3::from_permutation(&perm)
                .ok_or_else(|| Error::Invalid("stabiliser breaks the pairs".into()))
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Distinct equivalence classes met by the orbit of `c`.
pub fn orbit_classes(c: &ConfigMatrix, group: Group) -> Result<BTreeSet<ClassKey>> {
    group
        .elements()
        .iter()
        .map(|g| class_key(&act(g, c)?))
        .collect()
}

/// Partition of `items` into classes of the relation “some group element
/// carries one to a configuration equivalent to the other”. Classes are
/// ordered by their smallest class key, members by index.
pub fn orbit(items: &[ConfigMatrix], group: Group) -> Result<Vec<Vec<usize>>> {
    let mut by_key: BTreeMap<ClassKey, Vec<usize>> = BTreeMap::new();
    for (i, c) in items.iter().enumerate() {
        let key = orbit_classes(c, group)?
            .into_iter()
            .next()
            .expect("groups are nonempty");
        by_key.entry(key).or_default().push(i);
    }
    Ok(by_key.into_values().collect())
}

/// The labeled complete quadrangles whose pairs are opposite sides, sorted
/// by how `W₃` and `GL₃ ×` torus act on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrangleCensus {
    pub labelings: usize,
    /// Classes up to `GL₃ ×` torus with labels fixed.
    pub classes: usize,
    /// Classes once `W₃` relabelings are allowed.
    pub w3_classes: usize,
    pub even_preserve: bool,
    pub odd_swap: bool,
}

/// Sides of the quadrangle on `(1,0,0), (0,1,0), (0,0,1), (1,1,1)`, with
/// opposite sides in the same pair.
pub fn quadrangle() -> ConfigMatrix {
    ConfigMatrix::from_i64(&[
        [0, 1, 0, 1, 0, 1],
        [0, -1, 1, 0, 1, 0],
        [1, 0, 0, -1, -1, 0],
    ])
    .expect("valid configuration")
}

pub fn quadrangle_census() -> Result<QuadrangleCensus> {
    let base = quadrangle();
    let base_key = class_key(&base)?;
    let ws = W3::all();
    let configs: Vec<ConfigMatrix> = ws
        .iter()
        .map(|w| act(&Action::W3(*w), &base))
        .collect::<Result<_>>()?;
    let keys: Vec<ClassKey> = configs.iter().map(class_key).collect::<Result<_>>()?;
    let classes = keys.iter().collect::<BTreeSet<_>>().len();
    let even_preserve = ws
        .iter()
        .zip(&keys)
        .filter(|(w, _)| w.is_even())
        .all(|(_, k)| *k == base_key);
    let odd_swap = ws
        .iter()
        .zip(&keys)
        .filter(|(w, _)| !w.is_even())
        .all(|(_, k)| *k != base_key);
    let w3_classes = orbit(&configs, Group::W3)?.len();
    Ok(QuadrangleCensus {
        labelings: configs.len(),
        classes,
        w3_classes,
        even_preserve,
        odd_swap,
    })
}
