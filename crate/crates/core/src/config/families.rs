//! Explicit parameter families of six-line configurations.

use serde::{Deserialize, Serialize};

use super::canonical::canonical_form;
use super::configuration::{plucker, ConfigMatrix};
use super::cremona::cremona;
use crate::error::Result;
use crate::linalg::rational::int;
use crate::linalg::{Matrix, Rational};
use num_traits::Zero;

fn config(rows: [[Rational; 6]; 3]) -> Result<ConfigMatrix> {
    ConfigMatrix::standard(Matrix::from_rows(
        rows.into_iter().map(Vec::from).collect(),
    )?)
}

/// Deformation of the complete quadrangle: columns `(1,1,1)`, `(1,1,−1)`,
/// `(1,−1,1)`, `(1,−1,−1)`, `(a+b, 1, a−b)`, `(1, c+d, c−d)`.
pub fn quadrangle_family(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<ConfigMatrix> {
    let (one, m) = (int(1), int(-1));
    config([
        [
            one.clone(),
            one.clone(),
            one.clone(),
            one.clone(),
            a + b,
            one.clone(),
        ],
        [
            one.clone(),
            one.clone(),
            m.clone(),
            m.clone(),
            one.clone(),
            c + d,
        ],
        [one.clone(), m.clone(), one.clone(), m, a - b, c - d],
    ])
}

/// The affine chart `[[1,0,0,1,a,b],[0,1,0,1,c,d],[0,0,1,1,e,f]]`.
pub fn chart(p: &[Rational; 6]) -> Result<ConfigMatrix> {
    let [a, b, c, d, e, f] = p.clone();
    let (o, z) = (int(1), int(0));
    config([
        [o.clone(), z.clone(), z.clone(), o.clone(), a, b],
        [z.clone(), o.clone(), z.clone(), o.clone(), c, d],
        [z.clone(), z, o.clone(), o, e, f],
    ])
}

/// The slice `N(t,a,b,c,d)` through a polystable point with four
/// concurrent lines and a doubled pair.
pub fn etale_slice(
    t: &Rational,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<ConfigMatrix> {
    let (o, z) = (int(1), int(0));
    config([
        [
            o.clone(),
            z.clone(),
            o.clone(),
            o.clone(),
            z.clone(),
            c.clone(),
        ],
        [
            z.clone(),
            o.clone(),
            o.clone(),
            t.clone(),
            z.clone(),
            d.clone(),
        ],
        [z.clone(), z, a.clone(), b.clone(), o.clone(), o],
    ])
}

/// The Cremona involution on the slice: `Q(N(t,a,b,c,d))` with its first
/// four columns reversed is equivalent to `N(t,c,d,a,b)`.
pub fn etale_identity(
    t: &Rational,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<bool> {
    let q = cremona(&etale_slice(t, a, b, c, d)?)?;
    let reversed = q.with_columns(&[3, 2, 1, 0, 4, 5]);
    let target = etale_slice(t, c, d, a, b)?;
    Ok(canonical_form(&reversed)?.config == canonical_form(&target)?.config)
}

/// One component of a triple-point locus in the chart with `a = b = 1`:
/// the minor on `lines` equals `coefficient · (x − shift)` for the chart
/// coordinate `x` at `coordinate` (0..6 for a..f).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub lines: [usize; 3],
    pub coordinate: usize,
    pub shift: i64,
    pub coefficient: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFamily {
    pub name: &'static str,
    pub components: Vec<Component>,
    /// A point of the chart where every component vanishes.
    pub base: [i64; 6],
}

fn comp(lines: [usize; 3], coordinate: usize, shift: i64, coefficient: i64) -> Component {
    Component {
        lines,
        coordinate,
        shift,
        coefficient,
    }
}

/// Neighbourhoods of configurations with one to four triple points.
pub fn local_families() -> Vec<LocalFamily> {
    let (c, d, e, f) = (2, 3, 4, 5);
    let m125 = comp([0, 1, 4], e, 0, 1);
    let m346 = comp([2, 3, 5], d, 1, 1);
    let m345 = comp([2, 3, 4], c, 1, 1);
    let m136 = comp([0, 2, 5], d, 0, -1);
    let m246 = comp([1, 3, 5], f, 1, -1);
    vec![
        LocalFamily {
            name: "1",
            components: vec![m125.clone()],
            base: [1, 1, 3, 5, 0, 2],
        },
        LocalFamily {
            name: "2a",
            components: vec![m125.clone(), m346.clone()],
            base: [1, 1, 3, 1, 0, 2],
        },
        LocalFamily {
            name: "2b",
            components: vec![m125.clone(), m345.clone()],
            base: [1, 1, 1, 5, 0, 2],
        },
        LocalFamily {
            name: "3",
            components: vec![m125.clone(), m345.clone(), m136.clone()],
            base: [1, 1, 1, 0, 0, 2],
        },
        LocalFamily {
            name: "4",
            components: vec![m125, m345, m136, m246],
            base: [1, 1, 1, 0, 0, 1],
        },
    ]
}

impl LocalFamily {
    /// For every subset of components, move the base point off the others by
    /// the nonzero `offsets` (indexed by coordinate) and also along the free
    /// coordinates; the vanishing minors must be exactly the kept components.
    pub fn locus_matches(&self, offsets: &[Rational; 6]) -> Result<bool> {
        let k = self.components.len();
        let used: Vec<usize> = self.components.iter().map(|c| c.coordinate).collect();
        for mask in 0u32..(1 << k) {
            let mut p = self.base.map(int);
            // a and b stay at 1 in the chart
            for x in 2..6 {
                let on = used
                    .iter()
                    .position(|&u| u == x)
                    .map(|i| mask >> i & 1 == 1);
                if on != Some(true) {
                    p[x] = &p[x] + &offsets[x];
                }
            }
            let pv = plucker(&chart(&p)?);
            let zero: Vec<[usize; 3]> = pv
                .values
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(t, _)| *t)
                .collect();
            let mut want: Vec<[usize; 3]> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.components[i].lines)
                .collect();
            want.sort_unstable();
            if zero != want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
