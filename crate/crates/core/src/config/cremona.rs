//! The quadratic transformation based at the three pair vertices.

use num_traits::Zero;

use super::configuration::{cross, plucker, ConfigMatrix, PluckerVector};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// Vertex `p` is the meeting point of the lines in slots `2p` and `2p+1`.
pub fn pair_vertices(c: &ConfigMatrix) -> Result<Matrix> {
    if c.len() != 6 {
        return Err(Error::DimensionMismatch(format!(
            "cremona needs 6 lines, got {}",
            c.len()
        )));
    }
    let s = c.sorted_by_label();
    let rows: Vec<Vec<Rational>> = (0..3)
        .map(|p| cross(&s.column(2 * p), &s.column(2 * p + 1)).to_vec())
        .collect();
    Matrix::from_rows(rows)
}

/// Rewrite the lines in the basis of the pair vertices, where line `k`
/// has a zero in the row of its own pair, and swap the other two entries.
/// The result is only meaningful up to `GL₃` and column scalings.
pub fn cremona(c: &ConfigMatrix) -> Result<ConfigMatrix> {
    let n = pair_vertices(c)?;
    if n.det()?.is_zero() {
        return Err(Error::VerticesCollinear);
    }
    let s = c.sorted_by_label();
    let p = &n * s.matrix();
    let mut out = p.clone();
    for k in 0..6 {
        let own = k / 2;
        let others: Vec<usize> = (0..3).filter(|&r| r != own).collect();
        out.set(others[0], k, p.get(others[1], k).clone());
        out.set(others[1], k, p.get(others[0], k).clone());
        out.set(own, k, Rational::zero());
    }
    ConfigMatrix::standard(out)
}

/// The index swap on 3-subsets: a pair together with a line of a second
/// pair is exchanged with the third pair and the same line. Triples with
/// one line from each pair are fixed.
pub fn swap_triple(t: [usize; 3]) -> [usize; 3] {
    let pairs: Vec<usize> = t.iter().map(|&i| i / 2).collect();
    let full = (0..3).find(|&p| pairs.iter().filter(|&&q| q == p).count() == 2);
    let Some(full) = full else {
        return t;
    };
    let single = *t.iter().find(|&&i| i / 2 != full).expect("third line");
    let third = 3 - full - single / 2;
    let mut u = [2 * third, 2 * third + 1, single];
    u.sort_unstable();
    u
}

/// Sign carried by the exchange: `−1` when it swaps the first and third
/// pairs (the single line then lies in the middle pair). No column
/// rescaling absorbs it.
pub fn swap_sign(t: [usize; 3]) -> i64 {
    let moved = swap_triple(t) != t;
    let single = t
        .iter()
        .find(|&&i| t.iter().filter(|&&j| j / 2 == i / 2).count() == 1);
    match single {
        Some(&s) if moved && s / 2 == 1 => -1,
        _ => 1,
    }
}

/// Whether `b(T) = ε(T)·s·∏_{i∈T} t_i · a(σ(T))` for some nonzero `s`, `t`,
/// with `σ` = [`swap_triple`] and `ε` = [`swap_sign`]. Needs every value of
/// `a` and `b` nonzero.
pub fn is_swapped_rescaling(a: &PluckerVector, b: &PluckerVector) -> bool {
    if a.values.iter().chain(&b.values).any(|(_, v)| v.is_zero()) {
        return false;
    }
    let r = |t: [usize; 3]| {
        Rational::from_integer(swap_sign(t).into()) * b.get(t) / a.get(swap_triple(t))
    };
    let key = |x: usize, y: usize, z: usize| {
        let mut t = [x, y, z];
        t.sort_unstable();
        t
    };
    // r(A∪{i}) / r(A∪{j}) = t_i / t_j must not depend on A
    for i in 0..6 {
        for j in 0..6 {
            if i == j {
                continue;
            }
            let mut first: Option<Rational> = None;
            for x in 0..6 {
                for y in x + 1..6 {
                    if [i, j].contains(&x) || [i, j].contains(&y) {
                        continue;
                    }
                    let q = r(key(x, y, i)) / r(key(x, y, j));
                    match &first {
                        None => first = Some(q),
                        Some(f) if *f != q => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

pub fn plucker_swap_holds(c: &ConfigMatrix) -> Result<bool> {
    let a = plucker(&c.sorted_by_label());
    let b = plucker(&cremona(c)?);
    Ok(is_swapped_rescaling(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::canonical::equivalent;
    use proptest::prelude::*;

    fn generic() -> ConfigMatrix {
        ConfigMatrix::from_i64(&[[1, 0, 0, 1, 2, 3], [0, 1, 0, 1, 5, 7], [0, 0, 1, 1, 11, 13]])
            .unwrap()
    }

    #[test]
    fn swap_pattern() {
        let one = |t: [usize; 3]| t.map(|i| i + 1);
        let pairs = [
            ([1, 2, 3], [3, 5, 6]),
            ([1, 2, 4], [4, 5, 6]),
            ([1, 3, 4], [1, 5, 6]),
            ([2, 3, 4], [2, 5, 6]),
            ([1, 2, 5], [3, 4, 5]),
            ([1, 2, 6], [3, 4, 6]),
        ];
        for (a, b) in pairs {
            let a0 = a.map(|i| i - 1);
            assert_eq!(one(swap_triple(a0)), b);
            assert_eq!(swap_triple(swap_triple(a0)), a0);
        }
        assert_eq!(swap_triple([0, 2, 4]), [0, 2, 4]);
        assert_eq!(swap_sign([0, 1, 2]), -1);
        assert_eq!(swap_sign([0, 1, 4]), 1);
        assert_eq!(swap_sign([2, 4, 5]), -1);
        assert_eq!(swap_sign([0, 2, 4]), 1);
    }

    #[test]
    fn unsigned_swap_is_not_a_rescaling() {
        let c = generic();
        let a = plucker(&c);
        let b = plucker(&cremona(&c).unwrap());
        // flip the sign back out of b and the test must reject it
        let unsigned = PluckerVector {
            n: 6,
            values: b
                .values
                .iter()
                .map(|(t, v)| (*t, v * Rational::from_integer(swap_sign(*t).into())))
                .collect(),
        };
        assert!(is_swapped_rescaling(&a, &b));
        assert!(!is_swapped_rescaling(&a, &unsigned));
    }

    #[test]
    fn pattern_has_zero_in_own_row() {
        let c = generic();
        let n = pair_vertices(&c).unwrap();
        let p = &n * c.matrix();
        for k in 0..6 {
            assert!(p.get(k / 2, k).is_zero());
        }
    }

    #[test]
    fn involution_on_an_example() {
        let c = generic();
        let q = cremona(&c).unwrap();
        assert!(!equivalent(&q, &c).unwrap());
        assert!(equivalent(&cremona(&q).unwrap(), &c).unwrap());
        assert!(plucker_swap_holds(&c).unwrap());
    }

    #[test]
    fn collinear_vertices() {
        let d =
            ConfigMatrix::from_i64(&[[1, 0, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1], [0, 0, 0, 0, 1, 1]])
                .unwrap();
        // the first two pairs meet in the same point (0,0,1)
        assert_eq!(cremona(&d), Err(Error::VerticesCollinear));
    }

    proptest! {
        #[test]
        fn involution_and_swap(e in prop::collection::vec(-6i64..7, 18)) {
            let rows: Vec<Vec<i64>> = e.chunks(6).map(|r| r.to_vec()).collect();
            let m = Matrix::from_i64(&rows);
            let Ok(c) = ConfigMatrix::standard(m) else { return Ok(()); };
            prop_assume!(plucker(&c).values.iter().all(|(_, v)| !v.is_zero()));
            let Ok(q) = cremona(&c) else { return Ok(()); };
            prop_assume!(plucker(&q).values.iter().all(|(_, v)| !v.is_zero()));
            prop_assert!(equivalent(&cremona(&q).unwrap(), &c).unwrap());
            prop_assert!(is_swapped_rescaling(&plucker(&c), &plucker(&q)));
        }
    }
}
