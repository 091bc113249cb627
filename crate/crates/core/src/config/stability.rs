//! GIT stability of six lines, decided from coincidences and concurrences.

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::configuration::{cross, ConfigMatrix};
use crate::error::{Error, Result};
use crate::linalg::matrix::dot;
use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Polystable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub status: Status,
    pub stratum: String,
    /// Maximal sets of at least three concurrent lines.
    pub concurrent: Vec<Vec<usize>>,
    /// Classes of at least two identical lines.
    pub coincident: Vec<Vec<usize>>,
}

/// Sign of the two one-parameter-subgroup weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightVerdict {
    Unstable,
    Semistable,
    Stable,
}

impl Status {
    pub fn verdict(self) -> WeightVerdict {
        match self {
            Status::Stable => WeightVerdict::Stable,
            Status::StrictlySemistable | Status::Polystable => WeightVerdict::Semistable,
            Status::Unstable => WeightVerdict::Unstable,
        }
    }
}

struct Incidence {
    classes: Vec<Vec<usize>>,
    /// Maximal concurrent sets through the meeting point of two distinct lines.
    points: Vec<Vec<usize>>,
}

fn incidence(c: &ConfigMatrix) -> Result<Incidence> {
    let n = c.len();
    if let Some(j) = (0..n).find(|&j| c.column(j).iter().all(Zero::is_zero)) {
        return Err(Error::ZeroColumn(j));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        match classes.iter_mut().find(|cl| c.coincident(cl[0], j)) {
            Some(cl) => cl.push(j),
            None => classes.push(vec![j]),
        }
    }
    let mut points: Vec<Vec<usize>> = Vec::new();
    for (i, j) in (0..n).tuple_combinations() {
        if c.coincident(i, j) {
            continue;
        }
        let p: [Rational; 3] = cross(&c.column(i), &c.column(j));
        let through: Vec<usize> = (0..n)
            .filter(|&k| dot(&c.column(k), &p).is_zero())
            .collect();
        if !points.contains(&through) {
            points.push(through);
        }
    }
    points.sort();
    Ok(Incidence { classes, points })
}

/// Classify a six-line configuration into its stratum.
pub fn stability(c: &ConfigMatrix) -> Result<StabilityReport> {
    if c.len() != 6 {
        return Err(Error::DimensionMismatch(format!(
            "stability needs 6 lines, got {}",
            c.len()
        )));
    }
    let inc = incidence(c)?;
    let kmax = inc.classes.iter().map(Vec::len).max().unwrap_or(0);
    let cmax = if inc.points.is_empty() {
        6
    } else {
        inc.points.iter().map(Vec::len).max().unwrap_or(0)
    };
    let pairs: Vec<&Vec<usize>> = inc.classes.iter().filter(|cl| cl.len() == 2).collect();
    let four: Vec<&Vec<usize>> = inc.points.iter().filter(|p| p.len() == 4).collect();

    let (status, stratum) = if kmax >= 3 {
        (Status::Unstable, "213")
    } else if cmax >= 5 {
        (Status::Unstable, "141")
    } else if pairs.len() == 3 {
        (Status::Polystable, "222")
    } else if cmax == 4 {
        let inside = four
            .iter()
            .any(|p| pairs.iter().any(|cl| cl.iter().all(|j| p.contains(j))));
        let apart = four
            .iter()
            .any(|p| pairs.iter().any(|cl| cl.iter().all(|j| !p.contains(j))));
        if inside {
            (Status::StrictlySemistable, "222")
        } else if apart {
            (Status::Polystable, "231=312")
        } else {
            (Status::StrictlySemistable, "231")
        }
    } else if kmax == 2 {
        (Status::StrictlySemistable, "312")
    } else if cmax == 3 {
        (Status::Stable, "321")
    } else {
        (Status::Stable, "411")
    };
    Ok(StabilityReport {
        status,
        stratum: stratum.to_string(),
        concurrent: inc.points.into_iter().filter(|p| p.len() >= 3).collect(),
        coincident: inc.classes.into_iter().filter(|cl| cl.len() >= 2).collect(),
    })
}

/// Stability read off the weights `(2,−1,−1)` and `(1,1,−2)`: with `i = 6 − c`
/// (`c` the most lines through a point) and `k` the largest coincident class,
/// the signs of `3i − 6` and `6 − 3k` decide.
pub fn weight_verdict(c: &ConfigMatrix) -> Result<WeightVerdict> {
    let inc = incidence(c)?;
    let n = c.len() as i64;
    let k = inc.classes.iter().map(Vec::len).max().unwrap_or(0) as i64;
    let conc = if inc.points.is_empty() {
        n
    } else {
        inc.points.iter().map(Vec::len).max().unwrap_or(0) as i64
    };
    let i = n - conc;
    let w = (3 * i - 6).min(6 - 3 * k);
    Ok(match w.signum() {
        -1 => WeightVerdict::Unstable,
        0 => WeightVerdict::Semistable,
        _ => WeightVerdict::Stable,
    })
}

/// One configuration per stratum.
pub mod witnesses {
    use super::*;

    fn cfg(rows: [[i64; 6]; 3]) -> ConfigMatrix {
        ConfigMatrix::from_i64(&rows).expect("valid witness")
    }

    /// Stratum name, expected status and a configuration.
    pub fn all() -> Vec<(&'static str, Status, ConfigMatrix)> {
        vec![
            (
                "411",
                Status::Stable,
                cfg([[1, 0, 0, 1, 2, 3], [0, 1, 0, 1, 5, 7], [0, 0, 1, 1, 11, 13]]),
            ),
            // lines 0,1,4 through (0,0,1)
            (
                "321",
                Status::Stable,
                cfg([[1, 0, 0, 1, 2, 3], [0, 1, 0, 1, 5, 7], [0, 0, 1, 1, 0, 13]]),
            ),
            // lines 0,1,4,5 through (0,0,1)
            (
                "231",
                Status::StrictlySemistable,
                cfg([[1, 0, 0, 1, 2, 3], [0, 1, 0, 1, 5, 7], [0, 0, 1, 1, 0, 0]]),
            ),
            (
                "312",
                Status::StrictlySemistable,
                cfg([[1, 0, 0, 1, 2, 2], [0, 1, 0, 1, 5, 5], [0, 0, 1, 1, 11, 11]]),
            ),
            // 0,1,4 through (0,0,1) with 4 = 5
            (
                "222",
                Status::StrictlySemistable,
                cfg([[1, 0, 0, 1, 2, 2], [0, 1, 0, 1, 5, 5], [0, 0, 1, 1, 0, 0]]),
            ),
            // 0,1,2,3 through (1,1,-1), the doubled line 4 = 5 away from it
            (
                "231=312",
                Status::Polystable,
                cfg([[1, 0, 1, 1, 1, 1], [0, 1, 1, 2, 3, 3], [1, 1, 2, 3, 7, 7]]),
            ),
            (
                "222",
                Status::Polystable,
                cfg([[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]]),
            ),
            (
                "141",
                Status::Unstable,
                cfg([[1, 0, 1, 2, 3, 0], [0, 1, 1, 5, 7, 0], [0, 0, 0, 0, 0, 1]]),
            ),
            (
                "213",
                Status::Unstable,
                cfg([[1, 2, 3, 1, 0, 0], [1, 2, 3, 0, 1, 0], [1, 2, 3, 0, 0, 1]]),
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use proptest::prelude::*;

    #[test]
    fn witnesses_classify() {
        for (stratum, status, c) in witnesses::all() {
            let r = stability(&c).unwrap();
            assert_eq!((r.stratum.as_str(), r.status), (stratum, status), "{c:?}");
            assert_eq!(weight_verdict(&c).unwrap(), status.verdict(), "{stratum}");
        }
    }

    #[test]
    fn witness_details() {
        let w = witnesses::all();
        let r = stability(&w[1].2).unwrap();
        assert_eq!(r.concurrent, vec![vec![0, 1, 4]]);
        assert!(r.coincident.is_empty());
        let r = stability(&w[7].2).unwrap();
        assert_eq!(r.concurrent, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn zero_column_and_wrong_size() {
        let c = ConfigMatrix::from_i64(&[
            [1, 0, 0, 1, 2, 3, 1],
            [0, 1, 0, 1, 5, 7, 1],
            [0, 0, 1, 1, 1, 1, 1],
        ])
        .unwrap();
        assert!(matches!(stability(&c), Err(Error::DimensionMismatch(_))));
    }

    proptest! {
        // rules and weights agree on every input, degenerate ones included
        #[test]
        fn status_matches_weights(entries in prop::collection::vec(-2i64..3, 18)) {
            let rows: Vec<Vec<i64>> = entries.chunks(6).map(|r| r.to_vec()).collect();
            let m = Matrix::from_i64(&rows);
            prop_assume!((0..6).all(|j| (0..3).any(|i| !m.get(i, j).is_zero())));
            let c = ConfigMatrix::standard(m).unwrap();
            let r = stability(&c).unwrap();
            prop_assert_eq!(r.status.verdict(), weight_verdict(&c).unwrap());
        }
    }
}
