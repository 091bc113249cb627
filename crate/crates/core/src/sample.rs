//! Seeded random inputs for the property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::configuration::ConfigMatrix;
use crate::config::seven::{smoothness, QuadricSystem};
use crate::config::stability::{stability, Status};
use crate::linalg::rational::frac;
use crate::linalg::{Matrix, Rational};
use num_traits::Zero;

/// Numerator in `[-bound, bound]`, denominator in `[1, bound]`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    frac(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let x = rational(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols).map(|_| rational(rng, bound)).collect();
    Matrix::new(rows, cols, data).expect("sized")
}

/// A random rank-4 system, smooth or not.
pub fn system<R: Rng + ?Sized>(rng: &mut R) -> QuadricSystem {
    loop {
        let m = matrix(rng, 4, 7, 9);
        if m.rank() == 4 {
            return QuadricSystem::new(m).expect("4x7");
        }
    }
}

/// A random smooth system.
pub fn smooth_system<R: Rng + ?Sized>(rng: &mut R) -> QuadricSystem {
    loop {
        let q = system(rng);
        if smoothness(&q).map(|s| s.smooth).unwrap_or(false) {
            return q;
        }
    }
}

/// A rank-4 system whose first quadric involves only three variables, so
/// the other four columns are dependent.
pub fn singular_system<R: Rng + ?Sized>(rng: &mut R) -> QuadricSystem {
    loop {
        let mut m = matrix(rng, 4, 7, 9);
        let mut cols: Vec<usize> = (0..7).collect();
        cols.shuffle(rng);
        for &c in &cols[3..] {
            m.set(0, c, Rational::zero());
        }
        for &c in &cols[..3] {
            m.set(0, c, nonzero_rational(rng, 9));
        }
        if m.rank() == 4 {
            return QuadricSystem::new(m).expect("4x7");
        }
    }
}

/// Six random lines with no zero column.
pub fn config<R: Rng + ?Sized>(rng: &mut R) -> ConfigMatrix {
    loop {
        let m = matrix(rng, 3, 6, 7);
        if (0..6).all(|j| (0..3).any(|i| !m.get(i, j).is_zero())) {
            return ConfigMatrix::standard(m).expect("6 lines");
        }
    }
}

/// Six random lines in the stable locus.
pub fn stable_config<R: Rng + ?Sized>(rng: &mut R) -> ConfigMatrix {
    loop {
        let c = config(rng);
        if stability(&c)
            .map(|r| r.status == Status::Stable)
            .unwrap_or(false)
        {
            return c;
        }
    }
}

/// Six lines with small integer entries, so that coincidences and
/// concurrences occur often.
pub fn special_config<R: Rng + ?Sized>(rng: &mut R) -> ConfigMatrix {
    loop {
        let data = (0..18).map(|_| frac(rng.gen_range(-1..=1), 1)).collect();
        let m = Matrix::new(3, 6, data).expect("sized");
        if (0..6).all(|j| (0..3).any(|i| !m.get(i, j).is_zero())) {
            return ConfigMatrix::standard(m).expect("6 lines");
        }
    }
}
