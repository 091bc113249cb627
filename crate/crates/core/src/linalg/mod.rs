//! Exact linear algebra over the rationals and the integers.

pub mod integer;
pub mod matrix;
pub mod rational;

pub use integer::{hnf, snf, IntMatrix};
pub use matrix::Matrix;
pub use rational::Rational;
