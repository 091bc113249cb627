pub mod config;
pub mod error;
pub mod jacobian;
pub mod lattice;
pub mod linalg;
pub mod sample;

pub use error::{Error, Result};
