//! Command-line front end for `periodkit` and the `verify` harness.

pub mod checks;
pub mod commands;
pub mod input;
pub mod registry;
pub mod report;
