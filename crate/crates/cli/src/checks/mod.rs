//! The bodies of the registered checks, one module per check group.

use serde_json::{json, Value};

use crate::registry::Outcome;

pub mod config;
pub mod jacobian;
pub mod lattice;

/// Count passing cases of a sampled property; keep a histogram of the
/// computed values and the first failing input.
pub fn tally(cases: impl Iterator<Item = (bool, Value, Value)>) -> Outcome {
    let (mut total, mut passed) = (0usize, 0usize);
    let mut observed = std::collections::BTreeMap::<String, usize>::new();
    let mut first_failure = Value::Null;
    for (ok, value, input) in cases {
        total += 1;
        passed += ok as usize;
        *observed.entry(value.to_string()).or_default() += 1;
        if !ok && first_failure.is_null() {
            first_failure = json!({ "input": input, "computed": value });
        }
    }
    Outcome::new(
        total > 0 && passed == total,
        json!({ "cases": total, "passed": passed, "observed": observed, "first_failure": first_failure }),
    )
}
