//! The ordered list of checks behind `verify`, and the runner.

use std::hash::Hasher;
use std::sync::OnceLock;

use periodkit::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks;
use crate::report::{Check, Group, Report, Status};

/// Samples per randomized property unless an entry says otherwise.
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 0;

pub struct Outcome {
    pub pass: bool,
    pub details: Value,
}

impl Outcome {
    pub fn new(pass: bool, details: Value) -> Outcome {
        Outcome { pass, details }
    }

    pub fn compare<T: Serialize + PartialEq>(computed: T, expected: T) -> Outcome {
        let pass = computed == expected;
        Outcome {
            pass,
            details: json!({ "computed": computed, "expected": expected }),
        }
    }
}

pub type CheckFn = Box<dyn Fn(&mut Ctx) -> Result<Outcome> + Send + Sync>;

pub struct Entry {
    pub id: String,
    pub group: Group,
    pub criterion: u8,
    pub description: String,
    pub samples: usize,
    pub run: CheckFn,
}

pub fn entry(
    id: &str,
    group: Group,
    criterion: u8,
    samples: usize,
    description: &str,
    run: impl Fn(&mut Ctx) -> Result<Outcome> + Send + Sync + 'static,
) -> Entry {
    Entry {
        id: id.to_string(),
        group,
        criterion,
        description: description.to_string(),
        samples,
        run: Box::new(run),
    }
}

impl Entry {
    pub fn matches(&self, filter: Option<&str>) -> bool {
        filter.is_none_or(|f| self.id.starts_with(f) || self.group.name().starts_with(f))
    }
}

/// What a check sees: its own random stream, its sample count and the
/// computations shared between checks of one run.
pub struct Ctx<'a> {
    pub rng: ChaCha8Rng,
    pub samples: usize,
    pub shared: &'a Shared,
}

/// Results several checks read. Each is computed once per run from its own
/// named stream, so it does not depend on which checks were selected.
pub struct Shared {
    seed: u64,
    pub(crate) lambda: OnceLock<Result<periodkit::lattice::models::LambdaCensus>>,
    pub(crate) vectors: OnceLock<Result<periodkit::lattice::isotropic::VectorCensus>>,
    pub(crate) planes: OnceLock<Result<periodkit::lattice::isotropic::PlaneCensus>>,
    pub(crate) sweep: OnceLock<Result<checks::jacobian::Sweep>>,
}

impl Shared {
    pub fn new(seed: u64) -> Shared {
        Shared {
            seed,
            lambda: OnceLock::new(),
            vectors: OnceLock::new(),
            planes: OnceLock::new(),
            sweep: OnceLock::new(),
        }
    }

    pub fn rng(&self, name: &str) -> ChaCha8Rng {
        stream(self.seed, name)
    }
}

/// The generator for `name` under `seed`: one ChaCha stream per name.
pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let mut h = fnv::FnvHasher::default();
    h.write(name.as_bytes());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(h.finish());
    rng
}

/// Every check, in criterion order.
pub fn registry() -> Vec<Entry> {
    let mut all = checks::lattice::entries();
    all.extend(checks::jacobian::entries());
    all.extend(checks::config::entries());
    all.sort_by_key(|e| e.criterion);
    all
}

fn run_entry(e: &Entry, shared: &Shared) -> Check {
    let mut ctx = Ctx {
        rng: shared.rng(&e.id),
        samples: e.samples,
        shared,
    };
    let (status, details) = match (e.run)(&mut ctx) {
        Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.details),
        Err(err) => (
            Status::Fail,
            json!({ "error": { "kind": err.kind(), "message": err.to_string() } }),
        ),
    };
    Check {
        id: e.id.clone(),
        group: e.group,
        criterion: e.criterion,
        description: e.description.clone(),
        status,
        details,
    }
}

/// Run the selected checks concurrently; the report keeps registry order.
pub fn verify(seed: u64, filter: Option<&str>) -> Report {
    let shared = Shared::new(seed);
    let selected: Vec<Entry> = registry()
        .into_iter()
        .filter(|e| e.matches(filter))
        .collect();
    let checks: Vec<Check> = selected.par_iter().map(|e| run_entry(e, &shared)).collect();
    Report::new(seed, filter.map(str::to_string), checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use std::collections::BTreeSet;

    #[test]
    fn ids_are_unique_and_criteria_cover_one_to_eleven() {
        let r = registry();
        let ids: BTreeSet<&str> = r.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids.len(), r.len());
        let crit: BTreeSet<u8> = r.iter().map(|e| e.criterion).collect();
        assert_eq!(crit, (1..=11).collect());
        assert!(r.windows(2).all(|w| w[0].criterion <= w[1].criterion));
    }

    #[test]
    fn streams_depend_on_seed_and_name() {
        let draw = |s, n| stream(s, n).gen::<u64>();
        assert_eq!(draw(3, "a"), draw(3, "a"));
        assert_ne!(draw(3, "a"), draw(3, "b"));
        assert_ne!(draw(3, "a"), draw(4, "a"));
    }

    #[test]
    fn filter_by_group_or_prefix() {
        let r = registry();
        let lattice: Vec<&Entry> = r.iter().filter(|e| e.matches(Some("lattice"))).collect();
        assert!(!lattice.is_empty() && lattice.iter().all(|e| e.group == Group::Lattice));
        let d: Vec<&str> = r
            .iter()
            .filter(|e| e.matches(Some("disc-form")))
            .map(|e| e.id.as_str())
            .collect();
        assert_eq!(d, ["disc-form-d6"]);
        assert!(r.iter().all(|e| e.matches(None)));
    }
}
