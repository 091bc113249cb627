//! Graded pieces of the Jacobian ring and the period map, on seeded
//! random smooth systems.

use periodkit::config::f2::squarefree_triples;
use periodkit::config::seven::{smoothness, QuadricSystem};
use periodkit::jacobian::{
    deformation_vector, dropped_lines_unchanged, first_summand_unchecked, invariant_deformations,
    kappa_target, kernel_check_of, period_map_from, require_smooth, second_summand_unchecked,
    source_count, target_rank_count, GradedPiece, SourceCount, TargetRankCount,
};
use periodkit::linalg::{Matrix, Rational};
use periodkit::{sample, Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::tally;
use crate::registry::{entry, Ctx, Entry, Outcome, DEFAULT_SAMPLES};
use crate::report::Group::Jacobian as G;

pub fn entries() -> Vec<Entry> {
    let n = DEFAULT_SAMPLES;
    vec![
        entry("source-dim-6", G, 8, n, "invariant deformations have dimension 6", |c| {
            over_systems(c, |s| (s.source.dimension == 6, json!(s.source.dimension)))
        }),
        entry("count-28-16-7+1", G, 8, n, "source dimension is 28 - 16 - 7 + 1", |c| {
            over_systems(c, |s| {
                let x = &s.source;
                let ok = (x.ambient, x.products_rank, x.rows_rank, x.overlap) == (28, 16, 7, 1)
                    && x.dimension + x.products_rank + x.rows_rank == x.ambient + x.overlap;
                (ok, json!(x))
            })
        }),
        entry("target-dim-4", G, 8, n, "first summand of the target has dimension 4 for every character", |c| {
            over_cases(c, |k| (k.first_dim == 4, json!(k.first_dim)))
        }),
        entry(
            "target-second-dim-2",
            G,
            8,
            n,
            "second summand of the target has dimension 2 for every character",
            |c| {
                over_cases(c, |k| {
                    let d = &k.second;
                    (d.dimension == 2, json!(d))
                })
            },
        ),
        entry("count-16+13-5", G, 8, n, "relations in degree 3 have rank 16 + 13 - 5 = 24", |c| {
            over_cases(c, |k| {
                let x = &k.counts;
                let ok = (x.products_rank, x.rows_rank, x.scalar_dim, x.full_rank) == (16, 13, 5, 24) && x.consistent();
                (ok, json!(x))
            })
        }),
        entry("period-rank-4", G, 8, n, "the period map has rank 4", |c| over_cases(c, |k| (k.rank == 4, json!(k.rank)))),
        entry("kernel-dim-2", G, 8, n, "the period map has a 2-dimensional kernel", |c| {
            over_cases(c, |k| (k.kernel_dim == 2, json!(k.kernel_dim)))
        }),
        entry(
            "kernel-fixes-configuration",
            G,
            8,
            n,
            "the kernel is spanned by substitutions of the dropped square, which fix the six lines",
            |c| {
                over_cases(c, |k| {
                    (k.kernel_spanned && k.substitution_killed && k.lines_fixed, json!([
                        k.kernel_spanned,
                        k.substitution_killed,
                        k.lines_fixed
                    ]))
                })
            },
        ),
        entry(
            "degenerate-breaks-dim-4",
            G,
            8,
            n,
            "on systems with a rank-3 quadric the first summand grows past 4 and smoothness is demanded",
            degenerate,
        ),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondSummand {
    pub triples: usize,
    pub ambient: usize,
    pub relations: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaRecord {
    pub kappa: u8,
    pub first_dim: usize,
    pub second: SecondSummand,
    pub counts: TargetRankCount,
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_spanned: bool,
    pub substitution_killed: bool,
    pub lines_fixed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemRecord {
    pub system: QuadricSystem,
    pub source: SourceCount,
    pub kappas: Vec<KappaRecord>,
}

/// Everything the Jacobian checks read, for one run.
#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub systems: Vec<SystemRecord>,
}

/// One character on a system already known to be smooth.
fn kappa_record(
    q: &QuadricSystem,
    source: &GradedPiece,
    kappa: u8,
    eps: &[Rational; 7],
    h: &Rational,
) -> Result<KappaRecord> {
    let data = period_map_from(q, kappa, source.clone())?;
    let second = second_summand_unchecked(q, kappa)?;
    let v = deformation_vector(q, kappa, eps)?;
    let c = data.source.coordinates(&Matrix::from_rows(vec![v])?)?;
    Ok(KappaRecord {
        kappa,
        first_dim: data.target.dimension,
        second: SecondSummand {
            triples: squarefree_triples(kappa).len(),
            ambient: second.ambient_basis.len(),
            relations: second.rank,
            dimension: second.dimension,
        },
        counts: target_rank_count(q, kappa)?,
        rank: data.rank,
        kernel_dim: data.kernel.rows(),
        kernel_spanned: kernel_check_of(q, &data)?.spans_kernel(),
        substitution_killed: (&c * &data.matrix).is_zero(),
        lines_fixed: dropped_lines_unchanged(q, kappa, kappa, eps, h)?,
    })
}

impl Sweep {
    pub fn compute(ctx_rng: &mut rand_chacha::ChaCha8Rng, samples: usize) -> Result<Sweep> {
        let inputs: Vec<(QuadricSystem, [Rational; 7], Rational)> = (0..samples)
            .map(|_| {
                let q = sample::smooth_system(ctx_rng);
                let eps = std::array::from_fn(|_| sample::nonzero_rational(ctx_rng, 9));
                (q, eps, sample::nonzero_rational(ctx_rng, 9))
            })
            .collect();
        let systems = inputs
            .into_par_iter()
            .map(|(q, eps, h)| {
                require_smooth(&q)?;
                let source = invariant_deformations(&q)?;
                let kappas = (1..=7)
                    .map(|k| kappa_record(&q, &source, k, &eps, &h))
                    .collect::<Result<_>>()?;
                Ok(SystemRecord {
                    source: source_count(&q)?,
                    system: q,
                    kappas,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Sweep { systems })
    }
}

fn sweep<'a>(ctx: &Ctx<'a>) -> Result<&'a Sweep> {
    let shared = ctx.shared;
    let samples = ctx.samples;
    shared
        .sweep
        .get_or_init(|| Sweep::compute(&mut shared.rng("jacobian-sweep"), samples))
        .as_ref()
        .map_err(Clone::clone)
}

fn over_systems(ctx: &mut Ctx, f: impl Fn(&SystemRecord) -> (bool, Value)) -> Result<Outcome> {
    let s = sweep(ctx)?;
    Ok(tally(s.systems.iter().map(|r| {
        let (ok, v) = f(r);
        (ok, v, json!({ "system": r.system }))
    })))
}

fn over_cases(ctx: &mut Ctx, f: impl Fn(&KappaRecord) -> (bool, Value)) -> Result<Outcome> {
    let s = sweep(ctx)?;
    Ok(tally(s.systems.iter().flat_map(|r| {
        r.kappas.iter().map(|k| {
            let (ok, v) = f(k);
            (ok, v, json!({ "system": r.system, "kappa": k.kappa }))
        })
    })))
}

/// `x5² + x6² + x7²` lies in the span, so characters 1..4 are dependent.
pub fn constructed_degenerate() -> QuadricSystem {
    QuadricSystem::from_i64(&[
        [0, 0, 0, 0, 1, 1, 1],
        [0, 1, 0, 0, 1, 2, 3],
        [0, 0, 1, 0, 1, 4, 9],
        [0, 0, 0, 1, 1, 8, 28],
    ])
    .expect("4x7")
}

/// `(smoothness demanded, first and second summand dimensions)` at the first
/// singular character of `q`.
fn singular_dims(q: &QuadricSystem) -> Result<Option<(bool, Value, Value)>> {
    let w = smoothness(q)?.witness.unwrap_or_default();
    let Some(&kappa) = w.first() else {
        return Ok(None);
    };
    let demanded = matches!(kappa_target(q, kappa), Err(Error::SmoothnessRequired(_)));
    let dim = first_summand_unchecked(q, kappa)?.dimension;
    let second = second_summand_unchecked(q, kappa)?.dimension;
    Ok(Some((
        demanded,
        json!({ "first_dim": dim, "second_dim": second }),
        json!({ "system": q, "witness": w, "kappa": kappa }),
    )))
}

/// The constructed system must push the first summand past 4; random
/// singular systems must all be refused. How often those also change the
/// dimension is reported but not required.
fn degenerate(ctx: &mut Ctx) -> Result<Outcome> {
    let q = constructed_degenerate();
    let constructed = match singular_dims(&q)? {
        Some((demanded, dims, input)) => {
            let grew = dims["first_dim"].as_u64().is_some_and(|d| d > 4);
            json!({ "pass": demanded && grew, "smoothness_demanded": demanded, "dims": dims, "input": input })
        }
        None => json!({ "pass": false, "input": { "system": q }, "error": "system is smooth" }),
    };
    let mut cases = Vec::new();
    for _ in 0..ctx.samples {
        let q = sample::singular_system(&mut ctx.rng);
        match singular_dims(&q)? {
            Some(c) => cases.push(c),
            None => cases.push((false, json!("smooth"), json!({ "system": q }))),
        }
    }
    let random = tally(cases.into_iter());
    let pass = constructed["pass"] == json!(true) && random.pass;
    Ok(Outcome::new(
        pass,
        json!({ "constructed": constructed, "random_singular": random.details }),
    ))
}
