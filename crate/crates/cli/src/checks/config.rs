//! Six- and seven-line configurations, the F₂ census and the
//! equivalences between independent code paths.

use std::collections::{BTreeMap, BTreeSet};

use periodkit::config::action::{kappa_stabilizer_image, W3};
use periodkit::config::cremona::plucker_swap_holds;
use periodkit::config::f2::{self, bases, bases_by_sum, popcount, G_ROWS};
use periodkit::config::families::{etale_identity, local_families, quadrangle_family};
use periodkit::config::seven::{
    drop_line, drop_line_via_quadrics, seven_line_config, smooth_by_low_rank_quadric,
    smooth_by_triple_points, smoothness, QuadricSystem,
};
use periodkit::config::stability::{weight_verdict, witnesses};
use periodkit::config::{
    cremona, equivalent, plucker, quadrangle_census, stability, triple_points, ConfigMatrix,
    QuadrangleCensus, Status,
};
use periodkit::linalg::rational::int;
use periodkit::linalg::Rational;
use periodkit::{sample, Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::tally;
use crate::registry::{entry, Ctx, Entry, Outcome, DEFAULT_SAMPLES};
use crate::report::Group::Config as G;

/// Sample points for the quadrangle family.
pub const FAMILY_POINTS: usize = 20;
/// Offsets tried per local family.
pub const LOCUS_OFFSETS: usize = 20;
/// Systems for the smoothness comparison, engineered failures included.
pub const SMOOTHNESS_SYSTEMS: usize = 200;
pub const ENGINEERED_FAILURES: usize = 20;

pub fn entries() -> Vec<Entry> {
    let n = DEFAULT_SAMPLES;
    vec![
        entry(
            "strata-witnesses",
            G,
            9,
            0,
            "each stratum witness gets its listed status and stratum",
            strata,
        ),
        entry(
            "stable-triple-points",
            G,
            9,
            n,
            "stable configurations have at most 4 triple points",
            stable_triples,
        ),
        entry(
            "quadrangle-classes",
            G,
            9,
            0,
            "labeled complete quadrangles form 2 classes, merged into 1 by the odd relabelings",
            quadrangle_classes,
        ),
        entry(
            "cremona-involution",
            G,
            9,
            n,
            "the Cremona map is an involution and acts on Plücker vectors by the signed swap",
            cremona_involution,
        ),
        entry(
            "etale-identity",
            G,
            9,
            n,
            "Q(N(t,a,b,c,d)) reversed is N(t,c,d,a,b)",
            etale,
        ),
        entry(
            "quadrangle-family-minors",
            G,
            9,
            FAMILY_POINTS,
            "the quadrangle family has m135 = 4b, m245 = -4a, m146 = 4d, m236 = -4c",
            family_minors,
        ),
        entry(
            "local-families",
            G,
            9,
            LOCUS_OFFSETS,
            "near each local family the triple points are exactly the kept components",
            local_loci,
        ),
        entry(
            "f2-weights",
            G,
            10,
            0,
            "weights on F2^7 modulo the all-ones vector are {7:1, 5:7, 3:21, 1:35}",
            f2_weights,
        ),
        entry(
            "f2-isotropy",
            G,
            10,
            0,
            "q(x) = 0 exactly when the popcount is 0, 3, 4 or 7",
            f2_isotropy,
        ),
        entry(
            "g-totally-isotropic",
            G,
            10,
            0,
            "the code G has rank 3 and is totally isotropic",
            g_isotropic,
        ),
        entry(
            "f2-bases-28",
            G,
            10,
            0,
            "F2^3 has 28 unordered bases, 4 for each sum",
            f2_bases,
        ),
        entry(
            "stab-kappa-s4",
            G,
            10,
            0,
            "the stabilizer of each character acts on the pairs as S4",
            stab_kappa,
        ),
        entry(
            "smoothness-three-paths",
            G,
            11,
            SMOOTHNESS_SYSTEMS,
            "independent columns, no triple points, 35 nonzero minors and no rank-3 quadric agree",
            smoothness_paths,
        ),
        entry(
            "drop-line-two-paths",
            G,
            11,
            n,
            "deleting a column agrees with intersecting the quadrics",
            drop_paths,
        ),
    ]
}

/// Draw until `f` accepts, at most `tries` times.
fn draw<T>(
    rng: &mut ChaCha8Rng,
    tries: usize,
    mut f: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
) -> (Option<T>, usize) {
    for t in 0..tries {
        if let Some(x) = f(rng) {
            return (Some(x), t);
        }
    }
    (None, tries)
}

fn strata(_: &mut Ctx) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, status, c) in witnesses::all() {
        let r = stability(&c)?;
        let w = weight_verdict(&c)?;
        let ok = r.status == status && r.stratum == name && w == status.verdict();
        pass &= ok;
        rows.push(json!({
            "expected": { "stratum": name, "status": status },
            "computed": { "stratum": r.stratum, "status": r.status, "weights": w },
            "ok": ok,
        }));
    }
    Ok(Outcome::new(pass, json!({ "witnesses": rows })))
}

fn stable_triples(ctx: &mut Ctx) -> Result<Outcome> {
    let mut cases = Vec::new();
    let mut rejected = 0;
    // small entries make concurrences common; the quadrangle family adds
    // stable points with exactly four
    for i in 0..ctx.samples {
        let c = if i % 4 == 3 {
            let p: Vec<Rational> = (0..4).map(|_| sample::rational(&mut ctx.rng, 5)).collect();
            quadrangle_family(&p[0], &p[1], &p[2], &p[3])?
        } else {
            let (c, r) = draw(&mut ctx.rng, 1000, |rng| {
                let c = sample::special_config(rng);
                stability(&c)
                    .is_ok_and(|r| r.status == Status::Stable)
                    .then_some(c)
            });
            rejected += r;
            c.ok_or_else(|| Error::Invalid("no stable sample".into()))?
        };
        if stability(&c)?.status != Status::Stable {
            continue;
        }
        let t = triple_points(&c)?.len();
        cases.push((t <= 4, json!(t), json!({ "config": c })));
    }
    let mut o = tally(cases.into_iter());
    o.details["rejected"] = json!(rejected);
    Ok(o)
}

fn quadrangle_classes(_: &mut Ctx) -> Result<Outcome> {
    let c = quadrangle_census()?;
    let expected = QuadrangleCensus {
        labelings: 48,
        classes: 2,
        w3_classes: 1,
        even_preserve: true,
        odd_swap: true,
    };
    Ok(Outcome::compare(c, expected))
}

fn all_minors_nonzero(c: &ConfigMatrix) -> bool {
    plucker(c)
        .values
        .iter()
        .all(|(_, v)| !num_traits::Zero::is_zero(v))
}

fn cremona_involution(ctx: &mut Ctx) -> Result<Outcome> {
    let mut cases = Vec::new();
    let mut rejected = 0;
    for _ in 0..ctx.samples {
        let (pair, r) = draw(&mut ctx.rng, 1000, |rng| {
            let c = sample::stable_config(rng);
            let q = cremona(&c).ok()?;
            (all_minors_nonzero(&c) && all_minors_nonzero(&q)).then_some((c, q))
        });
        rejected += r;
        let (c, q) = pair.ok_or_else(|| Error::Invalid("no admissible sample".into()))?;
        let back = equivalent(&cremona(&q)?, &c)?;
        let moved = !equivalent(&q, &c)?;
        let swap = plucker_swap_holds(&c)?;
        cases.push((
            back && swap,
            json!({ "involution": back, "moves": moved, "swap": swap }),
            json!({ "config": c }),
        ));
    }
    let mut o = tally(cases.into_iter());
    o.details["rejected"] = json!(rejected);
    Ok(o)
}

fn etale(ctx: &mut Ctx) -> Result<Outcome> {
    let mut cases = Vec::new();
    let mut rejected = 0;
    for _ in 0..ctx.samples {
        let (hit, r) = draw(&mut ctx.rng, 1000, |rng| {
            let v: Vec<Rational> = (0..5).map(|_| sample::rational(rng, 9)).collect();
            etale_identity(&v[0], &v[1], &v[2], &v[3], &v[4])
                .ok()
                .map(|ok| (ok, v))
        });
        rejected += r;
        let (ok, v) = hit.ok_or_else(|| Error::Invalid("no admissible sample".into()))?;
        let v: Vec<String> = v.iter().map(ToString::to_string).collect();
        cases.push((ok, json!(ok), json!({ "t,a,b,c,d": v })));
    }
    let mut o = tally(cases.into_iter());
    o.details["rejected"] = json!(rejected);
    Ok(o)
}

fn family_minors(ctx: &mut Ctx) -> Result<Outcome> {
    let mut cases = Vec::new();
    for _ in 0..ctx.samples {
        let p: Vec<Rational> = (0..4).map(|_| sample::rational(&mut ctx.rng, 9)).collect();
        let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
        let pv = plucker(&quadrangle_family(a, b, c, d)?);
        // lines numbered from 1 in the formulas
        let computed = [
            pv.get([0, 2, 4]),
            pv.get([1, 3, 4]),
            pv.get([0, 3, 5]),
            pv.get([1, 2, 5]),
        ]
        .map(Clone::clone);
        let expected = [int(4) * b, int(-4) * a, int(4) * d, int(-4) * c];
        let show = |xs: &[Rational; 4]| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
        let input: Vec<String> = p.iter().map(ToString::to_string).collect();
        cases.push((
            computed == expected,
            json!({ "computed": show(&computed), "expected": show(&expected) }),
            json!({ "a,b,c,d": input }),
        ));
    }
    let mut o = tally(cases.into_iter());
    o.details
        .as_object_mut()
        .expect("object")
        .remove("observed");
    Ok(o)
}

fn local_loci(ctx: &mut Ctx) -> Result<Outcome> {
    let mut cases = Vec::new();
    for fam in local_families() {
        for _ in 0..ctx.samples {
            // small offsets keep the moved point away from the integer base coordinates
            let offsets: [Rational; 6] = std::array::from_fn(|_| {
                sample::nonzero_rational(&mut ctx.rng, 9) / Rational::from_integer(101.into())
            });
            let ok = fam.locus_matches(&offsets)?;
            let shown: Vec<String> = offsets.iter().map(ToString::to_string).collect();
            cases.push((
                ok,
                json!(fam.name),
                json!({ "family": fam.name, "offsets": shown }),
            ));
        }
    }
    Ok(tally(cases.into_iter()))
}

fn f2_weights(_: &mut Ctx) -> Result<Outcome> {
    let expected: BTreeMap<u32, usize> = [(1, 35), (3, 21), (5, 7), (7, 1)].into();
    Ok(Outcome::compare(f2::census().weights, expected))
}

fn f2_isotropy(_: &mut Ctx) -> Result<Outcome> {
    let isotropic: Vec<u8> = (0u8..128).filter(|&x| f2::q(x) == 0).collect();
    let by_rule: Vec<u8> = (0u8..128)
        .filter(|&x| [0, 3, 4, 7].contains(&popcount(x)))
        .collect();
    let c = f2::census();
    let pass = isotropic == by_rule && c.isotropy_rule && c.closed_form;
    Ok(Outcome::new(
        pass,
        json!({ "isotropic": isotropic.len(), "by_rule": by_rule.len(), "census": c }),
    ))
}

fn g_isotropic(_: &mut Ctx) -> Result<Outcome> {
    let span = f2::span(&G_ROWS);
    let pairs_vanish = span
        .iter()
        .all(|&u| f2::q(u) == 0 && span.iter().all(|&v| f2::b(u, v) == 0));
    let c = f2::census();
    Ok(Outcome::compare(
        (
            f2::rank(&G_ROWS),
            span.len(),
            pairs_vanish,
            c.g_totally_isotropic,
            c.g_columns_match,
        ),
        (3, 8, true, true, true),
    ))
}

fn f2_bases(_: &mut Ctx) -> Result<Outcome> {
    let by_sum = bases_by_sum();
    let expected: BTreeMap<u8, usize> = (1..=7).map(|s| (s, 4)).collect();
    Ok(Outcome::compare((bases().len(), by_sum), (28, expected)))
}

fn stab_kappa(_: &mut Ctx) -> Result<Outcome> {
    let s4: BTreeSet<[u8; 6]> = W3::s4().iter().map(W3::permutation).collect();
    let mut rows = Vec::new();
    let mut pass = s4.len() == 24 && W3::s4().iter().all(W3::is_even);
    for k in 1..=7 {
        let img = kappa_stabilizer_image(k)?;
        let set: BTreeSet<[u8; 6]> = img.iter().map(W3::permutation).collect();
        let ok = img.len() == 24 && set == s4;
        pass &= ok;
        rows.push(json!({ "kappa": k, "image": set.len(), "equals_s4": ok }));
    }
    Ok(Outcome::new(
        pass,
        json!({ "s4": s4.len(), "characters": rows }),
    ))
}

/// Smoothness four ways. A vanishing line or a coincident pair counts as
/// a triple point.
fn smoothness_verdicts(q: &QuadricSystem) -> Result<[bool; 4]> {
    let columns = smoothness(q)?.smooth;
    let (no_triples, minors) = match seven_line_config(q) {
        Ok(c) => {
            let t = match triple_points(&c) {
                Ok(t) => t.is_empty(),
                Err(Error::CoincidentLines(..)) => false,
                Err(e) => return Err(e),
            };
            let nonzero = plucker(&c)
                .values
                .iter()
                .filter(|(_, v)| !num_traits::Zero::is_zero(v))
                .count();
            (t, nonzero == 35)
        }
        Err(Error::ZeroColumn(_)) => (false, false),
        Err(e) => return Err(e),
    };
    let quadric = smooth_by_low_rank_quadric(q)?;
    debug_assert_eq!(minors, smooth_by_triple_points(q)?);
    Ok([columns, no_triples, minors, quadric])
}

fn smoothness_paths(ctx: &mut Ctx) -> Result<Outcome> {
    let mut cases = Vec::new();
    for i in 0..ctx.samples {
        let engineered = i < ENGINEERED_FAILURES;
        let q = if engineered {
            sample::singular_system(&mut ctx.rng)
        } else {
            sample::system(&mut ctx.rng)
        };
        let v = smoothness_verdicts(&q)?;
        let agree = v.iter().all(|&x| x == v[0]);
        let ok = agree && !(engineered && v[0]);
        cases.push((
            ok,
            json!({ "smooth": v[0], "agree": agree, "engineered": engineered }),
            json!({ "system": q }),
        ));
    }
    Ok(tally(cases.into_iter()))
}

fn drop_paths(ctx: &mut Ctx) -> Result<Outcome> {
    let mut cases: Vec<(bool, Value, Value)> = Vec::new();
    for _ in 0..ctx.samples {
        let q = sample::smooth_system(&mut ctx.rng);
        let kappa = ctx.rng.gen_range(1..=7u8);
        let a = drop_line(&seven_line_config(&q)?, kappa)?;
        let b = drop_line_via_quadrics(&q, kappa)?;
        let ok = equivalent(&a, &b)?;
        cases.push((ok, json!(ok), json!({ "system": q, "kappa": kappa })));
    }
    Ok(tally(cases.into_iter()))
}
