//! Discriminant forms, complements, gluing, isotropic census, index counts.

use periodkit::lattice::isometry::gauss_reduce_binary;
use periodkit::lattice::isotropic::{l_lattice, plane_census, vector_census};
use periodkit::lattice::models::{
    d6_in_e8, d6_in_z210, index_two_identities, AllcockCensus, ChainIdentity, LambdaCensus,
    StabilizerCensus,
};
use periodkit::lattice::{
    discriminant_form, finite_form_isometric, index_exponent, is_isometric_small, make_named,
    orthogonal_complement, parity, signature, Comparison, IndexFormulaInput, IsotropicKind,
    Lattice, Parity,
};
use periodkit::linalg::rational::{abs, frac, int};
use periodkit::linalg::Matrix;
use periodkit::Result;
use serde_json::json;

use crate::registry::{entry, Ctx, Entry, Outcome};
use crate::report::Group::Lattice as G;

/// Census box for isotropic vectors and planes of `L`.
pub const CENSUS_HEIGHT: i64 = 5;
/// Every this many primitive pairs also go through the full plane classifier.
pub const PLANE_STRIDE: usize = 1000;

fn named(s: &str) -> Result<Lattice> {
    make_named(&s.parse()?)
}

pub fn entries() -> Vec<Entry> {
    vec![
        entry(
            "disc-form-d6",
            G,
            1,
            0,
            "discriminant form of D6 is [[0,1/2],[1/2,1/2]] on (Z/2)^2",
            disc_form_d6,
        ),
        entry(
            "complement-d6-z210",
            G,
            2,
            0,
            "complement of D6(-1) in Z^{2,10}: signature (2,4), odd, |det| 4, form of L",
            complement_z210,
        ),
        entry(
            "complement-d6-e8",
            G,
            2,
            0,
            "complement of D6 in E8 reduces to diag(2,2)",
            complement_e8,
        ),
        entry(
            "index-two-identities",
            G,
            3,
            0,
            "the seven index-two sublattice identities hold at the invariant level",
            index_two,
        ),
        entry(
            "allcock-quotient",
            G,
            4,
            0,
            "dual quotient of H(1/2)+E10(-1) is (Z/2)^2 with q {0,0,1}",
            allcock_quotient,
        ),
        entry(
            "allcock-overlattices",
            G,
            4,
            0,
            "three intermediate integral lattices, exactly one odd unimodular",
            allcock_overlattices,
        ),
        entry(
            "isotropic-orbits",
            G,
            5,
            0,
            "isotropic vectors of L up to height 5 fall in 3 classes",
            isotropic_vectors,
        ),
        entry(
            "isotropic-planes",
            G,
            5,
            0,
            "isotropic planes of L up to height 5 fall in 2 classes",
            isotropic_planes,
        ),
        entry(
            "boundary-table",
            G,
            5,
            0,
            "quotients of the class representatives match the boundary table",
            boundary_table,
        ),
        entry(
            "lambda-form",
            G,
            6,
            0,
            "disc form of L(2) is (Z/4)^2+(Z/2)^4 with the stated pairing",
            lambda_form,
        ),
        entry(
            "lambda-integral-norms",
            G,
            6,
            0,
            "the integral-norm subgroup has order 64",
            lambda_integral,
        ),
        entry(
            "lambda0-isotropic",
            G,
            6,
            0,
            "<2a,2b,c+d+e+f> is isotropic of order 8",
            lambda0_isotropic,
        ),
        entry(
            "lambda0-glue",
            G,
            6,
            0,
            "gluing L(2) along it gives the invariants of Z^2+D4(-1)",
            lambda0_glue,
        ),
        entry(
            "lambda0-stable",
            G,
            6,
            0,
            "every automorphism of the bilinear form fixes it",
            lambda0_stable,
        ),
        entry(
            "index-2^5",
            G,
            7,
            0,
            "index exponent for (0, 2, 7, nontrivial) is 5",
            index_2_5,
        ),
        entry(
            "index-chain",
            G,
            7,
            0,
            "2^2 * 2^5 = 2^4 * 2^3 from computed sublattice indices",
            index_chain,
        ),
        entry(
            "stabilizer-768",
            G,
            10,
            0,
            "SO(Z^2(2)) x O(Z^4(-1)) / +-1 has 768 = 24 x 32 elements",
            stabilizer,
        ),
    ]
}

fn disc_form_d6(_: &mut Ctx) -> Result<Outcome> {
    let d = discriminant_form(&named("D6")?)?;
    let f = d.form();
    let expected = Matrix::from_rows(vec![vec![int(0), frac(1, 2)], vec![frac(1, 2), frac(1, 2)]])?;
    let pass = f.orders() == [2, 2] && *f.bilinear() == expected;
    Ok(Outcome::new(
        pass,
        json!({
            "computed": { "orders": f.orders(), "bilinear": f.bilinear(), "quadratic": f.quadratic() },
            "expected": { "orders": [2, 2], "bilinear": expected },
        }),
    ))
}

fn complement_z210(_: &mut Ctx) -> Result<Outcome> {
    let c = orthogonal_complement(&d6_in_z210())?.lattice()?;
    let l = l_lattice();
    let (fc, fl) = (discriminant_form(&c)?, discriminant_form(&l)?);
    let forms = finite_form_isometric(fc.form(), fl.form(), Comparison::BilinearOnly)?;
    let computed = (
        signature(&c),
        parity(&c)?,
        abs(&c.det()).to_string(),
        forms.is_isometric(),
    );
    let expected = ((2, 4), Parity::Odd, "4".to_string(), true);
    let mut o = Outcome::compare(computed, expected);
    o.details["gram"] = json!(c.gram());
    Ok(o)
}

fn complement_e8(_: &mut Ctx) -> Result<Outcome> {
    let c = orthogonal_complement(&d6_in_e8())?;
    let r = gauss_reduce_binary(&c.induced_gram())?;
    Ok(Outcome::compare(r, Matrix::from_i64(&[[2, 0], [0, 2]])))
}

fn index_two(_: &mut Ctx) -> Result<Outcome> {
    let all = index_two_identities()?;
    let ok = |c: &periodkit::lattice::models::IdentityCheck| {
        c.holds() && c.signature.0 == c.signature.1 && c.parity.0 == c.parity.1
    };
    let pass = all.len() == 7 && all.iter().all(ok);
    let rows: Vec<_> = all
        .iter()
        .map(|c| json!({ "holds": ok(c), "identity": c }))
        .collect();
    Ok(Outcome::new(
        pass,
        json!({ "count": all.len(), "identities": rows }),
    ))
}

fn allcock_quotient(_: &mut Ctx) -> Result<Outcome> {
    let c = AllcockCensus::compute()?;
    let q: Vec<String> = c.q_values.iter().map(|x| x.to_string()).collect();
    Ok(Outcome::compare(
        (c.quotient_orders, q),
        (vec![2, 2], vec!["0".into(), "0".into(), "1".into()]),
    ))
}

fn allcock_overlattices(_: &mut Ctx) -> Result<Outcome> {
    let c = AllcockCensus::compute()?;
    let mut o = Outcome::compare((c.proper.len(), c.odd_unimodular), (3, 1));
    o.details["overlattices"] = json!(c.proper);
    Ok(o)
}

fn vectors<'a>(ctx: &Ctx<'a>) -> Result<&'a periodkit::lattice::isotropic::VectorCensus> {
    ctx.shared
        .vectors
        .get_or_init(|| vector_census(&l_lattice(), CENSUS_HEIGHT))
        .as_ref()
        .map_err(Clone::clone)
}

fn planes<'a>(ctx: &Ctx<'a>) -> Result<&'a periodkit::lattice::isotropic::PlaneCensus> {
    ctx.shared
        .planes
        .get_or_init(|| plane_census(&l_lattice(), CENSUS_HEIGHT, PLANE_STRIDE))
        .as_ref()
        .map_err(Clone::clone)
}

fn isotropic_vectors(ctx: &mut Ctx) -> Result<Outcome> {
    let c = vectors(ctx)?;
    let kinds: Vec<IsotropicKind> = c.counts.keys().copied().collect();
    let expected = vec![
        IsotropicKind::EvenVector,
        IsotropicKind::OddType1Vector,
        IsotropicKind::OddType2Vector,
    ];
    let pass = kinds == expected && c.mismatches == 0 && c.unclassified == 0;
    Ok(Outcome::new(
        pass,
        json!({ "height": CENSUS_HEIGHT, "expected_classes": expected, "census": c }),
    ))
}

fn isotropic_planes(ctx: &mut Ctx) -> Result<Outcome> {
    let c = planes(ctx)?;
    let kinds: Vec<IsotropicKind> = c.counts.keys().copied().collect();
    let expected = vec![IsotropicKind::OddPlane, IsotropicKind::EvenPlane];
    let pass = kinds == expected && c.mismatches == 0 && c.fully_classified > 0;
    Ok(Outcome::new(
        pass,
        json!({ "height": CENSUS_HEIGHT, "expected_classes": expected, "census": c }),
    ))
}

/// The boundary table, row by row.
const BOUNDARY: [(IsotropicKind, &str); 5] = [
    (IsotropicKind::EvenVector, "Z{1,3}"),
    (IsotropicKind::OddType1Vector, "Z{1,1}+Z2(-2)"),
    (IsotropicKind::OddType2Vector, "H+Z2(-2)"),
    (IsotropicKind::OddPlane, "Z2(-2)"),
    (IsotropicKind::EvenPlane, "Z2(-1)"),
];

fn boundary_table(ctx: &mut Ctx) -> Result<Outcome> {
    use periodkit::lattice::{classify_isotropic_plane, classify_isotropic_vector};
    let l = l_lattice();
    let (v, p) = (vectors(ctx)?, planes(ctx)?);
    let mut rows = Vec::new();
    let mut pass = true;
    for (kind, want) in BOUNDARY {
        let class = match (v.representatives.get(&kind), p.representatives.get(&kind)) {
            (Some(x), _) => Some(classify_isotropic_vector(&l, x)?),
            (_, Some(pl)) => Some(classify_isotropic_plane(&l, pl)?),
            _ => None,
        };
        let result = match &class {
            Some(c) if c.kind == kind => Some(is_isometric_small(
                &Lattice::new(c.certificate.clone())?,
                &named(want)?,
            )),
            _ => None,
        };
        let ok = result.as_ref().is_some_and(|r| r.is_isometric());
        pass &= ok;
        rows.push(json!({ "kind": kind, "expected": want, "quotient": class.map(|c| c.certificate), "result": result, "ok": ok }));
    }
    Ok(Outcome::new(pass, json!({ "rows": rows })))
}

fn lambda<'a>(ctx: &Ctx<'a>) -> Result<&'a LambdaCensus> {
    ctx.shared
        .lambda
        .get_or_init(LambdaCensus::compute)
        .as_ref()
        .map_err(Clone::clone)
}

fn lambda_form(ctx: &mut Ctx) -> Result<Outcome> {
    let c = lambda(ctx)?;
    Ok(Outcome::compare(
        (c.orders.clone(), c.pairing_matches),
        (vec![4, 4, 2, 2, 2, 2], true),
    ))
}

fn lambda_integral(ctx: &mut Ctx) -> Result<Outcome> {
    let c = lambda(ctx)?;
    Ok(Outcome::compare(
        (c.integral_norm_order, c.integral_norm_matches),
        (64, true),
    ))
}

fn lambda0_isotropic(ctx: &mut Ctx) -> Result<Outcome> {
    let c = lambda(ctx)?;
    Ok(Outcome::compare(
        (c.lambda0_order, c.lambda0_isotropic),
        (8, true),
    ))
}

fn lambda0_glue(ctx: &mut Ctx) -> Result<Outcome> {
    let c = lambda(ctx)?;
    let target = named("Z2+D4(-1)")?;
    let mut o = Outcome::compare(
        (
            c.glue_signature,
            c.glue_parity,
            c.glue_matches.is_isometric(),
        ),
        (signature(&target), parity(&target)?, true),
    );
    o.details["result"] = json!(c.glue_matches);
    Ok(o)
}

fn lambda0_stable(ctx: &mut Ctx) -> Result<Outcome> {
    let c = lambda(ctx)?;
    let pass = c.automorphisms > 0 && c.lambda0_stable;
    Ok(Outcome::new(
        pass,
        json!({ "automorphisms": c.automorphisms, "stable": c.lambda0_stable }),
    ))
}

fn index_2_5(_: &mut Ctx) -> Result<Outcome> {
    let inp = IndexFormulaInput {
        ell2_base: 0,
        ell2_cover: 2,
        rho: 7,
        kappa_trivial: false,
    };
    let mut o = Outcome::compare(index_exponent(&inp), 5);
    o.details["input"] = json!(inp);
    Ok(o)
}

fn index_chain(_: &mut Ctx) -> Result<Outcome> {
    let c = ChainIdentity::compute()?;
    let computed = (
        c.complement_index.to_string(),
        c.formula_exponent,
        c.scaled_index.to_string(),
        c.glue_index,
        c.holds(),
    );
    Ok(Outcome::compare(
        computed,
        ("4".into(), 5, "16".into(), 8, true),
    ))
}

fn stabilizer(_: &mut Ctx) -> Result<Outcome> {
    let s = StabilizerCensus::compute()?;
    let computed = (
        s.order,
        s.permutation_image,
        s.sign_part,
        s.all_isometries,
        s.matches_l,
    );
    let mut o = Outcome::compare(computed, (768, 24, 32, true, true));
    o.details["census"] = json!(s);
    Ok(o)
}
