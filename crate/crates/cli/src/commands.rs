//! Subcommands and their JSON output.

use clap::{Args, Parser, Subcommand};
use periodkit::config::action::{orbit_classes, Group};
use periodkit::config::seven::{
    drop_line, drop_line_via_quadrics, node_report, seven_line_config, QuadricSystem,
};
use periodkit::config::{canonical_form, cremona, equivalent, plucker, stability};
use periodkit::jacobian::{kappa_target, period_map, source_count};
use periodkit::lattice::isometry::{gauss_reduce_binary, Isometry};
use periodkit::lattice::lattice::is_definite;
use periodkit::lattice::{
    classify_isotropic_plane, classify_isotropic_vector, discriminant_form,
    enumerate_integral_overlattices, index_exponent, make_named, orthogonal_complement,
    overlattice_from_isotropic, parity, signature, IndexFormulaInput, Lattice, Sublattice,
};
use periodkit::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{self, CliError, CliResult};
use crate::registry::{verify, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(
    name = "periodkit",
    version,
    about = "Exact lattice, line-configuration and Jacobian-ring computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattices and their discriminant forms.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Six- and seven-line configurations in the plane.
    #[command(subcommand)]
    Config(ConfigCmd),
    /// Graded pieces of the Jacobian ring and the period map.
    #[command(subcommand)]
    Jacobian(JacobianCmd),
    /// Run the check registry and print the report.
    Verify(VerifyArgs),
}

/// A lattice by name (`D6`, `L`, `Z{2,10}`, `H(1/2)+E10(-1)`, ...) or by
/// Gram matrix.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct LatticeSource {
    #[arg(long)]
    pub name: Option<String>,
    /// Gram matrix as inline JSON or a file.
    #[arg(long)]
    pub gram: Option<String>,
}

impl LatticeSource {
    fn load(&self) -> CliResult<Lattice> {
        match (&self.name, &self.gram) {
            (Some(n), _) => Ok(make_named(&n.parse()?)?.named(n.clone())),
            (_, Some(g)) => Ok(Lattice::new(input::matrix(input::json_arg(g)?)?)?),
            _ => Err(CliError::new("Usage", "give --name or --gram")),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Discriminant group and its bilinear and quadratic forms.
    DiscForm(LatticeSource),
    /// Orthogonal complement of the sublattice spanned by `--basis`.
    Complement {
        #[command(flatten)]
        lattice: LatticeSource,
        /// Integer rows spanning the sublattice.
        #[arg(long)]
        basis: String,
    },
    /// Overlattice glued along an isotropic subgroup of the discriminant group.
    Glue {
        #[command(flatten)]
        lattice: LatticeSource,
        /// Generators in discriminant coordinates.
        #[arg(long)]
        gens: String,
    },
    /// Kind and quotient of a primitive isotropic vector or plane.
    ClassifyIsotropic {
        #[command(flatten)]
        lattice: LatticeSource,
        #[arg(long, conflicts_with = "plane", required_unless_present = "plane")]
        vector: Option<String>,
        /// Two integer rows.
        #[arg(long)]
        plane: Option<String>,
    },
    /// All integral overlattices inside the dual.
    Overlattices(LatticeSource),
    /// 2-exponent of the index of the pullback map.
    IndexFormula {
        #[arg(long)]
        ell2_base: u32,
        #[arg(long)]
        ell2_cover: u32,
        #[arg(long)]
        rho: u32,
        #[arg(long)]
        kappa_trivial: bool,
    },
}

#[derive(Args, Debug)]
pub struct ConfigSource {
    /// `{"matrix":..., "labels":[...]}` or a bare 3×n matrix, inline or a file.
    #[arg(long)]
    pub config: String,
}

impl ConfigSource {
    fn load(&self) -> CliResult<periodkit::config::ConfigMatrix> {
        input::config(input::json_arg(&self.config)?)
    }
}

/// A 4×7 system of quadrics, given or sampled.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SystemSource {
    /// Coefficient matrix, inline JSON or a file.
    #[arg(long)]
    pub system: Option<String>,
    /// Sample a smooth system from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl SystemSource {
    fn load(&self) -> CliResult<QuadricSystem> {
        match (&self.system, self.seed) {
            (Some(s), _) => input::system(input::json_arg(s)?),
            (_, Some(seed)) => Ok(sample::smooth_system(&mut ChaCha8Rng::seed_from_u64(seed))),
            _ => Err(CliError::new("Usage", "give --system or --seed")),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ConfigCmd {
    /// All 3×3 minors.
    Plucker(ConfigSource),
    /// GIT status and stratum of six lines.
    Stability(ConfigSource),
    /// Normal form with a frame sent to the standard points.
    Canonical(ConfigSource),
    /// The quadratic transformation at the pair vertices.
    Cremona(ConfigSource),
    /// Concurrent triples of seven lines, sorted relative to a character.
    Nodes {
        #[command(flatten)]
        config: ConfigSource,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        kappa: u8,
    },
    /// The seven lines cut out by a system of quadrics.
    FromQuadrics {
        #[arg(long)]
        system: String,
    },
    /// Drop the line of a character; from a system both paths are shown.
    Drop {
        #[arg(long, conflicts_with = "system", required_unless_present = "system")]
        config: Option<String>,
        #[arg(long)]
        system: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        kappa: u8,
    },
    /// Classes in the orbit under a relabeling group.
    Orbit {
        #[command(flatten)]
        config: ConfigSource,
        #[arg(long, value_parser = ["w3", "s4", "glf2"])]
        group: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum JacobianCmd {
    /// Dimensions of the invariant deformations and of the target pieces.
    Dims {
        #[command(flatten)]
        system: SystemSource,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        kappa: Option<u8>,
    },
    /// Rank and kernel of the period map for one character.
    PeriodRank {
        #[command(flatten)]
        system: SystemSource,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        kappa: u8,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Keep checks whose id or group starts with this.
    #[arg(long)]
    pub filter: Option<String>,
    /// Also write the report to this file.
    #[arg(long)]
    pub json: Option<std::path::PathBuf>,
}

pub fn run(cli: &Cli) -> CliResult<Value> {
    match &cli.command {
        Command::Lattice(c) => lattice(c),
        Command::Config(c) => config(c),
        Command::Jacobian(c) => jacobian(c),
        Command::Verify(a) => {
            let report = verify(a.seed, a.filter.as_deref());
            if let Some(path) = &a.json {
                std::fs::write(path, report.to_json() + "\n")
                    .map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))?;
            }
            Ok(json!(report))
        }
    }
}

fn lattice(c: &LatticeCmd) -> CliResult<Value> {
    match c {
        LatticeCmd::DiscForm(src) => {
            let l = src.load()?;
            let d = discriminant_form(&l)?;
            let f = d.form();
            let mut v = json!(f);
            v["order"] = json!(f.order());
            v["exponent"] = json!(f.exponent());
            v["even"] = json!(f.is_even());
            Ok(v)
        }
        LatticeCmd::Complement { lattice, basis } => {
            let l = lattice.load()?;
            let rows = input::int_rows(input::json_arg(basis)?)?;
            let s = Sublattice::from_i64(l, &rows)?;
            let perp = orthogonal_complement(&s)?;
            let pl = perp.lattice()?;
            let mut v = json!({
                "basis": perp.basis(),
                "gram": pl.gram(),
                "signature": signature(&pl),
                "parity": parity(&pl)?,
                "det": pl.det().to_string(),
            });
            if pl.rank() == 2 && is_definite(&pl) && pl.is_integral() {
                v["reduced"] = json!(gauss_reduce_binary(pl.gram())?);
            }
            Ok(v)
        }
        LatticeCmd::Glue { lattice, gens } => {
            let l = lattice.load()?;
            let gens = input::int_rows(input::json_arg(gens)?)?;
            let o = overlattice_from_isotropic(&l, &gens)?;
            Ok(json!({
                "index": o.index,
                "subgroup": o.subgroup,
                "basis": o.basis,
                "gram": o.lattice.gram(),
                "signature": signature(&o.lattice),
                "parity": parity(&o.lattice)?,
            }))
        }
        LatticeCmd::ClassifyIsotropic {
            lattice,
            vector,
            plane,
        } => {
            let l = lattice.load()?;
            let class = match (vector, plane) {
                (Some(v), _) => classify_isotropic_vector(
                    &l,
                    &input::from_value::<Vec<i64>>(input::json_arg(v)?)?,
                )?,
                (_, Some(p)) => {
                    classify_isotropic_plane(&l, &input::int_rows(input::json_arg(p)?)?)?
                }
                _ => return Err(CliError::new("Usage", "give --vector or --plane")),
            };
            let check: Isometry = class.check_certificate();
            let mut v = json!(class);
            v["expected_quotient"] = json!(class.kind.expected_quotient().to_string());
            v["matches_expected"] = json!(check.is_isometric());
            Ok(v)
        }
        LatticeCmd::Overlattices(src) => Ok(json!(enumerate_integral_overlattices(&src.load()?)?)),
        LatticeCmd::IndexFormula {
            ell2_base,
            ell2_cover,
            rho,
            kappa_trivial,
        } => {
            let inp = IndexFormulaInput {
                ell2_base: *ell2_base,
                ell2_cover: *ell2_cover,
                rho: *rho,
                kappa_trivial: *kappa_trivial,
            };
            Ok(json!({ "input": inp, "exponent": index_exponent(&inp) }))
        }
    }
}

fn config(c: &ConfigCmd) -> CliResult<Value> {
    Ok(match c {
        ConfigCmd::Plucker(s) => json!(plucker(&s.load()?)),
        ConfigCmd::Stability(s) => json!(stability(&s.load()?)?),
        ConfigCmd::Canonical(s) => json!(canonical_form(&s.load()?)?),
        ConfigCmd::Cremona(s) => json!(cremona(&s.load()?)?),
        ConfigCmd::Nodes { config, kappa } => json!(node_report(&config.load()?, *kappa)?),
        ConfigCmd::FromQuadrics { system } => json!(seven_line_config(&input::system(
            input::json_arg(system)?
        )?)?),
        ConfigCmd::Drop {
            config,
            system,
            kappa,
        } => match (config, system) {
            (Some(c), _) => json!(drop_line(&input::config(input::json_arg(c)?)?, *kappa)?),
            (_, Some(s)) => {
                let q = input::system(input::json_arg(s)?)?;
                let a = drop_line(&seven_line_config(&q)?, *kappa)?;
                let b = drop_line_via_quadrics(&q, *kappa)?;
                let agree = equivalent(&a, &b)?;
                json!({ "via_columns": a, "via_quadrics": b, "agree": agree })
            }
            _ => return Err(CliError::new("Usage", "give --config or --system")),
        },
        ConfigCmd::Orbit { config, group } => {
            let g: Group = group.parse()?;
            let classes = orbit_classes(&config.load()?, g)?;
            json!({ "group": g, "group_order": g.elements().len(), "classes": classes.len(), "keys": classes })
        }
    })
}

fn dims_of(q: &QuadricSystem, kappa: u8) -> CliResult<[usize; 2]> {
    let (a, b) = kappa_target(q, kappa)?;
    Ok([a.dimension, b.dimension])
}

fn jacobian(c: &JacobianCmd) -> CliResult<Value> {
    match c {
        JacobianCmd::Dims { system, kappa } => {
            let q = system.load()?;
            let count = source_count(&q)?;
            let kappas: Vec<u8> = kappa.map_or((1..=7).collect(), |k| vec![k]);
            let targets = kappas
                .iter()
                .map(|&k| Ok(json!({ "kappa": k, "dim_target": dims_of(&q, k)? })))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(
                json!({ "system": q, "dim_R10": count.dimension, "source_count": count, "targets": targets }),
            )
        }
        JacobianCmd::PeriodRank { system, kappa } => {
            let q = system.load()?;
            let d = period_map(&q, *kappa)?;
            Ok(json!({
                "system": q,
                "kappa": kappa,
                "dim_R10": d.source.dimension,
                "dim_target": dims_of(&q, *kappa)?,
                "rank": d.rank,
                "kernel_dim": d.kernel.rows(),
                "matrix": d.matrix,
            }))
        }
    }
}
