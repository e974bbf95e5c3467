//! Command-line front end. Every command prints one report in the shared
//! `{"schema_version", "input", "results", "verdicts", "timings_ms"}` layout.

mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::{prime_power, Field};
use crate::kunz::{self, Classifier, KunzReport, RunContext};
use crate::numsgp::{parse_generators, NumericalSemigroup, SemigroupInfo};
use crate::ring::{canonical_ideals, lattice_for, unit_orbits, LatticeCache, RingModel};

pub use output::{render, OutputFormat};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_GATE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "starlab", version, about = "Star operations on one-dimensional local rings over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub out: Format,
    /// Directory for cached ideal lattices.
    #[arg(long, global = true, env = "STARLAB_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Largest `F_0(R)` to enumerate (default 20000)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_ideals: Option<u64>,
    /// Largest number of unit orbits to enumerate closed families over (default 2048)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_orbits: Option<u64>,
    /// Wall-clock limit in seconds
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_s: Option<u64>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Record wall-clock timings in `timings_ms` (off by default so output is reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Order of the residue field; a prime power.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Monic irreducible modulus, coefficients from low to high (e.g. `1,1,1` for x^2+x+1).
    #[arg(long)]
    pub field_poly: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GensArgs {
    /// Minimal or redundant generators, comma separated.
    #[arg(long)]
    pub gens: String,
}

#[derive(Args, Debug, Clone)]
pub struct SemigroupArgs {
    #[arg(long, conflicts_with = "n", required_unless_present = "n")]
    pub gens: Option<String>,
    /// Use `⟨n, n+1, ..., 2n-3, 2n-1⟩`.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Numerical semigroup invariants.
    Sgp {
        #[command(subcommand)]
        command: SgpCommand,
    },
    /// Ideals and star operations of the semigroup ring `K[[S]]`.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Checks for Kunz domains.
    Kunz {
        #[command(subcommand)]
        command: KunzCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum SgpCommand {
    /// Gaps, Frobenius number, pseudo-symmetry and canonical ideal.
    Info(GensArgs),
}

#[derive(Subcommand, Debug)]
pub enum RingCommand {
    /// Lists `F_0(R)` with unit orbits.
    EnumIdeals {
        #[command(flatten)]
        gens: GensArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Counts star operations and lists their closed families.
    EnumStars {
        #[command(flatten)]
        gens: GensArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum KunzCommand {
    /// `|Star(R)|` against `|Star(T)|`, `Ψ` and the `⋆_i` operations on `T`.
    Counterexample {
        #[command(flatten)]
        sgp: SemigroupArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Exact counts for `⟨4,5,7⟩` against the closed formulas.
    FormulaCheck {
        #[command(flatten)]
        sgp: SemigroupArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Certified lower bound on `|Star(R)|` without enumerating star operations.
    LowerBound {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Unit orbits of two-dimensional subspaces of `K[x]/(x^n)`.
    SubspaceOrbits {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Ideal-theoretic checks over all of `F_0(R)`.
    Lemmas {
        #[command(flatten)]
        sgp: SemigroupArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
}

impl FieldArgs {
    pub fn field(&self) -> Result<Field> {
        let Some(text) = &self.field_poly else {
            return Field::with_order(self.q);
        };
        let (p, e) = prime_power(self.q)
            .ok_or_else(|| Error::InvalidInput(format!("field order {} is not a prime power", self.q)))?;
        let coeffs = text
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        let f = Field::with_modulus(p, &coeffs)?;
        if f.degree() != e {
            return Err(Error::InvalidInput(format!("modulus has degree {}, but q = {p}^{e}", f.degree())));
        }
        Ok(f)
    }
}

fn semigroup(gens: &str) -> Result<NumericalSemigroup> {
    let s = NumericalSemigroup::from_generators(&parse_generators(gens)?)?;
    if s.genus() == 0 {
        return Err(Error::InvalidInput("the semigroup N has no gaps".into()));
    }
    Ok(s)
}

impl SemigroupArgs {
    fn semigroup(&self) -> Result<NumericalSemigroup> {
        match (&self.gens, self.n) {
            (Some(g), _) => semigroup(g),
            (None, Some(n)) => NumericalSemigroup::kunz_family(n),
            (None, None) => Err(Error::InvalidInput("either --gens or --n is required".into())),
        }
    }
}

impl RunArgs {
    pub fn context(&self) -> RunContext {
        let mut budget = Budget::default();
        if let Some(m) = self.max_ideals {
            budget.max_ideals = m as usize;
        }
        if let Some(m) = self.max_orbits {
            budget.max_orbits = m as usize;
        }
        if let Some(t) = self.timeout_s {
            budget = budget.with_timeout(t);
        }
        RunContext { budget, timings: self.timings, cache: self.cache_dir.as_ref().map(LatticeCache::new) }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Budget { .. } | Error::Timeout(_) => EXIT_BUDGET,
        Error::Gate(_) => EXIT_GATE,
        Error::Verification(_) | Error::Io(_) | Error::Json(_) => EXIT_FAILED,
        _ => EXIT_BAD_INPUT,
    }
}

/// `0` when every verdict is verified, `1` on any failure, `3` when something was skipped.
pub fn report_code(r: &KunzReport) -> i32 {
    if r.any_failed() {
        EXIT_FAILED
    } else if r.any_skipped() {
        EXIT_BUDGET
    } else {
        EXIT_VERIFIED
    }
}

fn gens_input(rep: &mut KunzReport, s: &NumericalSemigroup, field: &Field) {
    rep.input("generators", s.generators());
    rep.input("q", field.order());
    if let Some(m) = field.modulus() {
        rep.input("field_poly", m);
    }
}

fn sgp_info(args: &GensArgs) -> Result<KunzReport> {
    let s = semigroup(&args.gens)?;
    let mut rep = KunzReport::new(false);
    rep.input("generators", parse_generators(&args.gens)?);
    rep.result("semigroup", SemigroupInfo::from(&s));
    rep.result("gate", kunz::check_kunz(&s));
    Ok(rep)
}

fn enum_ideals(gens: &GensArgs, field: &FieldArgs, ctx: &RunContext) -> Result<KunzReport> {
    let s = semigroup(&gens.gens)?;
    let f = field.field()?;
    let mut rep = KunzReport::new(ctx.timings);
    gens_input(&mut rep, &s, &f);
    let model = RingModel::semigroup_ring(&s, &f);
    let start = Instant::now();
    let lat = lattice_for(&model, ctx.cache.as_ref(), &ctx.budget)?;
    rep.time("enumerate", start);
    let units = model.unit_reps(&ctx.budget)?;
    let orbits = unit_orbits(&model, &lat, &units, &ctx.budget)?;
    let canonical = canonical_ideals(&model, &lat)?;
    rep.result("f0", lat.len());
    rep.result("orbits", orbits.len());
    rep.result("canonical", canonical.len());
    let listing: Vec<serde_json::Value> = lat
        .ideals()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            serde_json::json!({
                "ideal": model.format_ideal(x),
                "values": x.values(),
                "orbit": orbits.orbit_of(i),
                "divisorial": model.is_divisorial(x),
            })
        })
        .collect();
    rep.result("ideals", listing);
    Ok(rep)
}

fn enum_stars(gens: &GensArgs, field: &FieldArgs, ctx: &RunContext) -> Result<KunzReport> {
    let s = semigroup(&gens.gens)?;
    let f = field.field()?;
    let mut rep = KunzReport::new(ctx.timings);
    gens_input(&mut rep, &s, &f);
    let start = Instant::now();
    let e = ctx.engine(RingModel::semigroup_ring(&s, &f))?;
    rep.time("lattice", start);
    let start = Instant::now();
    let stars = e.enumerate_stars(&ctx.budget)?;
    rep.time("enumerate", start);
    let classifier = Classifier::new(&e)?;
    rep.result("f0", e.lattice().len());
    rep.result("orbits", e.orbits().len());
    rep.result("count", stars.len());
    let reps: Vec<String> = e.orbits().reps().iter().map(|&i| e.model().format_ideal(e.lattice().get(i))).collect();
    rep.result("orbit_representatives", reps);
    let families: Vec<serde_json::Value> = stars
        .iter()
        .map(|x| serde_json::json!({"family": x.family(), "tag": classifier.tag(x)}))
        .collect();
    rep.result("families", families);
    Ok(rep)
}

pub fn execute(cli: &Cli) -> Result<KunzReport> {
    let ctx = cli.run.context();
    match &cli.command {
        Command::Sgp { command: SgpCommand::Info(g) } => sgp_info(g),
        Command::Ring { command } => match command {
            RingCommand::EnumIdeals { gens, field } => enum_ideals(gens, field, &ctx),
            RingCommand::EnumStars { gens, field } => enum_stars(gens, field, &ctx),
        },
        Command::Kunz { command } => match command {
            KunzCommand::Counterexample { sgp, field } => kunz::verify_counterexample(&sgp.semigroup()?, &field.field()?, &ctx),
            KunzCommand::FormulaCheck { sgp, field } => kunz::formula_check(&sgp.semigroup()?, &field.field()?, &ctx),
            KunzCommand::LowerBound { family, field } => kunz::lower_bound(family.n, &field.field()?, &ctx),
            KunzCommand::SubspaceOrbits { family, field } => kunz::subspace_orbits(family.n, &field.field()?, &ctx),
            KunzCommand::Lemmas { sgp, field } => kunz::lemmas(&sgp.semigroup()?, &field.field()?, &ctx),
        },
    }
}

/// Parses `args`, runs the command and writes the report to stdout. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_VERIFIED };
            let _ = e.print();
            return code;
        }
    };
    let jobs = cli.run.jobs.map(|j| j as usize).unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILED;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(report) => {
            print!("{}", render(&report, cli.run.out.into()));
            report_code(&report)
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Md => OutputFormat::Markdown,
        }
    }
}

