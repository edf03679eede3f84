mod commands;
mod inputs;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitlab::{Budgets, Error};

#[derive(Parser, Debug)]
#[command(name = "orbitlab", version, about = "Orbit-method, M_q and representation-zeta computations")]
pub struct Cli {
    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Flat `key = value` file overriding resource budgets.
    #[arg(long, global = true, value_name = "FILE")]
    budget_config: Option<PathBuf>,

    /// Single budget override, e.g. `--budget enumeration=2^20`. Repeatable.
    #[arg(long = "budget", global = true, value_name = "KEY=VALUE")]
    budget_overrides: Vec<String>,

    /// Write a run manifest (inputs, budgets, output digest, timing) to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite groups given by Cayley table, permutations or a pc presentation.
    #[command(subcommand)]
    Grouptab(GroupCmd),
    /// Nilpotent associative algebras.
    #[command(subcommand)]
    Nilalg(NilalgCmd),
    /// The algebra group 1 + J.
    #[command(subcommand)]
    Algroup(AlgroupCmd),
    /// Coadjoint orbits and orbit-method characters.
    #[command(subcommand)]
    Orbits(OrbitsCmd),
    /// The abelian group M_q.
    #[command(subcommand)]
    Mq(MqCmd),
    /// Representation zeta functions of products of groups of Lie type.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Run the identity suites over the bundled corpus.
    VerifyCorpus(VerifyArgs),
    /// Write census tables, character tables, M_q invariants or series checkpoints.
    Export(ExportArgs),
    /// Print the effective resource budgets.
    Budget,
    /// Re-run a manifest and compare the output digest.
    Replay {
        manifest: PathBuf,
    },
}

/// A group file path, `library:NAME`, or `disproof:P`.
#[derive(Args, Debug, Clone)]
pub struct GroupInput {
    pub group: String,
}

/// An algebra file path, or `unitriangular:N:P:E`, `augmentation:NAME:P:E`, `zero:D:P:E`,
/// `truncated:N:P:E`.
#[derive(Args, Debug, Clone)]
pub struct AlgebraInput {
    pub algebra: String,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Conjugacy classes.
    Classes(GroupInput),
    /// Derived subgroup and abelianization.
    Derived(GroupInput),
}

#[derive(Subcommand, Debug)]
pub enum NilalgCmd {
    /// Dimension, nilpotency class and power-ideal chain.
    Info(AlgebraInput),
}

#[derive(Subcommand, Debug)]
pub enum AlgroupCmd {
    /// Conjugacy classes of 1 + J.
    Classes(AlgebraInput),
    /// Order of the abelianization of 1 + J, by closure.
    Abelianization(AlgebraInput),
}

#[derive(Subcommand, Debug)]
pub enum OrbitsCmd {
    /// Orbit count, sizes and fake degrees.
    Census(AlgebraInput),
    /// Orbit-method characters with orthonormality and induction checks.
    Characters(AlgebraInput),
    /// Compare |J/[J,J]_L| with |(1 + J)_ab|.
    Probe(AlgebraInput),
}

#[derive(Subcommand, Debug)]
pub enum MqCmd {
    /// Invariant factors of M_q for q = p^e.
    Compute {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Exact,
    Akov,
}

impl From<ModeArg> for orbitlab::zetalab::SeriesMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => orbitlab::zetalab::SeriesMode::Exact,
            ModeArg::Akov => orbitlab::zetalab::SeriesMode::Akov,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ZetaCmd {
    /// Degree multiset of SL_2(F_q).
    Sl2 { q: u64 },
    /// Truncated zeta function of a product given as a JSON spec.
    Product {
        spec: PathBuf,
        #[arg(long = "N", value_name = "CUTOFF")]
        cutoff: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Write `n r_n R_n` columns for plotting.
        #[arg(long, value_name = "FILE")]
        emit_plot_data: Option<PathBuf>,
    },
    /// Abscissa estimate for a product given as a JSON spec.
    Abscissa {
        spec: PathBuf,
        #[arg(long = "N", value_name = "CUTOFF")]
        cutoff: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Write `n R_n log(R_n)/log(n)` columns for plotting.
        #[arg(long, value_name = "FILE")]
        emit_plot_data: Option<PathBuf>,
    },
    /// Product of groups of one Lie type with prescribed abscissa c.
    Target {
        /// Rational such as `1/2`, `2` or `0.75`.
        #[arg(long)]
        c: String,
        #[arg(long = "type", default_value = "A1")]
        lie_type: String,
        #[arg(long)]
        p: u64,
        /// Factors `L(p^i)` written to the emitted spec.
        #[arg(long, default_value_t = 12)]
        factors: u64,
        /// Terms used for the partial-sum dichotomy.
        #[arg(long, default_value_t = 400)]
        terms: u64,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only this suite.
    #[arg(long)]
    only: Option<String>,
    /// Additional algebra files to validate.
    #[arg(long = "algebra", value_name = "FILE")]
    extra_algebras: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ExportTarget {
    Census,
    Characters,
    Mq,
    Series,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long, value_enum)]
    what: ExportTarget,
    /// Algebra (census, characters), group (mq) or spec file (series).
    input: String,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long = "N", value_name = "CUTOFF")]
    cutoff: Option<u64>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn budgets(cli: &Cli) -> Result<Budgets, Error> {
    let mut b = Budgets::default();
    if let Some(path) = &cli.budget_config {
        b.apply_config(&inputs::read(path)?)?;
    }
    for kv in &cli.budget_overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::validation(format!("budget override `{kv}` is not KEY=VALUE")))?;
        let value = orbitlab::budget::parse_budget_value(v.trim())
            .ok_or_else(|| Error::validation(format!("budget value `{v}` is not an integer")))?;
        b.set(k.trim(), value)?;
    }
    Ok(b)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::validation(format!("--threads: {e}")))?;
    }
    let budgets = budgets(&cli)?;
    if let Command::Replay { manifest } = &cli.command {
        return manifest::replay(manifest);
    }
    let start = std::time::Instant::now();
    let outcome = commands::dispatch(&cli.command, &budgets)?;
    print!("{}", outcome.stdout);
    if let Some(path) = &cli.manifest {
        manifest::write(path, &outcome, &budgets, start.elapsed())?;
    }
    Ok(ExitCode::from(outcome.exit_code))
}
