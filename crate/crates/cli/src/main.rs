use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commzeta_cli::{
    cmd_finite_affine, cmd_finite_random, cmd_finite_table, cmd_heisenberg, cmd_pgl2_global,
    cmd_pgl2_oracle, cmd_repro_thm1, cmd_repro_thm2, cmd_repro_thm3, cmd_series, cmd_tree,
    CliError, OutputFormat,
};
use commzeta_core::twin_covers::EnumerationBudget;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

/// Commensurizer growth sequences and zeta functions.
#[derive(Parser)]
#[command(name = "commzeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// RNG seed, recorded in JSON output; only randomized modes consume it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Local growth counts of the p-adic Heisenberg group.
    Heisenberg {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_n: u32,
        /// Also run the brute-force enumeration and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Arithmetic lattice growth at a place or globally.
    Pgl2(Pgl2Args),
    /// Twin-cover enumeration over a base multigraph file.
    Tree {
        /// Multigraph file: `vertices V darts D`, dart lines, `base v0`.
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        max_degree: u32,
        /// Count all twin covers instead of only minimal ones.
        #[arg(long)]
        skip_minimality: bool,
        #[arg(long, default_value_t = 5)]
        budget_degree: u32,
        #[arg(long, default_value_t = 2)]
        budget_base_vertices: u32,
    },
    /// Growth sequence of a finite group from a table file, an affine
    /// construction, or randomized property trials.
    Finite(FiniteArgs),
    /// Truncated Dirichlet series tables.
    Series {
        /// One of: identity, heisenberg, pgl2.
        #[arg(long)]
        kind: String,
        #[arg(long, alias = "N")]
        limit: u64,
        /// Ramified primes for the pgl2 kind, comma separated.
        #[arg(long, value_delimiter = ',')]
        ramified: Vec<u64>,
        /// Emit partial sums instead of coefficients.
        #[arg(long)]
        cumulative: bool,
    },
    /// Desk-scale reproduction of the cubic Heisenberg growth.
    ReproThm1,
    /// Desk-scale reproduction of the quadratic arithmetic-lattice band.
    ReproThm2,
    /// Desk-scale reproduction of tree-lattice growth via twin covers.
    ReproThm3,
}

#[derive(Args)]
struct Pgl2Args {
    /// Residue characteristic (oracle mode) or unused in global mode.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    /// Compare the closed form against the congruence-quotient oracle.
    #[arg(long)]
    oracle: bool,
    /// Emit the global series up to this limit.
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    ramified: Vec<u64>,
    #[arg(long)]
    cumulative: bool,
}

#[derive(Args)]
struct FiniteArgs {
    /// Group table file: `order k` plus k rows.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Subgroup elements, comma separated, for table mode.
    #[arg(long, value_delimiter = ',')]
    subgroup: Vec<u32>,
    /// Dimension of the affine construction GL_n(F_p) x F_p^n.
    #[arg(long)]
    affine_dim: Option<usize>,
    #[arg(long)]
    affine_p: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    size_cap: u128,
    /// Run this many randomized index-inequality trials instead.
    #[arg(long)]
    random_trials: Option<u32>,
    #[arg(long, default_value_t = 500)]
    max_order: usize,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let format: OutputFormat = cli.format.into();
    let seed = cli.seed;
    match &cli.command {
        Command::Heisenberg { p, max_n, oracle } => {
            cmd_heisenberg(*p, *max_n, *oracle, format, seed)
        }
        Command::Pgl2(args) => {
            if args.oracle {
                let p = args.p.ok_or_else(|| {
                    CliError::Invalid("oracle mode needs --p and --n".into())
                })?;
                let n = args.n.ok_or_else(|| {
                    CliError::Invalid("oracle mode needs --p and --n".into())
                })?;
                cmd_pgl2_oracle(p, n, format, seed)
            } else {
                let limit = args.limit.ok_or_else(|| {
                    CliError::Invalid("global mode needs --limit".into())
                })?;
                let ramified: BTreeSet<u64> = args.ramified.iter().copied().collect();
                cmd_pgl2_global(limit, &ramified, args.cumulative, format, seed)
            }
        }
        Command::Tree {
            base,
            max_degree,
            skip_minimality,
            budget_degree,
            budget_base_vertices,
        } => {
            let text = std::fs::read_to_string(base)
                .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", base.display())))?;
            let budget = EnumerationBudget {
                max_degree: *budget_degree,
                max_base_vertices: *budget_base_vertices,
            };
            cmd_tree(&text, *max_degree, *skip_minimality, budget, format, seed)
        }
        Command::Finite(args) => {
            if let Some(trials) = args.random_trials {
                cmd_finite_random(trials, args.max_order, seed, format)
            } else if let Some(dim) = args.affine_dim {
                let p = args.affine_p.ok_or_else(|| {
                    CliError::Invalid("affine mode needs --affine-p".into())
                })?;
                cmd_finite_affine(dim, p, args.size_cap, format, seed)
            } else if let Some(path) = &args.group {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Invalid(format!("cannot read {}: {e}", path.display()))
                })?;
                cmd_finite_table(&text, &args.subgroup, format, seed)
            } else {
                Err(CliError::Invalid(
                    "finite needs --group, --affine-dim, or --random-trials".into(),
                ))
            }
        }
        Command::Series { kind, limit, ramified, cumulative } => {
            let ramified: BTreeSet<u64> = ramified.iter().copied().collect();
            cmd_series(kind, *limit, &ramified, *cumulative, format, seed)
        }
        Command::ReproThm1 => cmd_repro_thm1(),
        Command::ReproThm2 => cmd_repro_thm2(),
        Command::ReproThm3 => cmd_repro_thm3(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &output) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            // Mismatch reports carry the full summary; show it before the
            // one-line diagnostic.
            if let CliError::Mismatch(report) = &err {
                print!("{report}");
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
