mod commands;
mod crystal;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Context};

#[derive(Parser, Debug)]
#[command(name = "pmgraph", version, about = "Positively multiplicative graphs: bases, structure constants, roots")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for per-root analyses.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest n for which the rebase oracle cross-checks positive roots.
    #[arg(long, global = true, default_value_t = 12)]
    oracle_bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph JSON file.
    pub graph: PathBuf,
    /// Root vertex, by index or label.
    #[arg(long, default_value = "0")]
    pub root: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Connectivity, minimal polynomial degree, multiplicativity and PM verdict.
    Analyze(GraphArgs),
    /// The basis b_0..b_{n-1} at the root.
    Basis(GraphArgs),
    /// Structure constants at the root.
    Sc {
        #[command(flatten)]
        g: GraphArgs,
        /// Print only column j of b_i.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Option<Vec<usize>>,
    },
    /// Multiplicative roots and positive roots.
    Roots(GraphArgs),
    /// The maximal-index group I_m.
    Group(GraphArgs),
    /// Change the root of a basis.
    Rebase {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        to: String,
    },
    /// Conjugate a graph by a generalized permutation.
    Conjugate {
        graph: PathBuf,
        /// Permutation, comma separated.
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
        /// Monomial scalars, comma separated; all 1 when omitted.
        #[arg(long, value_delimiter = ',')]
        scalars: Option<Vec<String>>,
        /// Write the conjugated graph JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetrize the basis by a finite-order automorphism.
    Symmetrize {
        #[command(flatten)]
        g: GraphArgs,
        /// JSON file with "sigma" and "lambdas".
        #[arg(long, conflicts_with = "sigma")]
        omega: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', requires = "sigma")]
        lambdas: Option<Vec<String>>,
        /// Sum over the orbit instead of the full order.
        #[arg(long)]
        normalized: bool,
    },
    /// Dimension vector of the specialized structure constants.
    Dimvec {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Finite slice of the expanded graph.
    Expand {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        t: Vec<f64>,
        /// Attach the harmonic function of t and verify it.
        #[arg(long)]
        harmonic: bool,
    },
    /// Generate an example family as graph JSON.
    Crystal {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(short = 'k')]
        k: Option<u32>,
        #[arg(short = 'n')]
        n: Option<u32>,
        #[arg(short = 'l')]
        l: Option<u32>,
        /// Companion coefficients c_0..c_{n-1}.
        #[arg(long, value_delimiter = ',')]
        coeffs: Option<Vec<i64>>,
        /// Run the family's invariant checks.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A,
    S,
    Su2,
    Hamermesh,
    Companion,
}

fn run(cli: Cli) -> Result<report::Outcome, CliError> {
    let ctx = Context::new(cli.oracle_bound, std::env::args().collect())?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    match cli.command {
        Command::Analyze(g) => commands::analyze(&ctx, &g),
        Command::Basis(g) => commands::basis(&ctx, &g),
        Command::Sc { g, pair } => commands::sc(&ctx, &g, pair.map(|p| (p[0], p[1]))),
        Command::Roots(g) => commands::roots(&ctx, &g),
        Command::Group(g) => commands::group(&ctx, &g),
        Command::Rebase { g, to } => commands::rebase(&ctx, &g, &to),
        Command::Conjugate {
            graph,
            sigma,
            scalars,
            out,
        } => commands::conjugate(&ctx, &graph, sigma, scalars, out.as_deref()),
        Command::Symmetrize {
            g,
            omega,
            sigma,
            lambdas,
            normalized,
        } => commands::symmetrize(&ctx, &g, omega.as_deref(), sigma, lambdas, normalized),
        Command::Dimvec { g, t } => commands::dimvec(&ctx, &g, &t),
        Command::Expand { g, depth, t, harmonic } => commands::expand(&ctx, &g, depth, &t, harmonic),
        Command::Crystal {
            family,
            k,
            n,
            l,
            coeffs,
            verify,
            out,
        } => crystal::crystal(
            &ctx,
            &crystal::Params { family, k, n, l, coeffs },
            verify,
            out.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            outcome.emit(json);
            ExitCode::from(outcome.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
