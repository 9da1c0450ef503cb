use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chaos_bounds::cli::{run, Command, RunConfig};
use chaos_bounds::diagram::DEFAULT_DIAGRAM_BUDGET;
use chaos_bounds::moment::DEFAULT_TERM_BUDGET;
use chaos_bounds::report::ReportFormat;

/// Moment and tail bounds for multilinear forms of random signs and
/// sub-Gaussian variables, with exact oracles and seeded simulation.
#[derive(Parser)]
#[command(name = "chaos-bounds", version)]
struct CliArgs {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Closed-form bounds for a form document at requested u and M values
    Bounds(CommonArgs),
    /// Exact enumeration oracles next to each bound, with verdicts
    Exact(CommonArgs),
    /// Diagram counts and pairing-sum moments of the embedded form
    Diagrams(CommonArgs),
    /// Seeded Monte Carlo tail estimates under chosen input distributions
    Simulate(CommonArgs),
    /// Double-factorial versus Borell moment bounds over M = 1..=M
    Compare(CommonArgs),
    /// KS distance of the normalized constant form to its V·H_k(η) limit
    Sharpness(CommonArgs),
    /// Run the built-in verification fixtures; exits 4 on any failure
    Selfcheck(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a JSON form document
    #[arg(long)]
    form: Option<PathBuf>,
    /// Degree k (compare and sharpness without --form)
    #[arg(long)]
    k: Option<u32>,
    /// Maximum moment index; tables run M = 1..=M
    #[arg(long = "M")]
    m: Option<u32>,
    /// Tail threshold u (repeatable)
    #[arg(long)]
    u: Vec<f64>,
    /// Dimension n for the sharpness demo (repeatable)
    #[arg(long)]
    n: Vec<usize>,
    /// Scale V of the sharpness form
    #[arg(long = "V", default_value_t = 1.0)]
    v: f64,
    /// Draws per Monte Carlo estimate
    #[arg(long, default_value_t = chaos_bounds::cli::DEFAULT_SAMPLES)]
    samples: usize,
    /// RNG seed; falls back to CHAOS_BOUNDS_SEED, then a fixed default
    #[arg(long)]
    seed: Option<u64>,
    /// Input distribution: rademacher, gaussian or uniform
    /// (repeatable for per-coordinate assignment)
    #[arg(long)]
    dist: Vec<String>,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report to this path instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Live-term cap for the expansion oracle
    #[arg(long = "budget-terms", default_value_t = DEFAULT_TERM_BUDGET)]
    budget_terms: usize,
    /// Diagram-count cap for pairing sums
    #[arg(long = "budget-diagrams", default_value_t = DEFAULT_DIAGRAM_BUDGET)]
    budget_diagrams: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn to_config(command: Command, args: CommonArgs) -> RunConfig {
    let mut config = RunConfig::new(command);
    config.form_path = args.form;
    config.k = args.k;
    config.m = args.m;
    config.u_grid = args.u;
    config.n_list = args.n;
    config.v = args.v;
    config.samples = args.samples;
    config.seed = args.seed;
    config.dists = args.dist;
    config.format = match args.format {
        FormatArg::Json => ReportFormat::Json,
        FormatArg::Csv => ReportFormat::Csv,
    };
    config.out = args.out;
    config.term_budget = args.budget_terms;
    config.diagram_budget = args.budget_diagrams;
    config
}

fn main() -> ExitCode {
    let cli = CliArgs::parse();
    let config = match cli.command {
        CliCommand::Bounds(args) => to_config(Command::Bounds, args),
        CliCommand::Exact(args) => to_config(Command::Exact, args),
        CliCommand::Diagrams(args) => to_config(Command::Diagrams, args),
        CliCommand::Simulate(args) => to_config(Command::Simulate, args),
        CliCommand::Compare(args) => to_config(Command::Compare, args),
        CliCommand::Sharpness(args) => to_config(Command::Sharpness, args),
        CliCommand::Selfcheck(args) => to_config(Command::Selfcheck, args),
    };
    match run(&config) {
        Ok(outcome) => {
            if let Some(path) = &config.out {
                if let Err(e) = std::fs::write(path, &outcome.report) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.report);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
