use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perfrank::{ConstraintSet, Objective};
use perfrank_cli::{
    commands, AuditOptions, GridOptions, OutputFormat, RankOptions, ScoreChoice, TableOptions,
    TauOptions, UsageError,
};

/// Audit classification scores for ranking validity, search their extreme
/// rank correlations with the ranking-score family, and rank entities from
/// evaluated performances.
#[derive(Parser)]
#[command(name = "perfrank", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full score review: three tests plus extreme rank correlations
    /// for every built-in score on the three standard constraint sets.
    Table1(Table1Args),
    /// Run the three ranking-validity tests for one score.
    Audit(AuditArgs),
    /// Search the extreme Kendall correlation between a score and the
    /// ranking-score family.
    Tau(TauArgs),
    /// Rank entities from a CSV of evaluated performances.
    Rank(RankArgs),
    /// Print a performance grid as CSV.
    Grid(GridArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Markdown,
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Markdown => OutputFormat::Markdown,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    /// Grid resolution (defaults: 32 unconstrained, 80 fixed-prior).
    #[arg(long)]
    resolution: Option<u32>,
    /// Seed for the deterministic pair subsampling on large grids.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ConstraintArgs {
    /// Pin the positive prior to this value in (0, 1).
    #[arg(long, conflicts_with = "unconstrained")]
    prior: Option<f64>,
    /// Use the whole performance simplex (the default).
    #[arg(long)]
    unconstrained: bool,
}

impl ConstraintArgs {
    fn constraint(&self) -> ConstraintSet {
        match self.prior {
            Some(p) => ConstraintSet::FixedPositivePrior(p),
            None => ConstraintSet::Unconstrained,
        }
    }
}

#[derive(Args)]
struct ScoreArgs {
    /// A built-in score name (see `table1` for the list).
    #[arg(long, conflicts_with = "expr")]
    score: Option<String>,
    /// A score expression over ptn, pfp, pfn, ptp.
    #[arg(long)]
    expr: Option<String>,
}

impl ScoreArgs {
    fn choice(&self) -> Result<ScoreChoice, UsageError> {
        match (&self.score, &self.expr) {
            (Some(name), None) => Ok(ScoreChoice::Named(name.clone())),
            (None, Some(text)) => Ok(ScoreChoice::Expression(text.clone())),
            _ => Err(UsageError(
                "exactly one of --score or --expr is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct Table1Args {
    #[command(flatten)]
    common: CommonArgs,
    /// Restrict the run to a single score.
    #[arg(long)]
    only: Option<String>,
    /// Compare the verdicts against the reference table; exit 1 on mismatch.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    score: ScoreArgs,
    #[command(flatten)]
    constraint: ConstraintArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct TauArgs {
    #[command(flatten)]
    score: ScoreArgs,
    #[command(flatten)]
    constraint: ConstraintArgs,
    /// Search direction.
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Min,
    Max,
}

#[derive(Args)]
struct RankArgs {
    /// Entity CSV (`id,p_tn,p_fp,p_fn,p_tp`); `-` reads standard input.
    #[arg(long)]
    input: String,
    #[command(flatten)]
    score: ScoreArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    constraint: ConstraintArgs,
    #[command(flatten)]
    common: CommonArgs,
}

fn validate_prior(constraint: &ConstraintArgs) -> Result<(), UsageError> {
    if let Some(p) = constraint.prior {
        if !(p > 0.0 && p < 1.0) {
            return Err(UsageError(format!(
                "--prior must lie strictly between 0 and 1, got {p}"
            )));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<commands::CommandOutput, UsageError> {
    match cli.command {
        Command::Table1(args) => {
            let options = TableOptions {
                resolution: args.common.resolution,
                seed: args.common.seed,
                only: args.only,
                check: args.check,
            };
            commands::run_table1(&options, args.common.format.into())
        }
        Command::Audit(args) => {
            validate_prior(&args.constraint)?;
            let options = AuditOptions {
                score: args.score.choice()?,
                constraint: args.constraint.constraint(),
                resolution: args.common.resolution,
                seed: args.common.seed,
            };
            commands::run_audit(&options, args.common.format.into())
        }
        Command::Tau(args) => {
            validate_prior(&args.constraint)?;
            let options = TauOptions {
                score: args.score.choice()?,
                constraint: args.constraint.constraint(),
                objective: match args.objective {
                    ObjectiveArg::Min => Objective::Min,
                    ObjectiveArg::Max => Objective::Max,
                },
                resolution: args.common.resolution,
                seed: args.common.seed,
            };
            commands::run_tau(&options, args.common.format.into())
        }
        Command::Rank(args) => {
            let csv_text = if args.input == "-" {
                let mut buffer = String::new();
                std::io::stdin()
                    .read_to_string(&mut buffer)
                    .map_err(|e| UsageError(format!("reading stdin: {e}")))?;
                buffer
            } else {
                std::fs::read_to_string(&args.input)
                    .map_err(|e| UsageError(format!("reading {}: {e}", args.input)))?
            };
            let options = RankOptions {
                score: args.score.choice()?,
            };
            commands::run_rank(&options, &csv_text, args.common.format.into())
        }
        Command::Grid(args) => {
            validate_prior(&args.constraint)?;
            let options = GridOptions {
                constraint: args.constraint.constraint(),
                resolution: args.common.resolution,
            };
            commands::run_grid(&options)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.exit_code as u8)
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}
