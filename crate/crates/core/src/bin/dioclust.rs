use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dioclust::cli::{self, EmitFormat, ExitStatus, RunConfig, METHOD_GRAMMAR};
use dioclust::{MethodSpec, NetworkFormat};

/// Hierarchical clustering of asymmetric networks via (min,max) dioid algebra.
#[derive(Parser)]
#[command(name = "dioclust", version, after_help = METHOD_GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one method and write the ultrametric or dendrogram.
    #[command(after_help = METHOD_GRAMMAR)]
    Cluster(Opts),
    /// Report network validity, and optionally ultrametric validity.
    #[command(after_help = METHOD_GRAMMAR)]
    Validate(Opts),
    /// Print the partition at resolution --delta.
    #[command(after_help = METHOD_GRAMMAR)]
    Cut(Opts),
    /// Tabulate several methods pairwise and check the R/NR bounds.
    #[command(after_help = METHOD_GRAMMAR)]
    Compare(Opts),
    /// Brute-force chain enumeration for small networks.
    #[command(hide = true)]
    Oracle(Opts),
}

#[derive(Args)]
struct Opts {
    /// Input network file.
    #[arg(long)]
    input: PathBuf,
    /// Input format: dense-csv, edge-list or uses.
    #[arg(long, default_value = "dense-csv")]
    format: NetworkFormat,
    /// Clustering method (repeatable for compare and validate).
    #[arg(long)]
    method: Vec<MethodSpec>,
    /// Output format: csv, json, newick or dot (repeatable).
    #[arg(long)]
    emit: Vec<EmitFormat>,
    /// Output path, paired with --emit by position; stdout otherwise.
    #[arg(long)]
    output: Vec<PathBuf>,
    /// Resolution for cut and dot output.
    #[arg(long)]
    delta: Option<f64>,
    /// Drop a sector's own use when normalizing a uses table.
    #[arg(long)]
    uses_exclude_diagonal: bool,
    /// Tolerance for ultrametric validation.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Treat the input matrix as an ultrametric (validate, cut).
    #[arg(long)]
    ultrametric: bool,
}

impl From<Opts> for RunConfig {
    fn from(o: Opts) -> Self {
        RunConfig {
            input: o.input,
            format: o.format,
            methods: o.method,
            emit: o.emit,
            output: o.output,
            delta: o.delta,
            uses_exclude_diagonal: o.uses_exclude_diagonal,
            tolerance: o.tolerance,
            ultrametric_input: o.ultrametric,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                ExitStatus::Usage.code() as u8
            } else {
                0
            });
        }
    };
    let (run, opts): (cli::CommandFn, Opts) = match cli.command {
        Command::Cluster(o) => (cli::cmd_cluster, o),
        Command::Validate(o) => (cli::cmd_validate, o),
        Command::Cut(o) => (cli::cmd_cut, o),
        Command::Compare(o) => (cli::cmd_compare, o),
        Command::Oracle(o) => (cli::cmd_oracle, o),
    };
    ExitCode::from(cli::run_with_stdio(run, &opts.into()).code() as u8)
}
