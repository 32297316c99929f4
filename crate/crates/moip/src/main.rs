use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use moip::cli::{self, GeneratorSpec, Shape, SolveOptions};

#[derive(Parser)]
#[command(name = "moip", about = "Nonlinear utility optimisation over MOIP efficient sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file
    Solve {
        /// Path to the instance file
        instance: PathBuf,
        /// Use the full-enumeration baseline instead of shrinking bounds
        #[arg(long)]
        naive: bool,
        /// Stop before starting an IP solve beyond this many
        #[arg(long, value_name = "N")]
        max_ips: Option<u64>,
        /// Wall-clock budget in seconds
        #[arg(long, value_name = "S")]
        time_limit: Option<f64>,
        /// Write the iteration trace as TSV to this path
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Suppress the report; the exit code carries the outcome
        #[arg(long)]
        quiet: bool,
    },
    /// Generate a random instance file
    Generate {
        /// Problem shape: "assignment" or "general"
        #[arg(long, default_value = "assignment")]
        shape: String,
        /// Assignment side length (assignment shape)
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Variable count (general shape)
        #[arg(long, default_value_t = 6)]
        vars: usize,
        /// Constraint count (general shape)
        #[arg(long, default_value_t = 3)]
        cons: usize,
        /// Number of objectives
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        /// Smallest objective coefficient
        #[arg(long, default_value_t = 1)]
        cost_min: i64,
        /// Largest objective coefficient
        #[arg(long, default_value_t = 20)]
        cost_max: i64,
        /// RNG seed; identical seeds give identical bytes
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Utility expression (defaults to a sum of squares)
        #[arg(long)]
        utility: Option<String>,
        /// Output path
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve {
            instance,
            naive,
            max_ips,
            time_limit,
            trace,
            quiet,
        } => cli::cmd_solve(
            &instance,
            &SolveOptions {
                naive,
                max_ips,
                time_limit,
                trace_path: trace,
                quiet,
            },
        ),
        Command::Generate {
            shape,
            size,
            vars,
            cons,
            k,
            cost_min,
            cost_max,
            seed,
            utility,
            output,
        } => {
            let shape = match shape.as_str() {
                "assignment" => Shape::Assignment { size },
                "general" => Shape::General { vars, cons },
                other => {
                    eprintln!("error: unknown shape `{other}`");
                    return ExitCode::from(cli::EXIT_ERROR as u8);
                }
            };
            let spec = GeneratorSpec {
                shape,
                cost_min,
                cost_max,
                seed,
                k,
            };
            cli::cmd_generate(&spec, utility.as_deref(), &output)
        }
    };
    ExitCode::from(code as u8)
}
