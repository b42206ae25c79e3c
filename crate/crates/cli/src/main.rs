use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser)]
#[command(name = "localdom", version, about = "Constant-round dominating set approximation in the LOCAL model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PipelineArgs {
    /// planar, triangle-free, bipartite, girth5, outerplanar, k3t:<nabla1>:<t>, general:<nabla1>
    #[arg(long, default_value = "planar")]
    preset: String,
    /// JSON preset file; overrides --preset
    #[arg(long)]
    params: Option<PathBuf>,
    /// lp or greedy
    #[arg(long, default_value = "lp")]
    phase3: String,
    /// Approximation slack, as a decimal or fraction
    #[arg(long, default_value = "1")]
    epsilon: String,
    /// Abort when the input visibly breaks the class promise
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance as an edge list
    Gen {
        /// planar, triangle-free, bipartite, girth5, outerplanar, er:<avg-degree>, ggm:<gamma>:<m>
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the pipeline and write a JSON report
    Run {
        graph: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the pipeline and compare with the exact optimum
    Verify {
        graph: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Branch-node budget of the exact solver
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch of generated instances, both phase-3 variants, as CSV
    Bench {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Size range `lo..hi` (inclusive) or a single size
        #[arg(long, default_value = "20..40")]
        n: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Preset; defaults to the one matching --class
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value = "1")]
        epsilon: String,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

/// `Ok(false)` when a produced set does not dominate.
fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { class, n, seed, out } => {
            commands::gen(&class, n, seed, out.as_deref())?;
            Ok(true)
        }
        Command::Run { graph, pipeline, out } => commands::run(&graph, &pipeline.into(), out.as_deref()),
        Command::Verify {
            graph,
            pipeline,
            budget,
            out,
        } => commands::verify(&graph, &pipeline.into(), budget, out.as_deref()),
        Command::Bench {
            class,
            count,
            n,
            seed,
            preset,
            epsilon,
            budget,
            out,
        } => commands::bench(
            &commands::BenchOptions {
                class,
                count,
                sizes: n,
                seed,
                preset,
                epsilon,
                budget,
            },
            out.as_deref(),
        ),
    }
}

impl From<PipelineArgs> for commands::PipelineOptions {
    fn from(a: PipelineArgs) -> Self {
        commands::PipelineOptions {
            preset: a.preset,
            params: a.params,
            phase3: a.phase3,
            epsilon: a.epsilon,
            strict: a.strict,
        }
    }
}
