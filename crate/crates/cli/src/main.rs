//! `bnp`: step-by-step evaluation of a bicycle node network proposal.

mod steps;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};

use steps::RunContext;

#[derive(Debug, Parser)]
#[command(name = "bnp", version, about = "Evaluate a bicycle node network proposal")]
struct Cli {
    /// Configuration file.
    #[arg(long, global = true, default_value = "config.ini")]
    config: PathBuf,
    /// Output directory [default: `output_dir` from the config, else ./output].
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress progress messages.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    step: Step,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Step {
    /// Check that the input data is present and well formed.
    Validate,
    /// Export the input network and study-area layers with an overview map.
    Show,
    /// Reachability of point layers and coverage of polygon layers.
    Access,
    /// Slope profile of every edge from the elevation grid.
    Slope,
    /// Connected components of the network.
    Components,
    /// Classify edges by length and flag long dead ends.
    Edges,
    /// Classify loops by perimeter.
    Loops,
    /// Write summary statistics of every available analysis.
    Summary,
    /// Render maps of every available analysis.
    Export,
    /// Run every step in order.
    All,
}

const EXIT_USAGE: u8 = 64;

fn configure_threads() {
    let threads = std::env::var("BNP_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            eprintln!();
            let _ = Cli::command().write_help(&mut std::io::stderr());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    configure_threads();

    let result = RunContext::new(&cli.config, cli.out.as_deref(), cli.quiet).and_then(|mut ctx| ctx.run(cli.step));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
