use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sbs_cli::{cmd_analyze, cmd_stats, validate_config, CliError, Overrides};

/// Semantic Brand Score analysis of a text corpus.
#[derive(Debug, Parser)]
#[command(name = "sbs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Descriptive corpus statistics.
    Stats {
        #[arg(long)]
        config: PathBuf,
    },
    /// Build the co-occurrence network and score the focal terms.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Co-occurrence window, overriding the config.
        #[arg(long)]
        window: Option<usize>,
        /// Minimum edge weight, overriding the config.
        #[arg(long)]
        min_weight: Option<u64>,
        /// Associations kept per focal term, overriding the config.
        #[arg(long)]
        top_n: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Stats { config } => {
            let cfg = validate_config(&config)?;
            let summary = cmd_stats(&cfg)?;
            println!(
                "{} documents; stats written to {}",
                summary.stats.n_docs,
                cfg.output_dir.display()
            );
        }
        Command::Analyze {
            config,
            window,
            min_weight,
            top_n,
        } => {
            let cfg = validate_config(&config)?;
            let overrides = Overrides {
                window,
                min_weight,
                top_n,
            };
            let summary = cmd_analyze(&cfg, overrides)?;
            println!(
                "network: {} nodes, {} edges; {} focal terms scored; outputs in {}",
                summary.nodes,
                summary.edges,
                summary.focal.len(),
                cfg.output_dir.display()
            );
            for r in &summary.reports {
                println!("{:<16} {:>10.4}", r.term, r.sbs);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
