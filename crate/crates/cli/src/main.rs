use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use citecoder_cli::commands::EXIT_INTERNAL;
use citecoder_cli::{cmd_code, cmd_eval, cmd_net, cmd_report, CliError, CodeArgs};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "citecoder",
    version,
    about = "Citation content analysis: code in-text citations on a twelve-category codebook"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Code every citation in a corpus.
    Code {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Fail on the first document that does not parse.
        #[arg(long)]
        strict: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Output directory, overriding the configuration.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frequency table or cross-tabulation from coded records.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Agreement between coded records and gold annotations.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        categories: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the coauthorship edge list.
    Net {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let res = match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| CliError {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Code {
            manifest,
            config,
            strict,
            jobs,
            out,
        } => {
            let outcome = cmd_code(&CodeArgs {
                manifest,
                config,
                strict,
                jobs,
                out_dir: out,
            })?;
            for s in &outcome.skipped {
                eprintln!("skipped {}: {}", s.path, s.error);
            }
            eprintln!(
                "coded {} citations ({} unresolved) into {}",
                outcome.records,
                outcome.unresolved,
                outcome.output_dir.display()
            );
        }
        Command::Report {
            input,
            rows,
            cols,
            out,
        } => {
            emit(out.as_deref(), &cmd_report(&input, &rows, cols.as_deref())?)?;
        }
        Command::Eval {
            input,
            gold,
            categories,
            out,
        } => {
            let (csv, ev) = cmd_eval(&input, &gold, &categories)?;
            for (doc, id) in &ev.unmatched_gold {
                eprintln!("unmatched gold item {doc}#{id}");
            }
            eprintln!(
                "{} aligned, {} unmatched gold items",
                ev.aligned,
                ev.unmatched_gold.len()
            );
            emit(out.as_deref(), &csv)?;
        }
        Command::Net {
            manifest,
            out,
            config,
            strict,
        } => {
            let (edges, skipped) = cmd_net(&manifest, config.as_deref(), strict)?;
            for s in &skipped {
                eprintln!("skipped {}: {}", s.path, s.error);
            }
            emit(Some(&out), &edges)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
