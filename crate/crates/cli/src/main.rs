use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use veerpoly::census_io::load_census;
use veerpoly_cli::{guarded, run_entry, run_fill, BatchSummary, RunError, RunRecord, Selection};

#[derive(Parser)]
#[command(name = "veerpoly", version, about = "Taut, Alexander and double-cover polynomials of veering triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one triangulation given as `isosig_angles`.
    Compute {
        sig: String,
        /// Taut polynomial.
        #[arg(long)]
        taut: bool,
        /// Alexander polynomial.
        #[arg(long)]
        alex: bool,
        /// Alexander polynomial of the edge-orientation double cover.
        #[arg(long)]
        hat: bool,
        /// All polynomials plus the identity checks.
        #[arg(long)]
        all: bool,
        /// Only homology and edge-orientability data.
        #[arg(long)]
        edge_orientability: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Dehn-fill cusps and compare the specialised taut polynomial with
    /// the predicted Alexander polynomial of the filling.
    Fill {
        sig: String,
        /// Comma-separated `c<cusp>:<x>/<y>` slopes in each cusp's (a, b) basis.
        #[arg(long, default_value = "")]
        slopes: String,
    },
    /// Process a census file, writing one JSON line per entry in input order.
    Batch {
        census: PathBuf,
        #[arg(long, env = "VEERPOLY_JOBS")]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compute all polynomials and check the identities.
        #[arg(long)]
        verify: bool,
        /// Only homology and edge-orientability data.
        #[arg(long, conflicts_with = "verify")]
        edge_only: bool,
        #[arg(long)]
        timing: bool,
    },
}

fn print_json<T: Serialize>(v: &T) -> Result<(), RunError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| RunError::Internal(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn batch(
    census: PathBuf,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    verify: bool,
    edge_only: bool,
    timing: bool,
) -> Result<(), RunError> {
    let entries = load_census(&census).map_err(|e| RunError::Input(format!("{}: {e}", census.display())))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| RunError::Internal(e.to_string()))?;
    let mut sink: Box<dyn Write> = match &out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| RunError::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let sel = if edge_only { Selection::NONE } else { Selection::ALL };
    let mut summary = BatchSummary::default();
    for chunk in entries.chunks(256) {
        let records: Vec<RunRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|e| {
                    guarded(|| run_entry(&e.sig, sel, verify, timing))
                        .unwrap_or_else(|err| RunRecord::failed(&e.sig, &err))
                })
                .collect()
        });
        for r in &records {
            summary.add(r);
            let line = serde_json::to_string(r).map_err(|e| RunError::Internal(e.to_string()))?;
            writeln!(sink, "{line}").map_err(|e| RunError::Input(e.to_string()))?;
        }
    }
    sink.flush().map_err(|e| RunError::Input(e.to_string()))?;
    eprintln!("{}", serde_json::to_string(&summary).map_err(|e| RunError::Internal(e.to_string()))?);
    Ok(())
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Compute { sig, taut, alex, hat, all, edge_orientability, timing } => {
            let sel = if all || !(taut || alex || hat || edge_orientability) {
                Selection::ALL
            } else {
                Selection { taut, alex, hat }
            };
            let verify = all || !(taut || alex || hat || edge_orientability);
            let rec = guarded(|| run_entry(&sig, sel, verify, timing))?;
            print_json(&rec)
        }
        Command::Fill { sig, slopes } => {
            let rec = guarded(|| run_fill(&sig, &slopes))?;
            print_json(&rec)
        }
        Command::Batch { census, jobs, out, verify, edge_only, timing } => {
            batch(census, jobs, out, verify, edge_only, timing)
        }
    }
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
