//! `jordeg`: verify identities, invariants, degenerations and
//! non-degenerations of low-dimensional Jordan algebras.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jordeg_core::exact::groebner::DEFAULT_BUDGET;

use commands::{CliError, Options};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "jordeg", version, about = "Exact checks for degenerations of Jordan algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Gröbner work budget in reduction steps.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for independent verifications.
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Commutativity and the Jordan identity.
    Check {
        /// Catalog label (T02, 𝕋₀₂, B4, J5) or algebra file.
        target: String,
    },
    /// Derivations, radical, nilpotency, powers, Peirce profiles and H².
    Invariants { target: String },
    /// Verify degeneration witnesses from a file or the shipped ones for an
    /// edge such as T03->T09.
    VerifyDeg { witness: String },
    /// Check non-degeneration certificates from a file or for a pair such
    /// as T10-/->T17.
    VerifyNondeg {
        certificate: String,
        /// Accept the recorded Gröbner reductions instead of recomputing them.
        #[arg(long)]
        trust_transcripts: bool,
    },
    /// Assemble the degeneration graph of a catalog.
    Graph {
        /// dim2 or dim3.
        family: String,
        /// Print the primary edges as a dot digraph.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        trust_transcripts: bool,
    },
    /// Second cohomology H²(A, A).
    Cohomology { target: String },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run every check for a scope: dim2, dim3, or marginal a..b.
    VerifyAll {
        scope: String,
        range: Option<String>,
        /// Also compare the data files in this directory with the embedded
        /// copies.
        #[arg(long)]
        data_dir: Option<PathBuf>,
        #[arg(long)]
        trust_transcripts: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the catalog algebras.
    List,
}

fn run(cli: &Cli) -> Result<(report::Report, Option<String>), CliError> {
    let opts = Options { budget: cli.budget };
    let report = match &cli.command {
        Command::Check { target } => commands::check(target)?,
        Command::Invariants { target } => commands::invariants(target, &opts)?,
        Command::VerifyDeg { witness } => commands::verify_deg(witness, &opts)?,
        Command::VerifyNondeg {
            certificate,
            trust_transcripts,
        } => commands::verify_nondeg(certificate, *trust_transcripts, &opts)?,
        Command::Graph {
            family,
            dot,
            trust_transcripts,
        } => return commands::graph(family, *dot, *trust_transcripts, &opts),
        Command::Cohomology { target } => commands::cohomology(target)?,
        Command::Catalog {
            action: CatalogAction::List,
        } => commands::catalog_list(),
        Command::VerifyAll {
            scope,
            range,
            data_dir,
            trust_transcripts,
        } => commands::verify_all(scope, range.as_deref(), data_dir.as_deref(), *trust_transcripts, &opts)?,
    };
    Ok((report, None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((report, dot)) => {
            let out = match (cli.format, dot) {
                (Format::Text, Some(dot)) => dot,
                (Format::Text, None) => report.to_text(),
                (Format::Json, _) => report.to_json(),
            };
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
