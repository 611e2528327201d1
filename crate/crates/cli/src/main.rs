use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use trotter_oracle::{describe::describe, CliError, Experiment};

#[derive(Parser)]
#[command(name = "trotter-oracle", version, about = "Trotter error experiments on dense state vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config, or re-run a manifest.
    Run {
        config: PathBuf,
        /// Worker threads for sweep points.
        #[arg(long)]
        jobs: Option<usize>,
        /// Output directory; overrides `output_dir`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the config keys, defaults and CSV columns of an experiment.
    Describe { experiment: String },
    /// Write a random Pauli Hamiltonian with unit coefficients.
    GenHamiltonian {
        #[arg(long)]
        n: usize,
        /// Number of terms; defaults to n^2.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute a manifest's outputs and compare digests.
    Verify {
        manifest: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, jobs, output } => {
            let outcome = trotter_oracle::run(&config, jobs, output.as_deref())?;
            println!("{}", outcome.csv_path.display());
            println!("{}", outcome.manifest_path.display());
        }
        Command::Describe { experiment } => {
            let exp: Experiment = experiment.parse()?;
            print!("{}", describe(exp));
        }
        Command::GenHamiltonian { n, l, seed, out } => {
            trotter_oracle::gen_hamiltonian(n, l, seed, &out)?;
            println!("{}", out.display());
        }
        Command::Verify { manifest, jobs } => {
            let mismatched = trotter_oracle::verify(&manifest, jobs)?;
            if !mismatched.is_empty() {
                let names: Vec<String> = mismatched.iter().map(|p| p.display().to_string()).collect();
                return Err(CliError::Numerical(format!("digest mismatch: {}", names.join(", "))));
            }
            println!("ok");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trotter-oracle: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
