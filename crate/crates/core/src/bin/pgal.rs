use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use partial_galois::cli::{run_file, Command, EXIT_INPUT};

/// Exact partial Galois cohomology over finite commutative rings.
#[derive(Parser)]
#[command(name = "pgal", version)]
struct Cli {
    /// Write the machine-readable report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Seed for randomized sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the partial action axioms (and the twist, if any).
    Validate { file: PathBuf },
    /// Galois certificate: projectivity and bijectivity of j.
    Galois { file: PathBuf },
    /// Invariant factors of H^n.
    Cohomology {
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// The (twisted) partial crossed product.
    Crossed {
        #[arg(long)]
        check: bool,
        file: PathBuf,
    },
    /// The Picard semigroup and the induced action.
    Pics { file: PathBuf },
    /// Generalized crossed product of the twist's factor set.
    Gencross {
        #[arg(long)]
        check: bool,
        file: PathBuf,
    },
    /// Run every computable segment of the seven-term sequence.
    SequenceCheck { file: PathBuf },
    /// Unit groups of R and of every D_g.
    Units { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (cmd, file) = match cli.cmd {
        Cmd::Validate { file } => (Command::Validate, file),
        Cmd::Galois { file } => (Command::Galois, file),
        Cmd::Cohomology { n, file } => (Command::Cohomology { n }, file),
        Cmd::Crossed { check, file } => (Command::Crossed { check }, file),
        Cmd::Pics { file } => (Command::Pics, file),
        Cmd::Gencross { check, file } => (Command::Gencross { check }, file),
        Cmd::SequenceCheck { file } => (Command::SequenceCheck, file),
        Cmd::Units { file } => (Command::Units, file),
    };
    let out = run_file(&cmd, &file, cli.seed);
    if out.code == EXIT_INPUT {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    if let Some(path) = cli.json {
        if let Err(e) = std::fs::write(&path, out.json(&cmd)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(out.code as u8)
}
