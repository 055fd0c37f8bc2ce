use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dgloci_cli::{emit, parse_input, run_command, CliError, CmMode, Command, Format, Overrides};

#[derive(Parser)]
#[command(name = "dgloci", version, about = "Loci of small commutative DG-rings")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Monomial order (grevlex or lex).
    #[arg(long, global = true)]
    order: Option<String>,
    /// Resolution window for the dualizing computation.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Seed for random regular-sequence candidates.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutFormat,
    /// Comma-separated regular-sequence candidates.
    #[arg(long, global = true, value_delimiter = ',')]
    candidates: Option<Vec<String>>,
    /// Compute independent report sections on worker threads.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    DenseOpen,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cohomology table of A.
    Cohomology { file: PathBuf },
    /// Cohomology table of the dualizing module.
    Dualizing { file: PathBuf },
    /// Regular locus.
    Reg { file: PathBuf },
    /// Cohen-Macaulay locus.
    Cm {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Gorenstein certificate.
    Gor { file: PathBuf },
    /// Minimal primes and irreducible cover.
    Cover { file: PathBuf },
    /// Every section with cross-checks.
    Report { file: PathBuf },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let (file, cmd) = match cli.command {
        Cmd::Cohomology { file } => (file, Command::Cohomology),
        Cmd::Dualizing { file } => (file, Command::Dualizing),
        Cmd::Reg { file } => (file, Command::Reg),
        Cmd::Cm { file, mode: Mode::Exact } => (file, Command::Cm(CmMode::Exact)),
        Cmd::Cm { file, mode: Mode::DenseOpen } => (file, Command::Cm(CmMode::DenseOpen)),
        Cmd::Gor { file } => (file, Command::Gor),
        Cmd::Cover { file } => (file, Command::Cover),
        Cmd::Report { file } => (file, Command::Report),
    };
    let text = std::fs::read_to_string(&file)
        .map_err(|e| CliError::Io { path: file.display().to_string(), message: e.to_string() })?;
    let overrides = Overrides { order: cli.order, window: cli.window, seed: cli.seed, candidates: cli.candidates };
    let doc = overrides.apply(&parse_input(&text)?)?;
    let value = run_command(&doc, cmd, cli.parallel)?;
    let format = match cli.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    Ok(emit(&value, format))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
