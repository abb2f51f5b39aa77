//! `degmult`: multiplicities of polynomial matrices and the polyhedral
//! computations behind them, from JSON input files.
//!
//! Exit status: 0 on success, 1 when the input violates a mathematical
//! precondition, 2 when it cannot be read or parsed.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use degmult::colength::DEFAULT_DEGREE_CAP;
use degmult::genpos::Mode as GenposMode;
use degmult::Error;

#[derive(Parser)]
#[command(name = "degmult", version, about = "Multiplicities of degenerations of polynomial matrices")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation degree cap of the colength oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    max_degree: usize,
    /// Row-shift radius for matrix-compatible collections.
    #[arg(long, global = true)]
    shift_radius: Option<i64>,
    /// Number of random sample points in witness mode.
    #[arg(long, global = true, default_value_t = 8)]
    samples: usize,
    /// Include the elapsed time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Cayley,
    Oracle,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Cayley => "cayley",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MvMethod {
    Counts,
    Truncation,
    All,
}

impl MvMethod {
    fn name(self) -> &'static str {
        match self {
            MvMethod::Counts => "counts",
            MvMethod::Truncation => "truncation",
            MvMethod::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenposArg {
    Witness,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity of a polynomial matrix or of a grid of Newton polyhedra.
    Multiplicity {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Decide whether the principal part of a matrix is in general position.
    Genpos {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GenposArg::Oracle)]
        mode: GenposArg,
    },
    /// Mixed volume of bounded pairs.
    MixedVolume {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MvMethod::All)]
        method: MvMethod,
    },
    /// Mixed volume of the column Cayley bodies of a grid, by formula and directly.
    CayleyMv { file: PathBuf },
    /// Multiplicity of a generic homogeneous matrix with given degrees.
    Homogeneous { file: PathBuf },
    /// Newton polyhedra and principal parts of the entries.
    Newton { file: PathBuf },
    /// Lattice points of a Minkowski sum against sums of lattice points.
    Oda { file: PathBuf },
    /// Upper envelope of linear functions against vertex tuples.
    Minimax { file: PathBuf },
    /// Count of pieces cut out by generic tropical hyperplanes.
    Pieces { file: PathBuf },
}

pub struct Settings {
    pub seed: u64,
    pub max_degree: usize,
    pub shift_radius: Option<i64>,
    pub samples: usize,
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<report::Report, Error> {
    let s = Settings { seed: cli.seed, max_degree: cli.max_degree, shift_radius: cli.shift_radius, samples: cli.samples };
    match &cli.command {
        Command::Multiplicity { file, method } => commands::multiplicity(read_json(file)?, *method, &s),
        Command::Genpos { file, mode } => {
            let mode = match mode {
                GenposArg::Witness => GenposMode::Witness,
                GenposArg::Oracle => GenposMode::Oracle,
            };
            commands::genpos(read_json(file)?, mode, &s)
        }
        Command::MixedVolume { file, method } => commands::mixed_volume(read_json(file)?, *method),
        Command::CayleyMv { file } => commands::cayley_mv(read_json(file)?),
        Command::Homogeneous { file } => commands::homogeneous(read_json(file)?),
        Command::Newton { file } => commands::newton(read_json(file)?),
        Command::Oda { file } => commands::oda(read_json(file)?),
        Command::Minimax { file } => commands::minimax(read_json(file)?),
        Command::Pieces { file } => commands::pieces(read_json(file)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut rep) => {
            if cli.timing {
                rep.elapsed_us = Some(start.elapsed().as_micros());
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("values serialize")),
                Format::Text => println!("{}", rep.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
