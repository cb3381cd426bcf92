use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gamma2lab::{BoolMatrix, Error};

mod commands;
mod report;

#[derive(Parser)]
#[command(name = "gamma2lab", version, about = "Certified γ₂-norm bounds for Boolean matrices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a matrix family and write it as .bmx or JSON.
    Gen(GenCmd),
    /// Analyze a .bmx file and print a JSON report.
    Analyze(AnalyzeArgs),
    /// Regularize, biregularize and extract a dense square submatrix.
    Extract(ExtractArgs),
    /// Run a parameter sweep and write a CSV table.
    Experiment(ExperimentCmd),
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum GenFormat {
    Bmx,
    Json,
}

#[derive(Args)]
struct GenCmd {
    #[command(subcommand)]
    family: Family,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "bmx", global = true)]
    format: GenFormat,
}

#[derive(Subcommand)]
enum Family {
    /// Point-line incidences `xy + x' ≡ y' (mod p)`.
    Pmodp {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p: usize,
    },
    /// The same incidences over the integers.
    Preal {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p: usize,
    },
    /// Complement of a random ℓ-set intersection matrix.
    Setsystem {
        #[arg(long, default_value_t = 4.0)]
        gamma: f64,
        #[arg(long)]
        m: usize,
    },
    /// Points against axis-parallel boxes.
    Boxes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Points against lower-left corners.
    Corners {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Points against homothets of a random polytope.
    Polh {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        s: usize,
    },
    /// Coordinatewise dominance between two point sets.
    Dominance {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Independent cells.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    /// Run the exact γ₂ solver.
    #[arg(long)]
    exact: bool,
    /// Exact discrepancy and a hereditary probe.
    #[arg(long)]
    disc: bool,
    /// Thin blocky decomposition.
    #[arg(long)]
    blocky: bool,
    /// Largest min(m, n) handed to the exact solver.
    #[arg(long, default_value_t = gamma2lab::gamma2::MAX_EXACT_DIM)]
    max_exact_dim: usize,
    /// Target duality gap of the exact solver.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Random submatrices tried by the hereditary probe.
    #[arg(long, default_value_t = 16)]
    disc_samples: usize,
    /// Embed the γ₂ certificates.
    #[arg(long)]
    certs: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ExtractArgs {
    input: PathBuf,
    /// Side of the dense square submatrix.
    #[arg(long)]
    z: Option<usize>,
    /// Skip the `z ≤ α·d` precondition.
    #[arg(long)]
    best_effort: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct ExperimentCmd {
    #[command(subcommand)]
    name: Experiment,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: TableFormat,
}

#[derive(Subcommand)]
enum Experiment {
    /// Bounds on P_p(q, p) for all q < p.
    C4sandwich {
        #[arg(long, value_delimiter = ',', default_values_t = [5, 7, 11, 13])]
        p: Vec<usize>,
    },
    /// Edge counts of thinned dominance graphs against the recursion.
    Zarabound {
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [64, 128, 256, 512, 1024])]
        n: Vec<usize>,
    },
    /// γ₂ bounds of points-vs-boxes as n doubles.
    Gammagrowth {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [16, 32, 64, 128, 256, 512, 1024])]
        n: Vec<usize>,
    },
    /// Random set-system constructions with certificates.
    Construction {
        #[arg(long, default_value_t = 4.0)]
        gamma: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [40, 60, 80])]
        m: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        seeds: usize,
    },
}

/// Usage and input problems exit with 2, broken invariants with 3.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("GAMMA2LAB_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Input(format!("GAMMA2LAB_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))
}

pub(crate) fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub(crate) fn load(path: &Path) -> Result<BoolMatrix, Error> {
    BoolMatrix::load_bmx(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = configure_threads().and_then(|()| match cli.cmd {
        Cmd::Gen(g) => commands::gen(g),
        Cmd::Analyze(a) => commands::analyze(a),
        Cmd::Extract(x) => commands::extract(x),
        Cmd::Experiment(e) => commands::experiment(e),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gamma2lab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
