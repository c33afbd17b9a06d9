//! `entropy-toolkit`: reproduce the Ingleton-score examples, run searches
//! over distributions and write plot-ready point clouds, hulls and regions.

mod commands;
mod fmt;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "entropy-toolkit", version, about)]
struct Cli {
    /// Role assignment `i,j,k,l` (default: the first four labels in file order).
    #[arg(long, global = true, value_name = "I,J,K,L")]
    frame: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the polymatroid axioms of a set function (exit 1 if they fail).
    Check {
        #[arg(value_parser = existing)]
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Entropy function of a distribution (CSV or JSON).
    Entropy {
        #[arg(value_parser = existing)]
        dist: PathBuf,
        /// Report entropies in bits instead of nats.
        #[arg(long)]
        bits: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ingleton value, scores and cross-section point of a set function or distribution.
    Score {
        #[arg(value_parser = existing)]
        file: PathBuf,
    },
    /// The four-atom family.
    Fouratom {
        #[arg(
            long,
            required_unless_present = "minimize",
            conflicts_with = "minimize"
        )]
        p: Option<f64>,
        /// Minimize the score over p.
        #[arg(long)]
        minimize: bool,
    },
    /// The forty-configuration family.
    Exl(ExlArgs),
    /// Seeded Nelder–Mead restarts from a search config.
    Minimize {
        #[arg(value_parser = existing)]
        config: PathBuf,
        /// Write the full result as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-section point cloud from directional searches.
    Cloud {
        #[arg(value_parser = existing)]
        config: PathBuf,
        #[arg(long, default_value_t = 8)]
        directions: usize,
        /// Seed of the direction sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep only the optimum of every restart.
        #[arg(long)]
        optima_only: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convex hull of a cross-section CSV.
    Hull {
        #[arg(value_parser = existing)]
        points: PathBuf,
        /// Write the hull as OBJ-style text.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertices of the cross-section region cut out by inequalities.
    Outer {
        /// Include the DFZ halfspaces for s = 1..=k.
        #[arg(long, default_value_t = 0, value_name = "K")]
        dfz_max_s: u32,
        /// Inequality or halfspace JSON (repeatable).
        #[arg(long, value_parser = existing)]
        ineq_file: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Figure-ready data files.
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        #[arg(long)]
        out: PathBuf,
        /// Grid size for curves.
        #[arg(long, default_value_t = 1001)]
        points: usize,
        /// Largest s for the DFZ bank.
        #[arg(long, default_value_t = 10)]
        max_s: u32,
    },
}

#[derive(Args, Debug)]
pub struct ExlArgs {
    /// The published parameters.
    #[arg(long, conflicts_with_all = ["p", "q", "r", "s", "t"])]
    default: bool,
    #[arg(long, requires_all = ["q", "r", "s", "t"], required_unless_present = "default")]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ExportKind {
    /// `p,score` over a grid of [0, 1/2].
    FourAtomCurve,
    /// The four tetrahedron vertices as a cross-section CSV.
    Tetrahedron,
    /// Cross-section points of the two closed-form examples.
    Examples,
    /// The eleven basis generators as set-function JSON.
    Generators,
    /// DFZ cross-section halfspaces as inequality JSON.
    DfzBank,
}

fn existing(s: &str) -> Result<PathBuf, String> {
    let p = PathBuf::from(s);
    if p.exists() {
        Ok(p)
    } else {
        Err(format!("no such file: {s}"))
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("ENTROPY_TOOLKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        anyhow::anyhow!("ENTROPY_TOOLKIT_THREADS must be a positive integer, got {v:?}")
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| commands::run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
