//! `qmark`: command-line access to the question-mark, continued fraction,
//! Jacobi-Perron, block code, K-theory and cluster routines.
//!
//! Output is one line of JSON with sorted keys (CSV for `sample`). Exact
//! values are strings; floating-point approximations sit in separate
//! `*_approx` fields.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "qmark", version, about = "Exact Minkowski ?(x), continued fractions and K-theory")]
pub struct Cli {
    /// Emit JSON (the default for every command except `sample`).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The question-mark function and its inverse.
    #[command(subcommand)]
    Qm(QmCommand),
    /// Continued fraction of a number, or value of a continued fraction.
    Cf {
        /// A number like `3/7` or `sqrt(2)-1`, or a fraction like `[0; (2)]`.
        x: String,
        /// How many convergents to list.
        #[arg(long, default_value_t = 8)]
        convergents: usize,
    },
    /// Jacobi-Perron expansions.
    #[command(subcommand)]
    Jp(JpCommand),
    /// Block code of a number on a surface.
    #[command(subcommand)]
    Blocks(BlocksCommand),
    /// Cokernels of `1 - A^t`.
    #[command(subcommand)]
    K0(K0Command),
    /// Cluster seed mutation.
    #[command(subcommand)]
    Cluster(ClusterCommand),
    /// Continued fraction, blocks, K0 and ?(x) side by side.
    Classify {
        x: String,
        #[arg(long, value_parser = parse_surface)]
        surface: (u32, u32),
        /// Blocks to inspect for the period.
        #[arg(long, default_value_t = 32)]
        horizon: usize,
    },
    /// CSV of `(x, ?(x))` on an even grid of `[0, 1]`, sorted by `x`.
    Sample(SampleArgs),
}

#[derive(Subcommand, Debug)]
pub enum QmCommand {
    /// `?(x)` for `x` in `[0, 1]`.
    Eval { x: String },
    /// The `x` with `?(x) = y`.
    Inv { y: String },
    /// Arithmetic type of `x` and `?(x)`.
    Classify { x: String },
    /// Same as the top-level `sample`.
    Sample(SampleArgs),
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Number of grid points.
    #[arg(long, default_value_t = 101)]
    count: usize,
    /// Accepted for symmetry with the other commands; sample output is always CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
pub enum JpCommand {
    /// Expand a vector given as comma-separated coordinates in `[0, 1)`.
    Expand {
        theta: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BlocksCommand {
    /// Encode a number (or a comma-separated vector) as blocks.
    Encode {
        x: String,
        #[arg(long, value_parser = parse_surface)]
        surface: (u32, u32),
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum K0Command {
    /// `K0` of the Cuntz-Krieger algebra of a square 0/1 matrix read from a
    /// JSON file such as `[[1,1],[1,0]]`.
    Matrix {
        #[arg(long)]
        file: std::path::PathBuf,
    },
    /// Truncated `K0` of the block sequence of `x`.
    Blocks {
        x: String,
        #[arg(long, value_parser = parse_surface)]
        surface: (u32, u32),
        #[arg(long)]
        trunc: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClusterCommand {
    /// Apply mutations to the initial seed of `B`.
    Mutate {
        #[arg(long)]
        rank: usize,
        /// Exchange matrix, e.g. `[[0,1],[-1,0]]`.
        #[arg(long)]
        b: String,
        /// 1-based directions, e.g. `1,2,1`.
        #[arg(long, value_delimiter = ',')]
        path: Vec<usize>,
    },
    /// Cluster variables within a number of mutations.
    Orbit {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Stop after this many seeds.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
}

fn parse_surface(s: &str) -> Result<(u32, u32), String> {
    let (g, n) = s.split_once(',').ok_or("expected g,n")?;
    let g = g.trim().parse().map_err(|e| format!("genus: {e}"))?;
    let n = n.trim().parse().map_err(|e| format!("cusps: {e}"))?;
    Ok((g, n))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
