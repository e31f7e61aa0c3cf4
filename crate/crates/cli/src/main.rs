//! `skewforms`: queries on linear systems of skew forms on a six-dimensional space.
//!
//! Inputs are JSON systems `{"generators":[{"terms":[{"i":1,"j":4,"c":"1"}, ...]}, ...]}`
//! with 1-based indices, or a catalog entry via `--builtin`. Exit status is 0 on success,
//! 1 when a computation or verification fails, and 2 on usage or input errors.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skewforms::sample::DEFAULT_SEED;
use skewforms::scalars::DEFAULT_PRIMES;

#[derive(Parser, Debug)]
#[command(name = "skewforms", version, about = "Exact computations with linear systems of skew-symmetric forms")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Primes for finite-field computations.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
    primes: Vec<u32>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
}

/// A system read from a file or taken from the catalog.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// JSON file with a system (`-` reads standard input).
    #[arg(long, alias = "plane")]
    input: Option<String>,
    /// Catalog entry, for example `pi_g` or `thm_dim3`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generic rank and whether the Pfaffian cubic vanishes.
    Rank(Source),
    /// Pfaffian of a form, or Pfaffian cubic of a system.
    Pfaffian(Source),
    /// Rank-2 point counts and the intersection type with the Grassmannian.
    GrIntersect(Source),
    /// GIT stability verdict with a destabilizing witness when one exists.
    Stability {
        #[command(flatten)]
        source: Source,
        /// Require the first three generators to be the general-type normal form.
        #[arg(long)]
        assume_pi_g: bool,
    },
    /// Orbit of a plane of constant rank 4.
    ClassifyPlane(Source),
    /// The scroll over a general-type plane.
    Scroll {
        #[command(flatten)]
        source: Source,
        /// A member of the plane (JSON form) to compute its conic fiber.
        #[arg(long)]
        member: Option<String>,
        /// Report the dimension of the Plücker quadrics restricted to the span of the scroll.
        #[arg(long)]
        quadric_dim: bool,
        /// Count points of the scroll over each prime.
        #[arg(long)]
        count: bool,
    },
    /// Run theorem reports.
    Verify {
        /// all, dim3, dim4a, dim4b, dim5, planes, unstable_in_pf, beta_matrices or scroll_extensions.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// A random unimodular conjugate of a system.
    OrbitSample(Source),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: --jobs must be a positive thread count");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
