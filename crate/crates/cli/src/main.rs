mod commands;
mod output;
mod selector;
mod sets;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hypergroup_core::Rational;

use output::Format;

/// Malformed command-line input that clap cannot catch on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(name = "hypergroup", version, about = "Exact computations on discrete commutative hypergroups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Significant digits in decimal columns.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=30))]
    digits: u32,
    /// Omit elapsed time so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Worker threads for batch computations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct HgArg {
    /// su2dual, su3dual, chebyshev:<d>, conjugacy:<path> or product:<a>,<b>[,…]
    #[arg(long = "hypergroup")]
    pub hypergroup: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Point convolution δ_x * δ_y.
    Convolve {
        #[command(flatten)]
        hg: HgArg,
        x: String,
        y: String,
    },
    /// Check the hypergroup axioms on a finite truncation.
    Axioms {
        #[command(flatten)]
        hg: HgArg,
        /// Generator ball of this radius.
        #[arg(long, conflicts_with_all = ["box_radius", "truncation"])]
        ball: Option<usize>,
        /// Box truncation of this radius.
        #[arg(long = "box", conflicts_with = "truncation")]
        box_radius: Option<u32>,
        /// Explicit truncation set.
        #[arg(long)]
        truncation: Option<String>,
        /// Preload structure constants from a cache file first.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Haar volume of generator balls.
    Growth {
        #[command(flatten)]
        hg: HgArg,
        /// Generating set (default: the hypergroup's standard generator).
        #[arg(long)]
        generator: Option<String>,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Exponent d in the normalized column h(F^n)/n^d.
        #[arg(long, default_value_t = 0)]
        norm_exp: u32,
    },
    /// Search a candidate family for a small Leptin ratio h(K*V)/h(V).
    Leptin {
        #[command(flatten)]
        hg: HgArg,
        #[arg(long = "K")]
        k: String,
        /// `balls`, `boxes`, or explicit sets separated by `;`.
        #[arg(long, default_value = "balls")]
        family: String,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long = "D", default_value = "1", value_parser = parse_rational)]
        d: Rational,
        #[arg(long, default_value = "1/10", value_parser = parse_rational)]
        epsilon: Rational,
    },
    /// Følner ratios of V for a point x or a set K.
    Folner {
        #[command(flatten)]
        hg: HgArg,
        #[arg(long, conflicts_with = "k", required_unless_present = "k")]
        x: Option<String>,
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long = "V")]
        v: String,
    },
    /// Reiter deficiency of the normalized indicator of V.
    Reiter {
        #[command(flatten)]
        hg: HgArg,
        #[arg(long = "V")]
        v: String,
        #[arg(long = "E")]
        e: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
        r: u32,
    },
    /// Bounded approximate identity certificate built from (K, V).
    Certificate {
        #[command(flatten)]
        hg: HgArg,
        #[arg(long = "K")]
        k: String,
        #[arg(long = "V")]
        v: String,
    },
    /// Count {x : h(x) ≤ M} on nested box truncations.
    Levelset {
        #[command(flatten)]
        hg: HgArg,
        #[arg(long = "M", value_parser = parse_rational)]
        m: Rational,
        #[arg(long, default_value_t = 20)]
        radius: u32,
    },
    /// Store or load the memoized structure constants.
    Cache {
        #[command(flatten)]
        hg: HgArg,
        action: CacheAction,
        /// Cache file (default: a file named by the descriptor hash in the cache directory).
        path: Option<PathBuf>,
        /// Products over this box truncation are computed before storing.
        #[arg(long = "box", default_value_t = 4)]
        box_radius: u32,
        #[arg(long, env = "HYPERGROUP_CACHE_DIR", default_value = "hypergroup-cache")]
        cache_dir: PathBuf,
    },
    /// Two-sided polynomial growth bounds for the dual of SU(3).
    Bounds {
        #[arg(long, default_value_t = 100)]
        nmax: usize,
    },
    /// Ratios h(K*F^ℓ)/h(F^ℓ) along generator balls.
    Dleptin {
        #[command(flatten)]
        hg: HgArg,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        generator: Option<String>,
        #[arg(long, default_value_t = 50)]
        lmax: usize,
        /// Compare the supremum with this bound.
        #[arg(long = "D", value_parser = parse_rational)]
        d: Option<Rational>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Store,
    Load,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// 2 for bad input, 1 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    use hypergroup_core::Error as E;
    for cause in err.chain() {
        if cause.downcast_ref::<UsageError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Domain { .. }
                | E::Mismatch { .. }
                | E::Parameter(_)
                | E::ParseElement { .. }
                | E::GroupSpec(_)
                | E::OrderCap { .. }
                | E::Io { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

/// The error chain joined with `: `, skipping causes already quoted by their
/// parent.
fn describe(err: &anyhow::Error) -> String {
    let mut out = String::new();
    let mut previous = String::new();
    for cause in err.chain() {
        let text = cause.to_string();
        if !previous.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
        previous = text;
    }
    out
}

fn echo() -> String {
    let args: Vec<String> = std::env::args()
        .skip(1)
        .map(|a| if a.is_empty() || a.contains(char::is_whitespace) { format!("'{a}'") } else { a })
        .collect();
    args.join(" ")
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global().context("thread pool")?;
    }
    let start = Instant::now();
    let outcome = commands::dispatch(&cli.command, echo())?;
    let mut record = outcome.record;
    if !cli.global.no_timing {
        record.elapsed = Some(start.elapsed());
    }
    let text = record.render(cli.global.format, cli.global.digits as usize)?;
    match &cli.global.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("error: {}", describe(&err));
            if code == 2 {
                eprintln!("run `hypergroup --help` for usage");
            }
            ExitCode::from(code)
        }
    }
}
