//! Command-line front end. [`run`] takes the arguments after the program name
//! and returns the process exit status.
//!
//! Exit codes: 0 success or consistent verdict, 1 negative verdict (not
//! similar, counterexample, counting mismatch), 2 usage/parse/precondition
//! error, 3 node limit reached.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::counting::{lambda_coefficients, lambda_size_polynomial, lambda_size_recursive};
use crate::geometry::{distance_set, generate_lambda, Configuration, Metric};
use crate::io::{load_config, serialize_config};
use crate::render::{render_layers, render_svg};
use crate::search::{
    max_k_distance_sets_with, verify_conjecture_instance_with, GridSpec, SearchOptions, Verdict,
    DEFAULT_NODE_LIMIT,
};
use crate::similarity::{are_similar, canonicalize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "taxicab", version, about = "Exact taxicab distinct-distance configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMethod {
    Enum,
    Rec,
    Poly,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    L1,
    Linf,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::L1 => Metric::L1,
            MetricArg::Linf => Metric::Linf,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write Lambda_d(k) as a point file
    Gen {
        d: usize,
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print |Lambda_d(k)|
    Count {
        d: usize,
        k: u32,
        #[arg(long, value_enum, default_value = "all")]
        method: CountMethod,
    },
    /// Print the coefficient rows of |Lambda_d(k)| for d = 2..=dmax
    Table { dmax: usize },
    /// Print the distance set of a point file
    Distances {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "l1")]
        metric: MetricArg,
    },
    /// Print the canonical representative of a point file
    Canon { file: PathBuf },
    /// Exit 0 when two point files are l1-similar, 1 otherwise
    Similar { file1: PathBuf, file2: PathBuf },
    /// Search a grid for maximum sets with at most k distances
    Search {
        d: usize,
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "l1")]
        metric: MetricArg,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// Directory for one point file per class
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Compare grid maxima against Lambda_d(k)
    Verify {
        d: usize,
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// SVG for planar files, layered listing for files in R^3
    Render {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 40)]
        unit: u32,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        usage(e.to_string())
    }
}

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("taxicab".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<Configuration, Failure> {
    load_config(path).map_err(usage)
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), Failure> {
    match target {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Gen { d, k, out: target } => {
            if d == 0 {
                return Err(usage("dimension must be positive"));
            }
            emit(out, target.as_deref(), &serialize_config(&generate_lambda(d, k)))?;
            Ok(EXIT_OK)
        }
        Command::Count { d, k, method } => {
            if d == 0 {
                return Err(usage("dimension must be positive"));
            }
            let k64 = k as u64;
            let value = match method {
                CountMethod::Enum => generate_lambda(d, k).len().into(),
                CountMethod::Rec => lambda_size_recursive(d, k64),
                CountMethod::Poly => lambda_size_polynomial(d, k64)?,
                CountMethod::All => {
                    let e: num_bigint::BigUint = generate_lambda(d, k).len().into();
                    let r = lambda_size_recursive(d, k64);
                    let p = lambda_size_polynomial(d, k64)?;
                    if e != r || r != p {
                        return Err(Failure {
                            code: EXIT_NEGATIVE,
                            message: format!("count mismatch: enum {e}, rec {r}, poly {p}"),
                        });
                    }
                    e
                }
            };
            writeln!(out, "{value}")?;
            Ok(EXIT_OK)
        }
        Command::Table { dmax } => {
            if dmax < 2 {
                return Err(usage("table needs dmax >= 2"));
            }
            for d in 2..=dmax {
                let poly = lambda_coefficients(d);
                let coeffs: Vec<String> = poly.coefficients().iter().map(|c| c.to_string()).collect();
                let terms: Vec<String> = poly
                    .coefficients()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let e = poly.exponent(i);
                        let power = if e == 1 { "(k+1)".to_string() } else { format!("(k+1)^{e}") };
                        if c.is_integer() && *c.numer() == 1.into() {
                            power
                        } else {
                            format!("{c}{power}")
                        }
                    })
                    .collect();
                writeln!(out, "d={d}: {}  |  {}", coeffs.join(" "), terms.join(" + "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Distances { file, metric } => {
            let c = load(&file)?;
            let ds = distance_set(&c, metric.into());
            let values: Vec<String> = ds.values().iter().map(|v| v.to_string()).collect();
            writeln!(out, "distances: {}", values.join(" "))?;
            writeln!(out, "count: {}", ds.len())?;
            Ok(EXIT_OK)
        }
        Command::Canon { file } => {
            let c = load(&file)?;
            out.write_all(serialize_config(&canonicalize(&c)).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Similar { file1, file2 } => {
            let a = load(&file1)?;
            let b = load(&file2)?;
            if are_similar(&a, &b)? {
                writeln!(out, "similar")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "not similar")?;
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Search {
            d,
            k,
            m,
            q,
            metric,
            jobs,
            node_limit,
            out_dir,
        } => {
            if k == 0 {
                return Err(usage("k must be positive"));
            }
            let grid = GridSpec::new(d, m, q)?;
            let options = SearchOptions { jobs, node_limit };
            let r = max_k_distance_sets_with(&grid, k, metric.into(), &options);
            writeln!(out, "grid: {grid} ({} points)", grid.len())?;
            writeln!(out, "metric: {}  k: {k}", r.metric)?;
            writeln!(out, "max size: {}", r.max_size)?;
            writeln!(out, "classes: {}", r.canonical_classes.len())?;
            writeln!(out, "nodes: {}", r.nodes_explored)?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir)?;
            }
            for (i, class) in r.canonical_classes.iter().enumerate() {
                let text = serialize_config(class);
                match &out_dir {
                    Some(dir) => fs::write(dir.join(format!("class-{}.txt", i + 1)), text)?,
                    None => write!(out, "# class {}\n{text}", i + 1)?,
                }
            }
            if r.complete {
                Ok(EXIT_OK)
            } else {
                writeln!(out, "INCOMPLETE: node limit {node_limit} reached")?;
                Ok(EXIT_INCOMPLETE)
            }
        }
        Command::Verify {
            d,
            k,
            m,
            q,
            jobs,
            node_limit,
        } => {
            let grid = GridSpec::new(d, m, q)?;
            let options = SearchOptions { jobs, node_limit };
            let report = verify_conjecture_instance_with(d, k, &grid, &options)?;
            writeln!(out, "grid: {grid} ({} points); results hold on this grid only", grid.len())?;
            writeln!(out, "|Lambda_{d}({k})| = {}", report.lambda_size)?;
            writeln!(out, "max size: {}", report.search.max_size)?;
            writeln!(out, "classes: {}", report.search.canonical_classes.len())?;
            writeln!(out, "size matches: {}", report.size_matches)?;
            writeln!(out, "unique class Lambda: {}", report.unique_class)?;
            writeln!(out, "axis-parallel: {}", report.all_axis_parallel())?;
            if let Some(w) = &report.witness {
                write!(out, "# witness\n{}", serialize_config(w))?;
            }
            writeln!(out, "{}", report.verdict)?;
            Ok(match report.verdict {
                Verdict::Consistent => EXIT_OK,
                Verdict::Counterexample => EXIT_NEGATIVE,
                Verdict::Incomplete => EXIT_INCOMPLETE,
            })
        }
        Command::Render { file, out: target, unit } => {
            let c = load(&file)?;
            let text = match c.dim() {
                2 => render_svg(&c, unit)?,
                3 => render_layers(&c)?,
                other => return Err(usage(format!("render supports dimensions 2 and 3, got {other}"))),
            };
            emit(out, target.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}
