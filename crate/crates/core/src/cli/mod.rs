//! The `fermat-mld` command line: compute, verify against the known table,
//! benchmark strategies, and list partitions.

mod golden;
mod report;

pub use golden::GoldenTable;
pub use report::{BreakdownRow, Environment, Mismatch, PartitionRow, ResultRow, RunReport};

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::mldeg::{Engine, EngineConfig, MldegError, Strategy, DEFAULT_PRIMES};
use crate::partitions::{coefficient_c, enumerate_partitions, symmetry_order_o};

#[derive(Debug, Parser)]
#[command(name = "fermat-mld", version, about = "Maximum likelihood degrees of Fermat hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the ML degree of F_{n,d}.
    Compute(ComputeArgs),
    /// Recompute cells of the known table and compare.
    Verify(VerifyArgs),
    /// Time strategies over a grid of (n, d) and write CSV.
    Bench(BenchArgs),
    /// List the partitions of n+1 that contribute to F_{n,d}.
    Partitions(PartitionsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Prime modulus; repeat for several. Defaults to 32003 and 65537.
    #[arg(long = "prime")]
    pub primes: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, env = "FERMAT_MLD_THREADS")]
    pub threads: Option<usize>,
    /// Per-computation time limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
}

impl EngineArgs {
    fn config(&self, strategy: Strategy) -> anyhow::Result<EngineConfig> {
        let mut cfg = EngineConfig {
            strategy,
            seed: self.seed,
            ..EngineConfig::default()
        };
        if !self.primes.is_empty() {
            cfg.primes = self.primes.clone();
        }
        if let Some(t) = self.threads {
            cfg.parallelism = t.max(1);
        }
        if let Some(t) = self.timeout {
            if !t.is_finite() || t < 0.0 {
                bail!("timeout must be a nonnegative number of seconds");
            }
            cfg.timeout = Some(Duration::from_secs_f64(t));
        }
        Ok(cfg)
    }

    fn environment(&self) -> Environment {
        Environment {
            primes: if self.primes.is_empty() {
                DEFAULT_PRIMES.to_vec()
            } else {
                self.primes.clone()
            },
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Show the per-partition contributions.
    #[arg(long)]
    pub breakdown: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub max_n: usize,
    #[arg(long)]
    pub max_d: usize,
    /// Strategies to run per cell; by default every applicable one.
    #[arg(long, value_delimiter = ',', value_parser = parse_strategy)]
    pub strategies: Vec<Strategy>,
    /// Table to compare against instead of the built-in one.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Ranges of n and d, e.g. `--grid 2..4 2..3` (inclusive).
    #[arg(long, num_args = 2, value_names = ["N_RANGE", "D_RANGE"], value_parser = parse_range)]
    pub grid: Vec<(usize, usize)>,
    #[arg(long, value_delimiter = ',', value_parser = parse_strategy, default_value = "partitioning,partitioning-diff")]
    pub strategies: Vec<Strategy>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct PartitionsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

/// `a..b`, `a..=b` or `a-b` (all inclusive), or a single number.
fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad range `{s}`: {e}"));
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

/// Runs a parsed command, writing its output to `out`. Returns whether the
/// run succeeded (no mismatches and no failed computations).
pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<bool> {
    match cli.command {
        Command::Compute(a) => cmd_compute(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
        Command::Partitions(a) => cmd_partitions(&a, out),
    }
}

fn emit_json(report: &RunReport, out: &mut dyn Write) -> anyhow::Result<()> {
    writeln!(out, "{}", report.to_json())?;
    Ok(())
}

pub fn cmd_compute(args: &ComputeArgs, out: &mut dyn Write) -> anyhow::Result<bool> {
    let engine = Engine::new(args.engine.config(args.strategy)?)?;
    let result = engine
        .compute(args.n, args.d)
        .with_context(|| format!("computing n = {}, d = {}", args.n, args.d))?;
    let mut report = RunReport::new("compute", args.engine.environment());
    report.results.push(ResultRow::from_result(&result, args.breakdown));
    match args.format {
        Format::Json => emit_json(&report, out)?,
        Format::Text => {
            let primes: Vec<String> = result.primes.iter().map(u32::to_string).collect();
            writeln!(
                out,
                "MLdeg F_{{{},{}}} = {}  [{}; primes {}; {:.3} s]",
                result.n,
                result.d,
                result.value,
                result.strategy,
                if primes.is_empty() { "none".to_string() } else { primes.join(",") },
                result.seconds()
            )?;
            if args.breakdown {
                match &result.breakdown {
                    Some(rows) => {
                        writeln!(out, "{:<20} {:>12} {:>8} {:>8} {:>16}", "partition", "c_a", "o_a", "deg", "contribution")?;
                        for r in rows {
                            writeln!(
                                out,
                                "{:<20} {:>12} {:>8} {:>8} {:>16}",
                                r.partition.to_string(),
                                r.c,
                                r.o,
                                r.degree,
                                r.contribution
                            )?;
                        }
                    }
                    None => writeln!(out, "(no breakdown for strategy {})", result.strategy)?,
                }
            }
        }
    }
    Ok(true)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<bool> {
    let table = match &args.table {
        Some(p) => GoldenTable::load(p)?,
        None => GoldenTable::embedded(),
    };
    let engine = Engine::new(args.engine.config(Strategy::Auto)?)?;
    let mut report = RunReport::new("verify", args.engine.environment());
    let cells = table.cells_within(args.max_n, args.max_d);
    let text = args.format == Format::Text;
    if cells.is_empty() {
        if text {
            writeln!(out, "nothing to verify: no table cells with n <= {} and d <= {}", args.max_n, args.max_d)?;
        } else {
            eprintln!("nothing to verify");
            emit_json(&report, out)?;
        }
        return Ok(true);
    }
    let n_cells = cells.len();
    let mut failed_cells = 0;
    for (n, d, expected) in cells {
        let runs: Vec<(String, Result<crate::mldeg::MLDegreeResult, MldegError>)> = if args.strategies.is_empty() {
            match engine.cross_check(n, d) {
                Ok(rep) => rep.runs.into_iter().map(|r| (r.strategy.to_string(), Ok(r))).collect(),
                Err(e) => vec![("cross-check".to_string(), Err(e))],
            }
        } else {
            args.strategies
                .iter()
                .map(|&s| (s.to_string(), engine.compute_with(n, d, s)))
                .collect()
        };
        let mut cell_ok = true;
        let mut summary = Vec::new();
        for (name, r) in runs {
            match r {
                Ok(r) => {
                    summary.push(format!("{}={}", r.strategy, r.value));
                    if r.value != expected {
                        cell_ok = false;
                        report.mismatches.push(Mismatch {
                            n,
                            d,
                            strategy: r.strategy.to_string(),
                            expected: Some(expected),
                            got: Some(r.value),
                            error: None,
                        });
                    }
                    report.results.push(ResultRow::from_result(&r, false));
                }
                Err(e) => {
                    cell_ok = false;
                    summary.push(format!("{name}: error"));
                    report.mismatches.push(Mismatch {
                        n,
                        d,
                        strategy: name,
                        expected: Some(expected),
                        got: None,
                        error: Some(e.to_string()),
                    });
                }
            }
        }
        if !cell_ok {
            failed_cells += 1;
        }
        if text {
            writeln!(
                out,
                "n={n:<3} d={d:<3} expected {expected:<14} {}  ({})",
                if cell_ok { "pass" } else { "FAIL" },
                summary.join(", ")
            )?;
        }
    }
    match args.format {
        Format::Json => emit_json(&report, out)?,
        Format::Text => {
            for m in &report.mismatches {
                match (&m.got, &m.error) {
                    (Some(g), _) => writeln!(out, "mismatch n={} d={} {}: expected {}, got {g}", m.n, m.d, m.strategy, m.expected.unwrap_or(0))?,
                    (None, Some(e)) => writeln!(out, "error n={} d={} {}: {e}", m.n, m.d, m.strategy)?,
                    _ => {}
                }
            }
            writeln!(out, "{n_cells} cells, {failed_cells} failed")?;
        }
    }
    Ok(report.success())
}

#[derive(Debug, Serialize)]
struct BenchRow {
    n: usize,
    d: usize,
    strategy: String,
    status: &'static str,
    seconds: String,
    value: String,
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> anyhow::Result<bool> {
    let [(n_lo, n_hi), (d_lo, d_hi)] = args.grid[..] else {
        bail!("--grid needs an n range and a d range");
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for n in n_lo..=n_hi {
        for d in d_lo..=d_hi {
            for &s in &args.strategies {
                // a fresh engine per cell keeps timings free of memoized work
                let engine = Engine::new(args.engine.config(s)?)?;
                let start = std::time::Instant::now();
                let r = engine.compute(n, d);
                let secs = start.elapsed().as_secs_f64();
                let (status, value) = match r {
                    Ok(r) => ("ok", r.value.to_string()),
                    Err(MldegError::Timeout) => ("timeout", String::new()),
                    Err(_) => {
                        ok = false;
                        ("error", String::new())
                    }
                };
                rows.push(BenchRow {
                    n,
                    d,
                    strategy: s.to_string(),
                    status,
                    seconds: format!("{secs:.6}"),
                    value,
                });
            }
        }
    }
    let write_rows = |w: &mut dyn Write| -> anyhow::Result<()> {
        let mut csv = csv::Writer::from_writer(w);
        for r in &rows {
            csv.serialize(r)?;
        }
        csv.flush()?;
        Ok(())
    };
    match &args.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_rows(&mut f)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        None => write_rows(out)?,
    }
    Ok(ok)
}

pub fn cmd_partitions(args: &PartitionsArgs, out: &mut dyn Write) -> anyhow::Result<bool> {
    let parts = enumerate_partitions(args.n + 1, args.d)
        .with_context(|| format!("partitions for n = {}, d = {}", args.n, args.d))?;
    let rows = parts
        .into_iter()
        .map(|a| {
            Ok(PartitionRow {
                c: coefficient_c(&a)?,
                o: symmetry_order_o(&a)?,
                partition: a,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    match args.format {
        Format::Json => {
            let mut report = RunReport::new(
                "partitions",
                Environment {
                    primes: Vec::new(),
                    seed: 0,
                    version: env!("CARGO_PKG_VERSION").to_string(),
                },
            );
            report.partitions = Some(rows);
            emit_json(&report, out)?;
        }
        Format::Text => {
            writeln!(out, "{:<20} {:>12} {:>8}", "partition", "c_a", "o_a")?;
            for r in &rows {
                writeln!(out, "{:<20} {:>12} {:>8}", r.partition.to_string(), r.c, r.o)?;
            }
        }
    }
    Ok(true)
}
