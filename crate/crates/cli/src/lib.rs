//! The `symclt` command line: character tables, spectral measures, exact
//! moments and the verification suites.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use symclt_core::character::TableCache;
use symclt_core::class_algebra::{format_specs, BruteForceBounds, ClassSpec};
use symclt_core::measure::{MeasureKind, SpectralMeasure};
use symclt_core::moments::{char_ratio, convergence_report, limit_mixed_moment};
use symclt_core::radical::ratio_to_f64;
use symclt_core::reduction::{reduce_with, ReduceMode, RuleSet};
use symclt_core::{CycleTuple, Partition};

mod output;
pub mod verify;

pub use output::{emit_csv, Schema};

#[derive(Parser, Debug)]
#[command(name = "symclt", version, about = "Exact character ratios of symmetric groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full character table as CSV.
    Chartab {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact masses of a spectral measure as CSV.
    Measure {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Conjugacy)]
        kind: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact mixed moments of W next to their limit.
    Moments {
        #[command(flatten)]
        range: NRange,
        #[arg(long, value_enum, default_value_t = Kind::Conjugacy)]
        kind: Kind,
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gaussian limit of a mixed moment.
    Limit {
        #[command(flatten)]
        specs: SpecArgs,
    },
    /// Seeded draws from a measure, binned by partition or by the value of W.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Conjugacy)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Bin the draws by W for this class instead of by partition.
        #[arg(long)]
        nu: Option<Partition>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a cycle tuple such as "(1 2)(3 4);(1 3)" and print the trace.
    Reduce {
        tuple: CycleTuple,
        #[arg(long, value_enum, default_value_t = Mode::Deterministic)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Rules::LeftToRight)]
        rules: Rules,
    },
    /// Verification suites; exit status 1 if any check fails.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Frobenius counts against brute force for all class sequences.
    Frobenius {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_m: usize,
    },
    /// Reduction to the empty tuple against identity products.
    Reduction {
        #[arg(long, default_value_t = 5)]
        ground: usize,
        /// Maximum number of entries per tuple.
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, value_enum, default_value_t = Rules::LeftToRight)]
        rules: Rules,
    },
    /// Inverse pairing against identity products for symbols {2^q}.
    Pairing {
        /// Largest q.
        #[arg(long, default_value_t = 4)]
        ground: usize,
    },
    /// Moments from characters against moments from tuple counts.
    Eq5 {
        #[command(flatten)]
        range: NRange,
        #[command(flatten)]
        specs: SpecArgs,
    },
    /// Both measures sum to one.
    Normalization {
        #[command(flatten)]
        range: NRange,
    },
}

#[derive(Args, Debug)]
struct NRange {
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Inclusive range A:B:STEP.
    #[arg(long)]
    n_range: Option<String>,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Class without fixed points, e.g. 2 or 3+2; repeatable.
    #[arg(long)]
    nu: Vec<Partition>,
    /// Power for the matching --nu; defaults to 1 for every class.
    #[arg(long)]
    k: Vec<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Plancherel,
    Conjugacy,
}

impl From<Kind> for MeasureKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Plancherel => MeasureKind::Plancherel,
            Kind::Conjugacy => MeasureKind::Conjugacy,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Deterministic,
    Search,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rules {
    LeftToRight,
    Both,
}

impl From<Rules> for RuleSet {
    fn from(r: Rules) -> Self {
        match r {
            Rules::LeftToRight => RuleSet::LeftToRight,
            Rules::Both => RuleSet::Both,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<symclt_core::Error> for Failure {
    fn from(e: symclt_core::Error) -> Self {
        match e {
            symclt_core::Error::Consistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

type Outcome = std::result::Result<bool, Failure>;

impl NRange {
    fn values(&self) -> std::result::Result<Vec<usize>, Failure> {
        match (&self.n, &self.n_range) {
            (Some(n), None) => Ok(vec![*n]),
            (None, Some(r)) => parse_range(r),
            _ => Err(Failure::Usage("one of --n or --n-range is required".into())),
        }
    }
}

fn parse_range(text: &str) -> std::result::Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("--n-range expects A:B:STEP, got {text:?}"));
    let fields: Vec<usize> = text
        .split(':')
        .map(|f| f.trim().parse().map_err(|_| bad()))
        .collect::<std::result::Result<_, _>>()?;
    match fields[..] {
        [a, b, step] if a <= b && step > 0 => Ok((a..=b).step_by(step).collect()),
        _ => Err(bad()),
    }
}

impl SpecArgs {
    fn specs(&self) -> std::result::Result<Vec<ClassSpec>, Failure> {
        let ks = if self.k.is_empty() { vec![1; self.nu.len()] } else { self.k.clone() };
        if ks.len() != self.nu.len() {
            return Err(Failure::Usage(format!(
                "{} --nu values but {} --k values",
                self.nu.len(),
                ks.len()
            )));
        }
        Ok(self.nu.iter().cloned().zip(ks).map(|(c, k)| ClassSpec::new(c, k)).collect())
    }
}

/// Bounds for exhaustive enumeration, overridable through
/// SYMCLT_BRUTE_MAX_N and SYMCLT_BRUTE_MAX_LEN.
pub fn brute_force_bounds() -> BruteForceBounds {
    let read = |key: &str, default: usize| {
        std::env::var(key).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
    };
    let d = BruteForceBounds::default();
    BruteForceBounds {
        max_n: read("SYMCLT_BRUTE_MAX_N", d.max_n),
        max_len: read("SYMCLT_BRUTE_MAX_LEN", d.max_len),
    }
}

/// Runs the command line (without the program name) and returns the exit
/// status: 0 on success, 1 if a verification fails, 2 on a usage error.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("symclt".to_string()).chain(argv.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    println!("# symclt {}", argv.join(" "));
    match dispatch(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            1
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    let tables = TableCache::new();
    match command {
        Command::Chartab { n, out } => {
            let table = tables.get(n)?;
            let rows: Vec<Vec<String>> = table
                .entries()
                .map(|(l, m, chi)| vec![l.to_string(), m.to_string(), chi.to_string()])
                .collect();
            emit_csv(&rows, Schema::Chartab, out.as_deref())?;
            Ok(true)
        }
        Command::Measure { n, kind, out } => {
            let table = tables.get(n)?;
            let measure = SpectralMeasure::new(kind.into(), &table)?;
            let rows: Vec<Vec<String>> = measure
                .masses()
                .map(|(l, mass)| {
                    vec![
                        l.to_string(),
                        mass.numer().to_string(),
                        mass.denom().to_string(),
                        ratio_to_f64(&mass).to_string(),
                    ]
                })
                .collect();
            emit_csv(&rows, Schema::Measure, out.as_deref())?;
            Ok(true)
        }
        Command::Moments { range, kind, specs, out } => {
            let specs = specs.specs()?;
            let reports = convergence_report(&range.values()?, kind.into(), &specs, |n| tables.get(n))?;
            let mut rows = Vec::new();
            for r in &reports {
                println!(
                    "n={} kind={} specs={} exact={} float={:.12} limit={} abs_dev={:.12}",
                    r.n,
                    r.kind,
                    r.specs_label(),
                    r.exact,
                    r.float(),
                    r.limit,
                    r.abs_dev()
                );
                let coeff = r.exact.coeff();
                rows.push(vec![
                    r.n.to_string(),
                    r.kind.to_string(),
                    r.specs_label(),
                    coeff.numer().to_string(),
                    coeff.denom().to_string(),
                    r.exact.radicand().to_string(),
                    r.float().to_string(),
                    r.limit.numer().to_string(),
                    r.limit.denom().to_string(),
                    r.abs_dev().to_string(),
                ]);
            }
            if let Some(path) = out {
                emit_csv(&rows, Schema::Report, Some(&path))?;
            }
            Ok(true)
        }
        Command::Limit { specs } => {
            let specs = specs.specs()?;
            println!("specs={} limit={}", format_specs(&specs), limit_mixed_moment(&specs)?);
            Ok(true)
        }
        Command::Sample { n, kind, seed, count, nu, out } => {
            let table = tables.get(n)?;
            let measure = SpectralMeasure::new(kind.into(), &table)?;
            let draws = measure.sample(seed, count);
            let mut by_shape: BTreeMap<&Partition, usize> = BTreeMap::new();
            for d in &draws {
                *by_shape.entry(d).or_default() += 1;
            }
            let rows = match nu {
                None => measure
                    .atoms()
                    .iter()
                    .map(|a| vec![a.to_string(), by_shape.get(a).copied().unwrap_or(0).to_string()])
                    .collect::<Vec<_>>(),
                Some(nu) => {
                    let mut bins: BTreeMap<(BigInt, BigInt, u64), usize> = BTreeMap::new();
                    for (shape, c) in by_shape {
                        let w = char_ratio(shape, &nu, n, &table)?;
                        let key = (w.coeff().numer().clone(), w.coeff().denom().clone(), w.radicand());
                        *bins.entry(key).or_default() += c;
                    }
                    let mut rows: Vec<(f64, Vec<String>)> = bins
                        .into_iter()
                        .map(|((num, den, rad), c)| {
                            let value = num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
                                * (rad as f64).sqrt();
                            let row = vec![num.to_string(), den.to_string(), rad.to_string(), value.to_string(), c.to_string()];
                            (value, row)
                        })
                        .collect();
                    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
                    rows.into_iter().map(|(_, r)| r).collect()
                }
            };
            let schema = if rows.first().is_some_and(|r| r.len() == 2) { Schema::Draws } else { Schema::Histogram };
            emit_csv(&rows, schema, out.as_deref())?;
            Ok(true)
        }
        Command::Reduce { tuple, mode, rules } => {
            let mode = match mode {
                Mode::Deterministic => ReduceMode::Deterministic,
                Mode::Search => ReduceMode::Search,
            };
            let trace = reduce_with(&tuple, mode, rules.into())?;
            println!("{}", trace.render());
            Ok(true)
        }
        Command::Verify { suite } => {
            let bounds = brute_force_bounds();
            let (checks, verbose) = match suite {
                Suite::Frobenius { n, max_m } => (verify::frobenius(n, max_m, &bounds, &tables)?, true),
                Suite::Reduction { ground, max_m, rules } => (verify::reduction(ground, max_m, rules.into())?, false),
                Suite::Pairing { ground } => (verify::pairing(ground)?, false),
                Suite::Eq5 { range, specs } => {
                    let specs = specs.specs()?;
                    let lists = if specs.is_empty() { default_eq5_specs() } else { vec![specs] };
                    (verify::eq5(&range.values()?, &lists, &bounds, &tables)?, true)
                }
                Suite::Normalization { range } => (verify::normalization(&range.values()?, &tables)?, true),
            };
            Ok(report(&checks, verbose))
        }
    }
}

fn default_eq5_specs() -> Vec<Vec<ClassSpec>> {
    let s = |nu: usize, k| ClassSpec::new(Partition::row(nu), k);
    vec![vec![s(2, 1)], vec![s(2, 2)], vec![s(3, 1)], vec![s(2, 1), s(3, 1)]]
}

/// Prints one line per check (failures only unless `verbose`) and the
/// summary line.
fn report(checks: &[verify::Check], verbose: bool) -> bool {
    let mut failed = 0;
    for c in checks {
        if !c.ok {
            failed += 1;
            println!("fail {}", c.label);
        } else if verbose {
            println!("ok {}", c.label);
        }
    }
    if failed == 0 {
        println!("PASS {}/{}", checks.len(), checks.len());
        true
    } else {
        println!("FAIL {failed}/{}", checks.len());
        false
    }
}
