use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use interval_spectra::harness::bench::{format_table, run_benchmark, BenchConfig};
use interval_spectra::harness::format::{
    parse_f64_list, parse_method_list, parse_outer, parse_usize_list, ProblemFile, ProblemKind, ReportRecord,
    WitnessSet,
};
use interval_spectra::harness::oracle::monte_carlo_inner;
use interval_spectra::harness::sharpness::sharpness;
use interval_spectra::harness::singular::{complete_outer, singular_bounds};
use interval_spectra::harness::{run_inner, InnerOptions, Method};
use interval_spectra::outer::{outer_bounds, tighten_outer};
use interval_spectra::submatrix::Mode;
use interval_spectra::vertex::{vertex_enum_bounds, DEFAULT_VERTEX_CAP};
use interval_spectra::{jordan_wielandt, BandSet, Error, Side, SymmetricIntervalMatrix};

const THREADS_VAR: &str = "INTERVAL_SPECTRA_THREADS";

#[derive(Parser)]
#[command(name = "interval-spectra", version, about = "Eigenvalue and singular value bands of interval matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inner bands of a symmetric problem.
    Inner {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Only search this band (1-based; submatrix method).
        #[arg(long = "p", value_name = "INDEX")]
        p: Option<usize>,
        /// Only search endpoints whose exactness can be certified.
        #[arg(long)]
        gaps_only: bool,
        file: PathBuf,
    },
    /// Baseline outer bands.
    Outer {
        /// Tighten the extreme endpoints with vertex enumeration.
        #[arg(long)]
        tighten: bool,
        file: PathBuf,
    },
    /// Singular value bands of a rectangular problem.
    Singular {
        #[command(flatten)]
        run: RunArgs,
        file: PathBuf,
    },
    /// Checks sampled members against outer bands and exact endpoints.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        outer: Option<PathBuf>,
        file: PathBuf,
    },
    /// Sharpness and timing table over random instances.
    Bench {
        #[arg(long, default_value = "5")]
        n: String,
        #[arg(long, default_value = "0.1")]
        radius: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "local,vertex,submatrix")]
        methods: String,
        /// Row counts; switches to singular values of random m × n matrices.
        #[arg(long)]
        rows: Option<String>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
        #[arg(long, default_value_t = interval_spectra::submatrix::DEFAULT_SUBMATRIX_CAP)]
        submatrix_cap: usize,
        /// Print the rows as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Bb)]
    mode: ModeArg,
    /// Outer bands, overriding any stored in the problem file.
    #[arg(long, value_name = "FILE")]
    outer: Option<PathBuf>,
    /// Dimension cap for vertex and submatrix enumeration.
    #[arg(long)]
    cap: Option<usize>,
    /// Include witness matrices in the output.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Local,
    Vertex,
    Submatrix,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Local => Method::Local,
            MethodArg::Vertex => Method::Vertex,
            MethodArg::Submatrix => Method::Submatrix,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Direct,
    Bb,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
    Both,
}

fn read_problem(path: &Path) -> Result<ProblemFile, Error> {
    ProblemFile::parse(&std::fs::read_to_string(path)?)
}

fn read_outer(path: &Path) -> Result<BandSet, Error> {
    parse_outer(&std::fs::read_to_string(path)?)
}

fn symmetric_of(problem: &ProblemFile) -> Result<SymmetricIntervalMatrix, Error> {
    match problem.kind {
        ProblemKind::Symmetric => problem.symmetric(),
        ProblemKind::Rectangular => Err(Error::Parse("rectangular problem: use the singular command".into())),
    }
}

fn inner_options(run: &RunArgs, problem: &ProblemFile) -> Result<InnerOptions, Error> {
    let mut opts = InnerOptions::new(run.method.into());
    opts.submatrix.mode = match run.mode {
        ModeArg::Direct => Mode::Direct,
        ModeArg::Bb => Mode::BranchBound,
    };
    if let Some(cap) = run.cap {
        opts.vertex_cap = cap;
        opts.submatrix.cap = cap;
    }
    opts.outer = match &run.outer {
        Some(path) => Some(read_outer(path)?),
        None => problem.outer_bands(),
    };
    Ok(opts)
}

#[allow(clippy::too_many_arguments)]
fn report(
    command: &str,
    method: Option<Method>,
    mode: Option<Mode>,
    bands: BandSet,
    outer: Option<BandSet>,
    seconds: f64,
    counters: BTreeMap<String, u64>,
    witnesses: Option<WitnessSet>,
) -> ReportRecord {
    let sharpness = outer.as_ref().and_then(|o| sharpness(&bands, o).ok());
    ReportRecord { command: command.into(), method, mode, n: bands.len(), bands, outer, sharpness, seconds, counters, witnesses }
}

fn mode_of(opts: &InnerOptions) -> Option<Mode> {
    (opts.method == Method::Submatrix).then_some(opts.submatrix.mode)
}

fn cmd_inner(run: &RunArgs, side: SideArg, p: Option<usize>, gaps_only: bool, file: &Path) -> Result<String, Error> {
    let problem = read_problem(file)?;
    let a = symmetric_of(&problem)?;
    let mut opts = inner_options(run, &problem)?;
    opts.submatrix.gaps_only = gaps_only;
    opts.submatrix.sides = match side {
        SideArg::Upper => vec![Side::Upper],
        SideArg::Lower => vec![Side::Lower],
        SideArg::Both => Side::BOTH.to_vec(),
    };
    if let Some(p) = p {
        if p == 0 || p > a.n() {
            return Err(Error::IndexOutOfRange { index: p, n: a.n() });
        }
        opts.submatrix.indices = Some(vec![p - 1]);
    }
    let start = Instant::now();
    let r = run_inner(&a, &opts)?;
    let seconds = start.elapsed().as_secs_f64();
    let outer = match &r.outer {
        Some(o) => o.clone(),
        None => outer_bounds(&a)?,
    };
    let witnesses = run.witnesses.then(|| WitnessSet::from_matrices(&r.upper_witnesses, &r.lower_witnesses));
    let rec = report("inner", Some(opts.method), mode_of(&opts), r.bands.clone(), Some(outer), seconds, r.counters.clone(), witnesses);
    Ok(rec.to_json())
}

fn cmd_outer(tighten: bool, file: &Path) -> Result<String, Error> {
    let problem = read_problem(file)?;
    let (a, q) = match problem.kind {
        ProblemKind::Symmetric => {
            let a = problem.symmetric()?;
            let n = a.n();
            (a, n)
        }
        ProblemKind::Rectangular => (jordan_wielandt(&problem.interval_matrix()?), problem.rows.min(problem.cols)),
    };
    let start = Instant::now();
    let mut outer = outer_bounds(&a)?;
    let mut counters = BTreeMap::new();
    if tighten {
        let v = vertex_enum_bounds(&a, DEFAULT_VERTEX_CAP)?;
        counters.insert("vertices".to_string(), 2 * v.vertices);
        outer = tighten_outer(&outer, &v.bands)?;
    }
    let outer = outer.truncated(q);
    let seconds = start.elapsed().as_secs_f64();
    Ok(report("outer", None, None, outer, None, seconds, counters, None).to_json())
}

fn cmd_singular(run: &RunArgs, file: &Path) -> Result<String, Error> {
    let problem = read_problem(file)?;
    if problem.kind != ProblemKind::Rectangular {
        return Err(Error::Parse("singular expects a problem of kind \"rectangular\"".into()));
    }
    let a = problem.interval_matrix()?;
    let opts = inner_options(run, &problem)?;
    let q = a.rows().min(a.cols());
    let start = Instant::now();
    let r = singular_bounds(&a, &opts)?;
    let seconds = start.elapsed().as_secs_f64();
    let outer = match &r.embedding.outer {
        Some(o) => o.truncated(q),
        None => outer_bounds(&jordan_wielandt(&a))?.truncated(q),
    };
    let witnesses = run.witnesses.then(|| {
        WitnessSet::from_matrices(&r.embedding.upper_witnesses[..q], &r.embedding.lower_witnesses[..q])
    });
    let rec = report("singular", Some(opts.method), mode_of(&opts), r.bands, Some(outer), seconds, r.embedding.counters.clone(), witnesses);
    Ok(rec.to_json())
}

/// Returns the report and the number of violated checks.
fn cmd_verify(samples: u64, seed: u64, outer: Option<&Path>, file: &Path) -> Result<(String, u64), Error> {
    let problem = read_problem(file)?;
    let (a, q) = match problem.kind {
        ProblemKind::Symmetric => {
            let a = problem.symmetric()?;
            let n = a.n();
            (a, n)
        }
        ProblemKind::Rectangular => (jordan_wielandt(&problem.interval_matrix()?), problem.rows.min(problem.cols)),
    };
    let n = a.n();
    let supplied = match outer {
        Some(path) => Some(read_outer(path)?),
        None => problem.outer_bands(),
    };
    let start = Instant::now();
    let vertex = if n <= DEFAULT_VERTEX_CAP { Some(vertex_enum_bounds(&a, DEFAULT_VERTEX_CAP)?.bands) } else { None };
    let mut outer = match supplied {
        Some(o) if o.len() == n => o,
        Some(o) if o.len() == q => complete_outer(&o, n)?,
        Some(o) => return Err(Error::InvalidOuter(format!("expected {q} or {n} outer bands, found {}", o.len()))),
        None => outer_bounds(&a)?,
    };
    if let Some(v) = &vertex {
        outer = tighten_outer(&outer, v)?;
    }
    let mc = monte_carlo_inner(&a, samples, seed)?;

    let mut escapes = 0;
    let mut beyond_exact = 0;
    for i in 0..n {
        let (m, o) = (mc.bands[i], outer.bands[i]);
        let tol = 1e-9 * (1.0 + o.lo().abs().max(o.hi().abs()));
        escapes += u64::from(m.lo() < o.lo() - tol) + u64::from(m.hi() > o.hi() + tol);
        if let Some(v) = &vertex {
            let b = v.bands[i];
            beyond_exact += u64::from(v.exact_hi[i] && m.hi() > b.hi() + 1e-9);
            beyond_exact += u64::from(v.exact_lo[i] && m.lo() < b.lo() - 1e-9);
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    let counters = BTreeMap::from([
        ("samples".to_string(), samples),
        ("outer_escapes".to_string(), escapes),
        ("beyond_exact".to_string(), beyond_exact),
    ]);
    let rec = report("verify", None, None, mc.truncated(q), Some(outer.truncated(q)), seconds, counters, None);
    Ok((rec.to_json(), escapes + beyond_exact))
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    n: &str,
    radius: &str,
    trials: usize,
    seed: u64,
    methods: &str,
    rows: Option<&str>,
    vertex_cap: usize,
    submatrix_cap: usize,
    json: bool,
) -> Result<String, Error> {
    let cfg = BenchConfig {
        n: parse_usize_list(n)?,
        radius: parse_f64_list(radius)?,
        trials,
        seed,
        methods: parse_method_list(methods)?,
        rows: rows.map(parse_usize_list).transpose()?,
        vertex_cap,
        submatrix_cap,
    };
    if cfg.n.contains(&0) || cfg.rows.as_ref().is_some_and(|r| r.contains(&0)) {
        return Err(Error::Parse("matrix dimensions must be positive".into()));
    }
    let rows = run_benchmark(&cfg)?;
    if json {
        Ok(serde_json::to_string(&rows)?)
    } else {
        Ok(format_table(&rows).trim_end().to_string())
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Parse(format!("{THREADS_VAR} must be a positive integer, found {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Inconsistent(e.to_string()))
}

fn exit_code(e: &Error) -> u8 {
    if e.is_cap_exceeded() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(exit_code(&e));
    }
    let result = match &cli.command {
        Command::Inner { run, side, p, gaps_only, file } => cmd_inner(run, *side, *p, *gaps_only, file).map(|s| (s, 0)),
        Command::Outer { tighten, file } => cmd_outer(*tighten, file).map(|s| (s, 0)),
        Command::Singular { run, file } => cmd_singular(run, file).map(|s| (s, 0)),
        Command::Verify { samples, seed, outer, file } => cmd_verify(*samples, *seed, outer.as_deref(), file),
        Command::Bench { n, radius, trials, seed, methods, rows, vertex_cap, submatrix_cap, json } => {
            cmd_bench(n, radius, *trials, *seed, methods, rows.as_deref(), *vertex_cap, *submatrix_cap, *json)
                .map(|s| (s, 0))
        }
    };
    match result {
        Ok((out, 0)) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Ok((out, violations)) => {
            println!("{out}");
            eprintln!("verification failed: {violations} violated checks");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
