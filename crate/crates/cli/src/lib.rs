//! `bchcs`: build, analyze and exercise BCH-code sensing matrices.

pub mod report;

use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use bch_sensing::bsm::{read_bsm, write_bsm};
use bch_sensing::codes::{build_code, find_primitive_for_h, CodeSpec, REFERENCE_GAP3_H};
use bch_sensing::counting::{
    growth_root, growth_root_lower_bound, kappa_sequence, tau, to_decimal,
};
use bch_sensing::gf2m::{primitive_polynomials, FieldContext, Gf2Poly};
use bch_sensing::matrices::{
    build_devore, build_pm1, build_ternary, coherence, gershgorin_check, CoherenceMode, DevoreSpec,
    SensingMatrix, MAX_FULL_GRAM_COLUMNS,
};
use bch_sensing::recovery::{
    correlate_naive, mp_recover_with, random_sparse_signal, Backend, CorrelationEngine, MpMode,
    MpParams,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

pub use report::{Format, Report, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    /// The reader of stdout went away; not an error from the user's view.
    #[error("output closed")]
    Closed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Closed => 0,
        }
    }
}

impl From<bch_sensing::Error> for CliError {
    fn from(e: bch_sensing::Error) -> Self {
        match e {
            bch_sensing::Error::Inconsistent(_) => CliError::Internal(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Naive,
    Dft,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Naive => Backend::Naive,
            BackendArg::Dft => Backend::Dft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "pure_mp")]
    PureMp,
    #[value(name = "ls_refine")]
    LsRefine,
}

impl From<ModeArg> for MpMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PureMp => MpMode::PureMp,
            ModeArg::LsRefine => MpMode::LsRefine,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bchcs",
    version,
    about = "BCH-code compressed-sensing matrices"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "naive")]
    pub backend: BackendArg,
    #[arg(long, global = true, value_enum, default_value = "ls_refine")]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct CodeArgs {
    #[arg(long = "mtilde")]
    pub m_tilde: u32,
    /// Zero gap; derived from `--k` as ceil(log2 k) when absent.
    #[arg(long)]
    pub i: Option<u32>,
    /// Primitive polynomial, hex or `x^4+x+1` form.
    #[arg(long)]
    pub primpoly: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the ±1 matrix of a symmetric BCH code and write it as BSM1.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        /// Target sparsity; sets the gap when `--i` is absent.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Exact coherence, RIP constants and a Gershgorin spot check.
    Analyze {
        matrix: PathBuf,
        /// Sample this many column pairs instead of the full Gram.
        #[arg(long)]
        pairs: Option<u64>,
        /// Submatrix size for the eigenvalue check.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Recover a sparse vector from measurements.
    Recover {
        matrix: PathBuf,
        /// File holding the whitespace-separated measurement vector.
        #[arg(long)]
        y: PathBuf,
        /// Expected sparsity; the iteration cap defaults to 4k.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Monte Carlo recovery of seeded random sparse signals.
    Simulate {
        #[arg(long = "mtilde", required_unless_present = "matrix")]
        m_tilde: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        primpoly: Option<String>,
        /// Use a matrix file instead of building one.
        #[arg(long, conflicts_with_all = ["m_tilde", "i", "primpoly"])]
        matrix: Option<PathBuf>,
        /// Sparsity.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Parity-check polynomials per extension degree, checked against reference rows.
    Tables {
        #[arg(long, default_value_t = 3)]
        i: u32,
        #[arg(long = "mtilde", value_delimiter = ',', default_value = "4,6,8,10")]
        m_tilde: Vec<u32>,
    },
    /// Linear and circular spaced-sequence counts.
    Count {
        /// Gap values: `3`, `0..6` or `1,2,5`.
        #[arg(long, default_value = "1..6")]
        a: String,
        /// Lengths: `8`, `1..16` or `4,8`.
        #[arg(long, default_value = "1..16")]
        b: String,
    },
    /// Binary DeVore matrix over GF(p) with polynomials of degree ≤ r.
    Devore {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
    },
    /// Ternary matrix combining DeVore and ±1 code matrices, p = 2^m - 1 prime.
    Combine {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
    },
}

/// Parses `5`, `1..8` (inclusive) or `1,3,5`.
pub fn parse_range(s: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::Validation(format!("invalid range `{s}`"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(num).collect()
}

fn gap_from_k(k: u64) -> u32 {
    64 - (k.max(1) - 1).leading_zeros()
}

fn resolve_gap(i: Option<u32>, k: Option<u64>) -> CliResult<u32> {
    match (i, k) {
        (Some(i), _) => Ok(i),
        (None, Some(k)) if k >= 2 => Ok(gap_from_k(k)),
        (None, Some(k)) => Err(CliError::Validation(format!(
            "k = {k} gives no valid gap; need k ≥ 2"
        ))),
        (None, None) => Err(CliError::Validation("give --i or --k".into())),
    }
}

fn parse_poly(s: &str) -> CliResult<Gf2Poly> {
    s.parse()
        .map_err(|e: bch_sensing::Error| CliError::Validation(e.to_string()))
}

fn make_code(m_tilde: u32, i: u32, primpoly: Option<&str>) -> CliResult<CodeSpec> {
    let prim = primpoly.map(parse_poly).transpose()?;
    let field = FieldContext::new(m_tilde, prim)?;
    Ok(build_code(&field, i)?)
}

fn load_matrix(path: &Path) -> CliResult<SensingMatrix> {
    let file =
        fs::File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    read_bsm(BufReader::new(file))
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn load_vector(path: &Path) -> CliResult<Vec<f64>> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    text.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Validation(format!("{}: bad number `{t}`", path.display())))
        })
        .collect()
}

/// Writes to `--out` when given, else to `stdout`.
fn emit(
    out: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> CliResult<()> {
    match out {
        Some(p) => {
            let mut f = std::io::BufWriter::new(
                fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
            );
            body(&mut f)?;
            f.flush()?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

/// Matrix-producing commands: the BSM text goes to `--out` or stdout, and the
/// summary is printed only when the matrix went to a file.
fn emit_matrix(
    cli: &Cli,
    stdout: &mut dyn Write,
    m: &SensingMatrix,
    summary: Report,
) -> CliResult<()> {
    emit(cli.out.as_deref(), stdout, |w| write_bsm(m, w))?;
    if cli.out.is_some() {
        summary.render(cli.format, stdout)?;
    }
    Ok(())
}

fn shape_summary(m: &SensingMatrix) -> Report {
    let mut r = Report::default();
    r.kv("kind", m.kind());
    r.kv("rows", m.rows());
    r.kv("cols", m.cols());
    r
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Construct { code, k } => {
            let gap = resolve_gap(code.i, *k)?;
            let spec = make_code(code.m_tilde, gap, code.primpoly.as_deref())?;
            let m = build_pm1(&spec)?;
            let mut r = shape_summary(&m);
            r.kv("mtilde", spec.m_tilde());
            r.kv("i", gap);
            r.kv("primpoly", spec.field().primitive_poly());
            r.kv("k_tilde", spec.k_tilde());
            r.kv("dmin_bound", spec.dmin_bound());
            let num = (1u64 << (spec.m_tilde() - gap)) - 1;
            let den = spec.n_tilde();
            r.kv("coherence_bound", format!("{num}/{den}"));
            r.kv("orbits", m.orbits().map_or(0, |o| o.len()));
            emit_matrix(cli, stdout, &m, r)
        }
        Command::Analyze {
            matrix,
            pairs,
            order,
            trials,
        } => {
            let m = load_matrix(matrix)?;
            let r = analyze(&m, *pairs, *order, *trials, cli.seed)?;
            emit(cli.out.as_deref(), stdout, |w| r.render(cli.format, w))
        }
        Command::Recover {
            matrix,
            y,
            k,
            k_max,
            tol,
        } => {
            let m = load_matrix(matrix)?;
            let y = load_vector(y)?;
            let params = MpParams {
                k_max: k_max.unwrap_or_else(|| k.map_or(m.rows(), |k| 4 * k.max(1))),
                tol: *tol,
                mode: cli.mode.into(),
                backend: cli.backend.into(),
            };
            let r = recover(&m, &y, &params)?;
            emit(cli.out.as_deref(), stdout, |w| r.render(cli.format, w))
        }
        Command::Simulate {
            m_tilde,
            i,
            primpoly,
            matrix,
            k,
            trials,
            tol,
        } => {
            let m = match (matrix, m_tilde) {
                (Some(p), _) => load_matrix(p)?,
                (None, Some(mt)) => {
                    let gap = resolve_gap(*i, Some(*k as u64))?;
                    build_pm1(&make_code(*mt, gap, primpoly.as_deref())?)?
                }
                (None, None) => {
                    return Err(CliError::Validation("give --mtilde or --matrix".into()))
                }
            };
            let params = MpParams {
                tol: *tol,
                mode: cli.mode.into(),
                backend: cli.backend.into(),
                ..MpParams::for_sparsity(*k)
            };
            let r = simulate(&m, *k, *trials, cli.seed, &params)?;
            emit(cli.out.as_deref(), stdout, |w| r.render(cli.format, w))
        }
        Command::Tables { i, m_tilde } => {
            let r = tables(*i, m_tilde)?;
            emit(cli.out.as_deref(), stdout, |w| r.render(cli.format, w))
        }
        Command::Count { a, b } => {
            let r = count(&parse_range(a)?, &parse_range(b)?)?;
            emit(cli.out.as_deref(), stdout, |w| r.render(cli.format, w))
        }
        Command::Devore { p, r } => {
            let spec = DevoreSpec::new(*p, *r)?;
            let m = build_devore(&spec)?;
            let mut s = shape_summary(&m);
            s.kv("column_weight", p);
            s.kv("max_overlap", r);
            emit_matrix(cli, stdout, &m, s)
        }
        Command::Combine { p, k } => {
            if *p < 3 || !(p + 1).is_power_of_two() {
                return Err(CliError::Validation(format!(
                    "p = {p} is not of the form 2^m - 1"
                )));
            }
            let m_tilde = (p + 1).trailing_zeros();
            let m = build_ternary(*k, m_tilde)?;
            let mut s = shape_summary(&m);
            s.kv("mtilde", m_tilde);
            s.kv("r", p / k);
            s.kv("i", gap_from_k(*k));
            emit_matrix(cli, stdout, &m, s)
        }
    }
}

pub fn analyze(
    m: &SensingMatrix,
    pairs: Option<u64>,
    order: Option<usize>,
    trials: usize,
    seed: u64,
) -> CliResult<Report> {
    let mode = match pairs {
        Some(p) => CoherenceMode::Sampled { pairs: p, seed },
        None if m.cols() > MAX_FULL_GRAM_COLUMNS => CoherenceMode::Sampled {
            pairs: 100_000,
            seed,
        },
        None => CoherenceMode::Full,
    };
    let a = coherence(m, mode)?;
    let mut r = shape_summary(m);
    r.kv("coherence", a.coherence);
    r.kv("coherence_value", format!("{:.12}", a.coherence.value()));
    r.kv(
        "coherence_mode",
        if a.sampled {
            format!("sampled {} pairs (lower bound)", a.pairs_examined)
        } else {
            "full".to_string()
        },
    );
    if let Some((x, y)) = a.coherence.pair {
        r.kv("attained_at", format!("{x} {y}"));
    }
    r.kv("max_rip_order", a.max_rip_order);
    let mut t = Table::new("rip constants", ["k", "delta_k"]);
    for (k, d) in a.delta_table() {
        t.push([k.to_string(), format!("{d:.12}")]);
    }
    r.tables.push(t);

    let k = order
        .unwrap_or_else(|| a.max_rip_order.min(5))
        .min(m.cols())
        .min(m.rows());
    if trials > 0 && k >= 1 {
        let g = gershgorin_check(m, k, trials, seed, a.coherence.value())?;
        r.kv("gershgorin_order", g.order);
        r.kv("gershgorin_trials", g.trials);
        r.kv("gershgorin_delta", format!("{:.12}", g.delta));
        r.kv(
            "gershgorin_eigen_range",
            format!("{:.12} {:.12}", g.min_eigenvalue, g.max_eigenvalue),
        );
        r.kv("gershgorin_worst_margin", format!("{:.3e}", g.worst_margin));
        r.kv("gershgorin_failures", g.failures);
    }
    Ok(r)
}

pub fn recover(m: &SensingMatrix, y: &[f64], params: &MpParams) -> CliResult<Report> {
    let engine = CorrelationEngine::new(m, params.backend)?;
    let res = mp_recover_with(&engine, y, params)?;
    let mut r = Report::default();
    let support: Vec<String> = res.support.iter().map(usize::to_string).collect();
    r.kv("support", support.join(" "));
    r.kv("iterations", res.iterations);
    r.kv("residual", format!("{:.3e}", res.final_residual()));
    r.kv("mult_count", res.mult_count);
    let mut t = Table::new("coefficients", ["index", "value"]);
    for (j, v) in res.coefficients.iter().enumerate() {
        t.push([j.to_string(), format!("{v:.15e}")]);
    }
    r.tables.push(t);
    Ok(r)
}

#[derive(Debug, Clone)]
struct Trial {
    success: bool,
    within_support: bool,
    residual: f64,
    iterations: usize,
}

pub fn simulate(
    m: &SensingMatrix,
    k: usize,
    trials: usize,
    seed: u64,
    params: &MpParams,
) -> CliResult<Report> {
    if k == 0 || k > m.cols() {
        return Err(CliError::Validation(format!(
            "sparsity {k} outside 1..={}",
            m.cols()
        )));
    }
    let engine = CorrelationEngine::new(m, params.backend)?;
    let outcomes: Vec<CliResult<Trial>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (support, s) = random_sparse_signal(m.cols(), k, seed.wrapping_add(t as u64))?;
            let y = m.mul_vec(&s)?;
            let res = mp_recover_with(&engine, &y, params)?;
            Ok(Trial {
                success: res.support == support,
                within_support: res
                    .selected
                    .iter()
                    .all(|j| support.binary_search(j).is_ok()),
                residual: res.final_residual(),
                iterations: res.iterations,
            })
        })
        .collect();
    let outcomes: Vec<Trial> = outcomes.into_iter().collect::<CliResult<_>>()?;

    let successes = outcomes.iter().filter(|t| t.success).count();
    let within = outcomes.iter().filter(|t| t.within_support).count();
    let mean_res = outcomes.iter().map(|t| t.residual).sum::<f64>() / trials.max(1) as f64;
    let max_res = outcomes.iter().map(|t| t.residual).fold(0.0, f64::max);

    let mut r = shape_summary(m);
    r.kv("sparsity", k);
    r.kv("trials", trials);
    r.kv("mode", params.mode);
    r.kv("backend", params.backend);
    r.kv("seed", seed);
    r.kv("successes", successes);
    r.kv(
        "success_rate",
        format!("{:.4}", successes as f64 / trials.max(1) as f64),
    );
    r.kv("selections_within_support", within);
    r.kv("mean_residual", format!("{mean_res:.3e}"));
    r.kv("max_residual", format!("{max_res:.3e}"));

    if m.cols() <= MAX_FULL_GRAM_COLUMNS {
        let c = coherence(m, CoherenceMode::Full)?.coherence;
        let holds = c.below(1, 2 * k as u64 - 1);
        r.kv("coherence", c);
        r.kv("selection_guarantee", if holds { "holds" } else { "void" });
    }

    // one correlation pass per backend on a reference residual
    let (_, s) = random_sparse_signal(m.cols(), k, seed)?;
    let y = m.mul_vec(&s)?;
    let mut naive = 0;
    correlate_naive(m, &y, &mut naive)?;
    r.kv("mult_count_naive", naive);
    match CorrelationEngine::new(m, Backend::Dft) {
        Ok(dft) => {
            let mut c = 0;
            dft.correlate(&y, &mut c)?;
            r.kv("mult_count_dft", c);
        }
        Err(_) => r.kv("mult_count_dft", "unavailable"),
    }

    let mut per = Table::new(
        "trials",
        ["trial", "seed", "success", "residual", "iterations"],
    );
    for (t, o) in outcomes.iter().enumerate() {
        per.push([
            t.to_string(),
            seed.wrapping_add(t as u64).to_string(),
            o.success.to_string(),
            format!("{:.3e}", o.residual),
            o.iterations.to_string(),
        ]);
    }
    r.csv_only.push(per);
    Ok(r)
}

pub fn tables(i: u32, m_tildes: &[u32]) -> CliResult<Report> {
    let mut t = Table::new(
        format!("parity-check polynomials i={i}"),
        [
            "mtilde",
            "primpoly",
            "deg_h",
            "h",
            "deg_h_all_primitives",
            "reference_match",
            "search",
        ],
    );
    for &mt in m_tildes {
        let code = make_code(mt, i, None)?;
        let degrees: Vec<usize> = primitive_polynomials(mt)
            .map(|p| {
                let f = FieldContext::new(mt, Some(p))?;
                Ok(build_code(&f, i)?.k_tilde())
            })
            .collect::<CliResult<_>>()?;
        let uniform = if degrees.iter().all(|&d| d == degrees[0]) {
            format!("{} ({} primitives)", degrees[0], degrees.len())
        } else {
            "varies".to_string()
        };
        let reference = REFERENCE_GAP3_H
            .iter()
            .find(|(m, _)| i == 3 && *m == mt)
            .map(|(_, h)| parse_poly(h))
            .transpose()?;
        let (matches, search) = match &reference {
            Some(h) => (
                (code.h() == h).to_string(),
                match find_primitive_for_h(mt, i, h)? {
                    Some(p) => format!("found {}", p.to_hex()),
                    None => "none".to_string(),
                },
            ),
            None => ("-".to_string(), "-".to_string()),
        };
        t.push([
            mt.to_string(),
            code.field().primitive_poly().to_hex(),
            code.k_tilde().to_string(),
            code.h().to_string(),
            uniform,
            matches,
            search,
        ]);
    }
    let mut r = Report::default();
    r.tables.push(t);
    Ok(r)
}

pub fn count(a_values: &[u64], b_values: &[u64]) -> CliResult<Report> {
    let max_b = *b_values.iter().max().unwrap_or(&0) as usize;
    if b_values.contains(&0) {
        return Err(CliError::Validation("lengths start at 1".into()));
    }
    let header: Vec<String> = std::iter::once("a".to_string())
        .chain(b_values.iter().map(|b| format!("b={b}")))
        .collect();
    let mut kt = Table::new("kappa (linear)", header.clone());
    let mut tt = Table::new("tau (circular)", header);
    let mut gt = Table::new("growth", ["a", "gamma", "lower_bound", "bound_holds"]);
    for &a in a_values {
        let a32 =
            u32::try_from(a).map_err(|_| CliError::Validation(format!("gap {a} too large")))?;
        let kappa = kappa_sequence(a32, max_b);
        let mut krow = vec![a.to_string()];
        let mut trow = vec![a.to_string()];
        for &b in b_values {
            krow.push(to_decimal(&kappa[b as usize]));
            trow.push(to_decimal(&tau(a32, b as usize)));
        }
        kt.rows.push(krow);
        tt.rows.push(trow);
        let g = growth_root(a32);
        if a >= 1 {
            let lb = growth_root_lower_bound(a32);
            gt.push([
                a.to_string(),
                format!("{g:.12}"),
                format!("{lb:.12}"),
                (g > lb).to_string(),
            ]);
        } else {
            gt.push([a.to_string(), format!("{g:.12}"), "-".into(), "-".into()]);
        }
    }
    let mut r = Report::default();
    r.tables.extend([kt, tt, gt]);
    Ok(r)
}
