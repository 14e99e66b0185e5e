//! Command-line front end: compute and serialize polynomials and
//! coefficient tables, and run the verification suites with
//! machine-readable reports.
//!
//! Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
//! 2 = usage error, 3 = resource bound exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use nsmac::macdonald::{compute_e, compute_e_inverted, compute_p, ETable};
use nsmac::qt_field::QTRat;
use nsmac::scalar::{QNum, QtScalar};
use nsmac::suites::{self, SuiteReport};
use nsmac::weights::{
    c_lambda, coeff_a, coeff_b, coeff_f, compositions_of, norm_closed_form, Composition,
    NormMode,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_MATH_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

// Static resource caps; anything larger is refused with exit code 3.
const MAX_N: usize = 6;
const MAX_DEG: usize = 8;
const MAX_K: u32 = 6;

#[derive(Parser)]
#[command(
    name = "nsmac",
    version,
    about = "Exact engine for nonsymmetric Macdonald polynomials over Q(q,t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute objects and print their canonical serialization
    Compute {
        #[arg(value_enum)]
        kind: ComputeKind,
        #[command(flatten)]
        cfg: Config,
    },
    /// Run a named verification suite
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        #[command(flatten)]
        cfg: Config,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ComputeKind {
    /// Nonsymmetric Macdonald polynomial E_lambda(x|q,t)
    E,
    /// E_lambda with parameters inverted (q -> 1/q, t -> 1/t)
    EInverted,
    /// Symmetric Macdonald polynomial P_lambda
    P,
    /// Kernel coefficient a_lambda
    A,
    /// Symmetric Cauchy coefficient b_lambda (partitions)
    B,
    /// u-series coefficient f_lambda(u) (partitions)
    F,
    /// Scalar-product norm (E_lambda, E_lambda) at t = q^k
    Norm,
    /// Reproducing constant C_lambda at t = q^k
    C,
}

impl ComputeKind {
    fn label(&self) -> &'static str {
        match self {
            ComputeKind::E => "E",
            ComputeKind::EInverted => "E-inverted",
            ComputeKind::P => "P",
            ComputeKind::A => "a",
            ComputeKind::B => "b",
            ComputeKind::F => "f",
            ComputeKind::Norm => "norm",
            ComputeKind::C => "C",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Cauchy,
    Eigen,
    Relations,
    Orthogonality,
    Reproducing,
    Specialization,
    Lemma24,
}

impl SuiteName {
    fn label(&self) -> &'static str {
        match self {
            SuiteName::Cauchy => "cauchy",
            SuiteName::Eigen => "eigen",
            SuiteName::Relations => "relations",
            SuiteName::Orthogonality => "orthogonality",
            SuiteName::Reproducing => "reproducing",
            SuiteName::Specialization => "specialization",
            SuiteName::Lemma24 => "lemma24",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Exact arithmetic in Q(q,t)
    Symbolic,
    /// Evaluation at a random rational point (regression screening)
    Fastcheck,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Structured,
}

#[derive(Args)]
struct Config {
    /// Number of variables
    #[arg(long)]
    n: usize,
    /// Degree bound (enumerates all compositions up to this degree)
    #[arg(long)]
    deg: Option<usize>,
    /// Exponent for the specialization t = q^k
    #[arg(long)]
    k: Option<u32>,
    /// Composition as comma-separated parts, e.g. --lambda 1,0; repeatable
    #[arg(long = "lambda", value_name = "a,b,c")]
    lambda: Vec<String>,
    #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the relations corpus and fastcheck point sampling
    #[arg(long, default_value_t = 17)]
    seed: u64,
}

/// A report document: metadata lines, result lines, final status.
struct Report {
    meta: Vec<(String, String)>,
    results: Vec<String>,
    status: String,
}

impl Report {
    fn new() -> Self {
        Report {
            meta: Vec::new(),
            results: Vec::new(),
            status: "ok".to_string(),
        }
    }

    fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    fn line(&mut self, s: impl Into<String>) {
        self.results.push(s.into());
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Structured => {
                let _ = writeln!(out, "nsmac-report {}", env!("CARGO_PKG_VERSION"));
                for (k, v) in &self.meta {
                    let _ = writeln!(out, "{k}: {v}");
                }
                let _ = writeln!(out, "---");
                for r in &self.results {
                    let _ = writeln!(out, "{r}");
                }
                let _ = writeln!(out, "---");
                let _ = writeln!(out, "status: {}", self.status);
            }
            Format::Pretty => {
                let _ = writeln!(out, "nsmac {}", env!("CARGO_PKG_VERSION"));
                for (k, v) in &self.meta {
                    let _ = writeln!(out, "  {k:<10} {v}");
                }
                let _ = writeln!(out);
                for r in &self.results {
                    let _ = writeln!(out, "{r}");
                }
                let _ = writeln!(out);
                let _ = writeln!(out, "status: {}", self.status);
            }
        }
        out
    }
}

struct UsageError(String);

impl From<String> for UsageError {
    fn from(s: String) -> Self {
        UsageError(s)
    }
}

fn parse_lambdas(cfg: &Config) -> Result<Vec<Composition>, UsageError> {
    let mut out = Vec::new();
    for s in &cfg.lambda {
        let parts: Result<Vec<i32>, _> = s.split(',').map(|p| p.trim().parse::<i32>()).collect();
        let parts = parts.map_err(|e| format!("invalid --lambda '{s}': {e}"))?;
        if parts.len() != cfg.n {
            return Err(format!(
                "--lambda {s} has {} parts but --n is {}",
                parts.len(),
                cfg.n
            )
            .into());
        }
        let comp =
            Composition::new(parts).map_err(|e| format!("invalid --lambda '{s}': {e}"))?;
        out.push(comp);
    }
    Ok(out)
}

/// The lambda list for a compute command: the explicit --lambda values,
/// or every composition up to --deg, ordered by degree then
/// lexicographically descending.
fn target_lambdas(cfg: &Config) -> Result<Vec<Composition>, UsageError> {
    let explicit = parse_lambdas(cfg)?;
    if !explicit.is_empty() {
        return Ok(explicit);
    }
    let Some(deg) = cfg.deg else {
        return Err("pass --lambda (repeatable) or --deg to select compositions".to_string().into());
    };
    let mut out = Vec::new();
    for d in 0..=deg as i32 {
        let mut cs = compositions_of(d, cfg.n);
        cs.sort_by(|a, b| b.parts().cmp(a.parts()));
        out.extend(cs);
    }
    Ok(out)
}

fn check_resource_caps(cfg: &Config) -> Result<(), String> {
    if cfg.n == 0 || cfg.n > MAX_N {
        return Err(format!("--n must be in 1..={MAX_N} (resource bound)"));
    }
    if cfg.deg.is_some_and(|d| d > MAX_DEG) {
        return Err(format!("--deg must be at most {MAX_DEG} (resource bound)"));
    }
    if cfg.k.is_some_and(|k| k > MAX_K) {
        return Err(format!("--k must be at most {MAX_K} (resource bound)"));
    }
    Ok(())
}

/// Samples a fastcheck evaluation point: small rationals, never 0 or +-1,
/// with t0 = q0^k when a specialization exponent is in play.
fn sample_fastcheck_point(seed: u64, k_for_t: Option<u32>) -> (BigRational, BigRational) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let num = rng.gen_range(2..=23i64);
        let den = rng.gen_range(2..=23i64);
        if num == den {
            continue;
        }
        let q0 = BigRational::new(BigInt::from(num), BigInt::from(den));
        let t0 = match k_for_t {
            Some(k) => {
                let mut t = BigRational::from(BigInt::from(1));
                for _ in 0..k {
                    t *= &q0;
                }
                t
            }
            None => {
                let tn = rng.gen_range(2..=23i64);
                let td = rng.gen_range(2..=23i64);
                if tn == td {
                    continue;
                }
                BigRational::new(BigInt::from(tn), BigInt::from(td))
            }
        };
        if QNum::set_params(q0.clone(), t0.clone()).is_ok() {
            return (q0, t0);
        }
    }
}

fn spectral_string(rec_spectral: &nsmac::weights::SpectralVector) -> String {
    rec_spectral
        .pairs()
        .iter()
        .map(|&(eq, et)| QTRat::monomial(eq as i64, et as i64).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn run_compute<C: QtScalar>(
    kind: ComputeKind,
    cfg: &Config,
    report: &mut Report,
) -> Result<(), String> {
    let lambdas = target_lambdas(cfg).map_err(|e| e.0)?;
    let need_k = matches!(kind, ComputeKind::Norm | ComputeKind::C);
    let k = match (need_k, cfg.k) {
        (true, None) => return Err("this kind requires --k".to_string()),
        (_, k) => k.unwrap_or(0),
    };
    let mut table = ETable::<C>::new(cfg.n);
    for lam in &lambdas {
        match kind {
            ComputeKind::E => {
                let rec = compute_e::<C>(lam).map_err(|e| e.to_string())?;
                report.line(format!("result E{lam}: {}", rec.poly.to_string_x()));
                report.line(format!("spectral E{lam}: {}", spectral_string(&rec.spectral)));
            }
            ComputeKind::EInverted => {
                let rec = compute_e_inverted::<C>(lam).map_err(|e| e.to_string())?;
                report.line(format!(
                    "result E-inverted{lam}: {}",
                    rec.poly.to_string_x()
                ));
            }
            ComputeKind::P => {
                let p = compute_p(&mut table, lam).map_err(|e| e.to_string())?;
                report.line(format!("result P{lam}: {}", p.to_string_x()));
            }
            ComputeKind::A => {
                report.line(format!("result a{lam}: {}", coeff_a(lam)));
            }
            ComputeKind::B => {
                let b = coeff_b(lam).map_err(|e| e.to_string())?;
                report.line(format!("result b{lam}: {b}"));
            }
            ComputeKind::F => {
                let f = coeff_f(lam).map_err(|e| e.to_string())?;
                report.line(format!(
                    "result f{lam}: {}",
                    f.to_string_with(&|_| "u".to_string())
                ));
            }
            ComputeKind::Norm => {
                let v = norm_closed_form(lam, NormMode::TEqQk(k));
                report.line(format!("result norm{lam} k={k}: {v}"));
            }
            ComputeKind::C => {
                let v = c_lambda(lam, k);
                report.line(format!("result C{lam} k={k}: {v}"));
            }
        }
    }
    Ok(())
}

enum SuiteOutcome {
    AllPassed,
    Failed,
}

fn run_verify<C: QtScalar>(
    suite: SuiteName,
    cfg: &Config,
    seed: u64,
    report: &mut Report,
) -> Result<SuiteOutcome, String> {
    let n = cfg.n;
    let stringify = |e: suites::SuiteError| e.to_string();
    let suite_report: SuiteReport = match suite {
        SuiteName::Cauchy => {
            suites::run_cauchy_full::<C>(n, cfg.deg.unwrap_or(3)).map_err(stringify)?
        }
        SuiteName::Eigen => suites::run_eigen::<C>(n, cfg.deg.unwrap_or(4)).map_err(stringify)?,
        SuiteName::Relations => suites::run_relations::<C>(n, 20, seed).map_err(stringify)?,
        SuiteName::Orthogonality => {
            let k = cfg.k.unwrap_or(1);
            let d = cfg.deg.unwrap_or(3);
            let mut r = suites::run_orthogonality::<C>(n, k, d).map_err(stringify)?;
            let extra = suites::run_norm_product::<C>(n, k, d).map_err(stringify)?;
            r.checks.extend(extra.checks);
            r
        }
        SuiteName::Reproducing => {
            suites::run_reproducing::<C>(n, cfg.k.unwrap_or(1), cfg.deg.unwrap_or(2))
                .map_err(stringify)?
        }
        SuiteName::Specialization => {
            suites::run_specialization::<C>(n, cfg.deg.unwrap_or(3)).map_err(stringify)?
        }
        SuiteName::Lemma24 => {
            suites::run_lemma24::<C>(n, cfg.deg.unwrap_or(3)).map_err(stringify)?
        }
    };
    let total = suite_report.len();
    let passed = suite_report.checks.iter().filter(|c| c.passed).count();
    report.line(format!("checks: {total}"));
    report.line(format!("passed: {passed}"));
    if let Some(fail) = suite_report.first_failure() {
        report.line(format!("counterexample: {}", fail.id));
        if let Some(d) = &fail.detail {
            report.line(format!("counterexample-detail: {d}"));
        }
        Ok(SuiteOutcome::Failed)
    } else {
        Ok(SuiteOutcome::AllPassed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, command_desc) = match &cli.command {
        Command::Compute { kind, cfg } => (cfg, format!("compute {}", kind.label())),
        Command::Verify { suite, cfg } => (cfg, format!("verify {}", suite.label())),
    };
    if let Err(msg) = check_resource_caps(cfg) {
        eprintln!("nsmac: {msg}");
        return ExitCode::from(EXIT_RESOURCE);
    }

    let mut report = Report::new();
    report.meta("command", &command_desc);
    report.meta(
        "mode",
        match cfg.mode {
            Mode::Symbolic => "symbolic",
            Mode::Fastcheck => "fastcheck",
        },
    );
    report.meta("n", cfg.n.to_string());
    report.meta(
        "deg",
        cfg.deg.map_or("-".to_string(), |d| d.to_string()),
    );
    report.meta("k", cfg.k.map_or("-".to_string(), |k| k.to_string()));
    if !cfg.lambda.is_empty() {
        report.meta("lambda", cfg.lambda.join(" "));
    }

    // fastcheck: fix the evaluation point before any QNum arithmetic runs
    if cfg.mode == Mode::Fastcheck {
        let needs_tqk = matches!(
            &cli.command,
            Command::Verify {
                suite: SuiteName::Orthogonality | SuiteName::Reproducing,
                ..
            }
        ) || matches!(
            &cli.command,
            Command::Compute {
                kind: ComputeKind::Norm | ComputeKind::C,
                ..
            }
        );
        let k_for_t = if needs_tqk { Some(cfg.k.unwrap_or(1)) } else { None };
        let (q0, t0) = sample_fastcheck_point(cfg.seed, k_for_t);
        report.meta("seed", cfg.seed.to_string());
        report.meta("eval-point", format!("q = {q0}, t = {t0}"));
    }

    let outcome = match &cli.command {
        Command::Compute { kind, cfg } => {
            let r = match cfg.mode {
                Mode::Symbolic => run_compute::<QTRat>(*kind, cfg, &mut report),
                Mode::Fastcheck => run_compute::<QNum>(*kind, cfg, &mut report),
            };
            match r {
                Ok(()) => SuiteOutcome::AllPassed,
                Err(msg) => {
                    eprintln!("nsmac: {msg}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
        }
        Command::Verify { suite, cfg } => {
            let r = match cfg.mode {
                Mode::Symbolic => run_verify::<QTRat>(*suite, cfg, cfg.seed, &mut report),
                Mode::Fastcheck => run_verify::<QNum>(*suite, cfg, cfg.seed, &mut report),
            };
            match r {
                Ok(outcome) => outcome,
                Err(msg) if msg.contains("evaluation point") => {
                    eprintln!("nsmac: fastcheck sampling failed: {msg} (try another --seed)");
                    return ExitCode::from(EXIT_RESOURCE);
                }
                Err(msg) => {
                    eprintln!("nsmac: {msg}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
        }
    };

    let failed = matches!(outcome, SuiteOutcome::Failed);
    if failed {
        report.status = "fail".to_string();
    }
    let rendered = report.render(cfg.format);
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("nsmac: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    } else {
        print!("{rendered}");
    }
    if failed {
        ExitCode::from(EXIT_MATH_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}
