//! `recipsym`: exact elementary symmetric functions of `1/f(1), ..., 1/f(n)`.
//!
//! Exit codes: 0 success or expected pattern, 1 unexpected integer hit,
//! 2 usage error, 3 `f(i) = 0` for some `i` in range.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

use recipsym::bounds::{enclosure, zeta_enclosure, BoundsError, ConstantId, Enclosure};
use recipsym::poly::{parse_poly, PolyError, Polynomial};
use recipsym::symfunc::{sigma_table, EngineRegistry, SigmaError};
use recipsym::verify::{
    certify_noninteger, explore_conjecture, prior_results_sweep, theorem_sweep, PriorKind,
    PriorParams, VerifyError,
};

#[derive(Parser, Debug)]
#[command(name = "recipsym", version, about = "Exact symmetric functions of reciprocal polynomial values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// sigma_k(n) for one k, or the whole column when --k is omitted
    Compute(ComputeArgs),
    /// Every sigma_k(n) with k <= n <= n-max
    Table(TableArgs),
    /// Certificate that sigma_k(n) is not an integer
    Certify(CertifyArgs),
    /// Rational enclosure of a zeta value or derived constant
    Zeta(ZetaArgs),
    /// Integrality sweep over the nonnegative-coefficient family
    Sweep(SweepArgs),
    /// Regression sweep for f(x) = x and f(x) = ax + b
    Prior(PriorArgs),
    /// Integer hits for any f, with a scan-bounded threshold candidate
    Explore(ExploreArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    /// Output format (default: text; json for zeta)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to PATH instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn positive_u64() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

fn poly_arg(text: &str) -> Result<Polynomial, String> {
    parse_poly(text).map_err(|e| match e {
        PolyError::Syntax { pos, .. } | PolyError::ExponentTooLarge { pos, .. } => {
            format!("{e} (character {})", pos + 1)
        }
        PolyError::ZeroPolynomial => e.to_string(),
    })
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long, value_parser = poly_arg)]
    poly: Polynomial,
    #[arg(long, value_parser = positive_u64())]
    n: u64,
    #[arg(long, value_parser = positive_u64())]
    k: Option<u64>,
    /// Column engine: shared-denominator, product or subsets
    #[arg(long, default_value = "shared-denominator")]
    engine: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_parser = poly_arg)]
    poly: Polynomial,
    #[arg(long, value_parser = positive_u64())]
    n_max: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long, value_parser = poly_arg)]
    poly: Polynomial,
    #[arg(long, value_parser = positive_u64())]
    n: u64,
    #[arg(long, value_parser = positive_u64())]
    k: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    /// zeta(s) for s = 2 or 4
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "constant")]
    s: Option<u32>,
    /// Constant id: ZETA2, ZETA4, PI2_OVER_6, PI2_OVER_12, PI4_OVER_90, PI4_OVER_120, ZETA2_MINUS_1
    #[arg(long)]
    constant: Option<String>,
    /// Partial-sum length N
    #[arg(long, default_value_t = 1000, value_parser = positive_u64())]
    terms: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    max_degree: u64,
    #[arg(long, default_value_t = 3, value_parser = positive_u64())]
    coeff_max: u64,
    #[arg(long, default_value_t = 40, value_parser = positive_u64())]
    n_max: u64,
    /// Worker threads (default: all cores); results do not depend on it
    #[arg(long, value_parser = positive_u64())]
    jobs: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct PriorArgs {
    /// harmonic, chen-tang or wang-hong
    #[arg(long)]
    kind: PriorKind,
    #[arg(long, value_parser = positive_u64())]
    n_min: Option<u64>,
    #[arg(long, default_value_t = 200, value_parser = positive_u64())]
    n_max: u64,
    #[arg(long, default_value_t = 8, value_parser = positive_u64())]
    a_max: u64,
    #[arg(long, default_value_t = 8, value_parser = positive_u64())]
    b_max: u64,
    #[arg(long, value_parser = positive_u64())]
    jobs: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExploreArgs {
    #[arg(long, value_parser = poly_arg)]
    poly: Polynomial,
    #[arg(long, default_value_t = 100, value_parser = positive_u64())]
    n_max: u64,
    #[command(flatten)]
    output: Output,
}

/// A failure with its exit code; `flag` points the diagnostic at a token.
#[derive(Debug)]
enum Failure {
    Usage { msg: String, flag: Option<&'static str> },
    Hypothesis(u64),
    Other(String),
}

impl Failure {
    fn usage(msg: impl Into<String>, flag: &'static str) -> Self {
        Failure::Usage {
            msg: msg.into(),
            flag: Some(flag),
        }
    }
}

impl From<SigmaError> for Failure {
    fn from(e: SigmaError) -> Self {
        match e {
            SigmaError::ZeroValue(i) => Failure::Hypothesis(i),
            other => Failure::Usage {
                msg: other.to_string(),
                flag: None,
            },
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Sigma(s) => s.into(),
            other => Failure::Usage {
                msg: other.to_string(),
                flag: None,
            },
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::HypothesisViolated(i) => Failure::Hypothesis(i),
            VerifyError::Sigma(s) => s.into(),
            VerifyError::Bounds(b) => b.into(),
            VerifyError::Unresolved(msg) => Failure::Usage {
                msg: format!("unresolved: {msg}; raise RECIPSYM_TERMS_CAP"),
                flag: None,
            },
            VerifyError::Precondition(_) | VerifyError::NoCertifier(_) => Failure::Usage {
                msg: e.to_string(),
                flag: Some("--poly"),
            },
            other => Failure::Other(other.to_string()),
        }
    }
}

/// Rendered output plus the exit code it should produce.
struct Emit {
    body: String,
    code: u8,
}

fn emit(body: String) -> Result<Emit, Failure> {
    Ok(Emit { body, code: 0 })
}

fn format_of(output: &Output, default: Format) -> Format {
    output.format.unwrap_or(default)
}

fn run(command: &Command) -> Result<Emit, Failure> {
    match command {
        Command::Compute(a) => {
            if let Some(k) = a.k {
                if k > a.n {
                    return Err(Failure::usage(format!("need k <= n, got k = {k}, n = {}", a.n), "--k"));
                }
            }
            if let Some(i) = a.poly.first_zero_at_positive_arg(a.n) {
                return Err(Failure::Hypothesis(i));
            }
            let registry = EngineRegistry::default();
            let engine = registry.get(&a.engine).ok_or_else(|| {
                Failure::usage(
                    format!("unknown engine {:?}; expected one of {}", a.engine, registry.names().join(", ")),
                    "--engine",
                )
            })?;
            let column = engine.column(&a.poly, a.n)?;
            let out = render::compute(&a.poly, a.n, a.k.map(|k| k as usize), engine.name(), &column);
            emit(out.format(format_of(&a.output, Format::Text))?)
        }
        Command::Table(a) => {
            if let Some(i) = a.poly.first_zero_at_positive_arg(a.n_max) {
                return Err(Failure::Hypothesis(i));
            }
            let table = sigma_table(&a.poly, a.n_max)?;
            emit(render::table(&table).format(format_of(&a.output, Format::Text))?)
        }
        Command::Certify(a) => {
            if a.k > a.n {
                return Err(Failure::usage(format!("need k <= n, got k = {}, n = {}", a.k, a.n), "--k"));
            }
            let format = format_of(&a.output, Format::Text);
            match certify_noninteger(&a.poly, a.k as usize, a.n) {
                Ok(cert) => emit(render::certificate(&cert, format)?),
                Err(VerifyError::ExceptionalCase { value }) => {
                    emit(render::exceptional(&a.poly, a.k as usize, a.n, &value, format)?)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Zeta(a) => {
            let enc = zeta(a)?;
            emit(render::enclosure(&enc, format_of(&a.output, Format::Json))?)
        }
        Command::Sweep(a) => {
            let report = theorem_sweep(
                a.max_degree as usize,
                a.coeff_max,
                a.n_max,
                a.jobs.map(|j| j as usize),
            )?;
            let body = render::sweep(&report, format_of(&a.output, Format::Text))?;
            Ok(Emit {
                body,
                code: u8::from(!report.unexpected.is_empty()),
            })
        }
        Command::Prior(a) => {
            let params = PriorParams {
                n_min: a.n_min,
                n_max: a.n_max,
                a_max: a.a_max,
                b_max: a.b_max,
            };
            let report = prior_results_sweep(a.kind, params, a.jobs.map(|j| j as usize))
                .map_err(|e| match e {
                    VerifyError::Precondition(msg) => Failure::usage(msg, "--n-min"),
                    other => other.into(),
                })?;
            let body = render::sweep(&report, format_of(&a.output, Format::Text))?;
            Ok(Emit {
                body,
                code: u8::from(!report.unexpected.is_empty()),
            })
        }
        Command::Explore(a) => {
            let report = explore_conjecture(&a.poly, a.n_max)?;
            emit(render::conjecture(&report, format_of(&a.output, Format::Text))?)
        }
    }
}

fn zeta(a: &ZetaArgs) -> Result<Enclosure, Failure> {
    match (&a.constant, a.s) {
        (Some(id), _) => {
            let id = ConstantId::from_id(id).ok_or_else(|| {
                let ids: Vec<_> = ConstantId::ALL.iter().map(|c| c.id()).collect();
                Failure::usage(
                    format!("unknown constant {id:?}; expected one of {}", ids.join(", ")),
                    "--constant",
                )
            })?;
            Ok(enclosure(id, a.terms)?)
        }
        (None, Some(s)) => zeta_enclosure(s, a.terms).map_err(|e| match e {
            BoundsError::UnsupportedOrder(_) => Failure::usage(e.to_string(), "--s"),
            other => other.into(),
        }),
        (None, None) => Err(Failure::Usage {
            msg: "one of --s or --constant is required".into(),
            flag: None,
        }),
    }
}

/// 1-based index of the token after `flag` (or of `--flag=value`) in argv,
/// or one past the end when the flag is absent.
fn token_position(argv: &[String], flag: &str) -> usize {
    argv.iter()
        .enumerate()
        .skip(1)
        .find_map(|(i, t)| {
            if t == flag {
                Some((i + 1).min(argv.len() - 1))
            } else if t.starts_with(&format!("{flag}=")) {
                Some(i)
            } else {
                None
            }
        })
        .unwrap_or(argv.len())
}

fn clap_position(argv: &[String], err: &clap::Error) -> usize {
    let text = |kind| match err.get(kind) {
        Some(ContextValue::String(s)) => Some(s.clone()),
        _ => None,
    };
    if let Some(value) = text(ContextKind::InvalidValue) {
        if let Some(i) = argv.iter().skip(1).position(|t| *t == value || t.ends_with(&format!("={value}"))) {
            return i + 1;
        }
    }
    if let Some(arg) = text(ContextKind::InvalidArg) {
        let flag = arg.split_whitespace().next().unwrap_or_default().to_string();
        if let Some(i) = argv.iter().skip(1).position(|t| *t == flag || t.starts_with(&format!("{flag}="))) {
            let i = i + 1;
            // invalid values point at the value, unknown flags at the flag
            return if err.kind() == ErrorKind::UnknownArgument { i } else { (i + 1).min(argv.len() - 1) };
        }
    }
    argv.len()
}

fn usage_line(msg: &str, position: usize, argv: &[String]) -> String {
    let token = argv.get(position).map_or("end of input".to_string(), |t| format!("{t:?}"));
    format!("recipsym: usage error at argument {position} ({token}): {msg}")
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help, --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = match (e.kind(), e.get(ContextKind::InvalidArg)) {
                (ErrorKind::MissingRequiredArgument, Some(ContextValue::Strings(args))) => {
                    format!("missing required argument {}", args.join(", "))
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or_default();
                    first.strip_prefix("error: ").unwrap_or(first).to_string()
                }
            };
            eprintln!("{}", usage_line(&msg, clap_position(&argv, &e), &argv));
            return ExitCode::from(2);
        }
    };
    let out_path = match &cli.command {
        Command::Compute(a) => &a.output.out,
        Command::Table(a) => &a.output.out,
        Command::Certify(a) => &a.output.out,
        Command::Zeta(a) => &a.output.out,
        Command::Sweep(a) => &a.output.out,
        Command::Prior(a) => &a.output.out,
        Command::Explore(a) => &a.output.out,
    };
    match run(&cli.command) {
        Ok(Emit { body, code }) => {
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &body) {
                        eprintln!("recipsym: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(code)
        }
        Err(Failure::Usage { msg, flag }) => {
            let position = flag.map_or(argv.len(), |f| token_position(&argv, f));
            eprintln!("{}", usage_line(&msg, position, &argv));
            ExitCode::from(2)
        }
        Err(Failure::Hypothesis(i)) => {
            eprintln!("recipsym: hypothesis violated: f({i}) = 0");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("recipsym: {msg}");
            ExitCode::from(2)
        }
    }
}
