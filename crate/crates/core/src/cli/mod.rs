//! Command-line front end: `decompose`, `verify` and `eval`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 verification failure.

mod output;
pub mod suites;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

pub use output::{CoefficientJson, DecompositionJson};
pub use suites::{run_suite, CaseLine, Status, SuiteReport, SUITES};

use crate::boxspline::{dh_spec, BoxSplineEvaluator};
use crate::charalg::character_eval;
use crate::error::Error;
use crate::mittag::{decompose, default_radius, eval_lattice_sum_with_error, pole_sum_f64, MLProblem};
use crate::rational::{parse_rational, Q};
use crate::rootsys::{CenterClass, CoweightVector, RootSystem, Weight, DEFAULT_RANK_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "weylmittag", version, about = "Character decompositions of Mittag-Leffler lattice sums over root systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose F_{k,xi} into irreducible characters.
    Decompose(JobArgs),
    /// Run a verification suite.
    Verify(JobArgs),
    /// Evaluate a lattice sum, character sum, box spline or pole sum at one point.
    Eval(JobArgs),
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    /// Root system type such as A2, B3, G2.
    #[arg(long = "type")]
    pub type_: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    /// `trivial` or comma-separated m-vector such as 1/3,2/3.
    #[arg(long)]
    pub class: Option<String>,
    /// Comma-separated coordinates (coroot basis; weight basis for `--mode boxspline`).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Truncation radius in coroot coordinates.
    #[arg(long = "R")]
    pub radius: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub suite: Option<String>,
    /// lattice, characters, boxspline or mittag.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long = "rank-cap", default_value_t = DEFAULT_RANK_CAP)]
    pub rank_cap: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => CliError::Verification(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parsed and validated configuration shared by all subcommands.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub rs: Option<RootSystem>,
    pub k: Option<u32>,
    pub class: Option<CenterClass>,
    pub x: Option<Vec<Q>>,
    pub x_raw: Option<String>,
    pub radius: Option<u64>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub format: Format,
    pub suite: Option<String>,
    pub mode: Option<String>,
    pub rank_cap: usize,
}

fn parse_list(s: &str) -> CliResult<Vec<Q>> {
    s.split(',').map(|p| parse_rational(p).map_err(|e| CliError::Usage(e.to_string()))).collect()
}

impl JobConfig {
    pub fn from_args(args: &JobArgs, default_format: Format) -> CliResult<Self> {
        let rs = match &args.type_ {
            Some(t) => {
                let rs = RootSystem::new(t)?.with_rank_cap(args.rank_cap);
                if rs.rank() > args.rank_cap {
                    return Err(Error::RankCap { rank: rs.rank(), cap: args.rank_cap }.into());
                }
                Some(rs)
            }
            None => None,
        };
        if args.k == Some(0) {
            return Err(CliError::Usage("--k must be at least 1".into()));
        }
        let class = match (&args.class, &rs) {
            (None, _) => None,
            (Some(_), None) => return Err(CliError::Usage("--class needs --type".into())),
            (Some(c), Some(rs)) if c.trim().eq_ignore_ascii_case("trivial") => Some(CenterClass::trivial(rs.rank())),
            (Some(c), Some(rs)) => {
                let class = CenterClass::new(parse_list(c)?);
                rs.validate_class(&class)?;
                Some(class)
            }
        };
        let x = match (&args.x, &rs) {
            (None, _) => None,
            (Some(s), rs) => {
                let v = parse_list(s)?;
                if let Some(rs) = rs {
                    if v.len() != rs.rank() {
                        return Err(Error::Dimension { expected: rs.rank(), got: v.len() }.into());
                    }
                }
                Some(v)
            }
        };
        if args.radius == Some(0) {
            return Err(CliError::Usage("--R must be at least 1".into()));
        }
        if let Some(t) = args.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
            }
        }
        Ok(Self {
            rs,
            k: args.k,
            class,
            x,
            x_raw: args.x.clone(),
            radius: args.radius,
            tol: args.tol,
            seed: args.seed,
            format: args.format.unwrap_or(default_format),
            suite: args.suite.clone(),
            mode: args.mode.clone(),
            rank_cap: args.rank_cap,
        })
    }

    fn require_rs(&self) -> CliResult<&RootSystem> {
        self.rs.as_ref().ok_or_else(|| CliError::Usage("--type is required".into()))
    }

    fn problem(&self) -> CliResult<MLProblem<'_>> {
        let rs = self.require_rs()?;
        let class = self.class.clone().unwrap_or_else(|| CenterClass::trivial(rs.rank()));
        Ok(MLProblem::new(rs, self.k.unwrap_or(1), class)?)
    }
}

/// Runs the CLI on `args` (including the program name), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Decompose(a) => JobConfig::from_args(a, Format::Json).and_then(|cfg| cmd_decompose(&cfg)),
        Command::Verify(a) => JobConfig::from_args(a, Format::Text).and_then(|cfg| cmd_verify(&cfg)),
        Command::Eval(a) => JobConfig::from_args(a, Format::Text).and_then(|cfg| cmd_eval(&cfg)),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "usage: weylmittag <decompose|verify|eval> [--type STR] [--k INT] [--class STR] [--x STR] [--R INT] [--tol DEC] [--seed INT] [--format json|csv|text] [--suite STR] [--mode STR] [--rank-cap INT]");
            EXIT_USAGE
        }
        Err(CliError::Verification(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_VERIFICATION
        }
    }
}

pub fn cmd_decompose(cfg: &JobConfig) -> CliResult<(String, i32)> {
    let p = cfg.problem()?;
    let dec = decompose(&p)?;
    let code = if dec.verified(p.rs) { EXIT_OK } else { EXIT_VERIFICATION };
    Ok((output::render_decomposition(&p, &dec, cfg.format), code))
}

pub fn cmd_verify(cfg: &JobConfig) -> CliResult<(String, i32)> {
    let suite = cfg.suite.as_deref().ok_or_else(|| CliError::Usage("--suite is required".into()))?;
    if !SUITES.contains(&suite) {
        return Err(CliError::Usage(format!("unknown suite {suite}; expected one of {}", SUITES.join(", "))));
    }
    let report = run_suite(suite, cfg)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFICATION };
    Ok((output::render_report(&report, cfg.format), code))
}

/// One evaluated quantity, ready for rendering.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalValue {
    Complex { value: Complex64, radius: Option<u64>, truncation_error: Option<f64> },
    Exact { value: Q, averaged: bool },
}

pub fn cmd_eval(cfg: &JobConfig) -> CliResult<(String, i32)> {
    let rs = cfg.require_rs()?;
    let x = cfg.x.clone().ok_or_else(|| CliError::Usage("--x is required".into()))?;
    let mode = cfg.mode.as_deref().unwrap_or("lattice");
    let k = cfg.k.unwrap_or(1);
    let value = match mode {
        "lattice" => {
            let p = cfg.problem()?;
            let radius = cfg.radius.unwrap_or_else(|| default_radius(rs, k));
            let (value, est) = eval_lattice_sum_with_error(&p, &CoweightVector::new(x.clone()), radius)?;
            EvalValue::Complex { value, radius: Some(radius), truncation_error: Some(est) }
        }
        "characters" => {
            let p = cfg.problem()?;
            let dec = decompose(&p)?;
            let value = character_eval(rs, &dec.combo, &CoweightVector::new(x.clone()));
            EvalValue::Complex { value, radius: None, truncation_error: None }
        }
        "boxspline" => {
            if cfg.x_raw.as_deref().is_some_and(|raw| raw.contains('.')) {
                return Err(CliError::Usage("boxspline mode needs exact fractions in --x".into()));
            }
            let spec = dh_spec(rs, k)?;
            let dv = BoxSplineEvaluator::new(&spec)?.eval(&Weight::new(x.clone()))?;
            EvalValue::Exact { value: dv.value, averaged: dv.averaged }
        }
        "mittag" => {
            let p = cfg.problem()?;
            let radius = cfg.radius.unwrap_or_else(|| default_radius(rs, k));
            let xf: Vec<f64> = CoweightVector::new(x.clone()).to_f64();
            let value = pole_sum_f64(&p, &xf, radius)?;
            let half = pole_sum_f64(&p, &xf, (radius / 2).max(1))?;
            EvalValue::Complex { value, radius: Some(radius), truncation_error: Some((value - half).norm()) }
        }
        other => {
            return Err(CliError::Usage(format!("unknown mode {other}; expected lattice, characters, boxspline or mittag")))
        }
    };
    Ok((output::render_eval(mode, &x, &value, cfg.format), EXIT_OK))
}
