//! Command layer of the `tlhardy` binary. [`execute`] takes the argument
//! vector and returns the exit code and both output streams, so the whole
//! surface can be tested in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tlhardy_core::{
    hardy_ratio, phi_extended, ratio_sequence, sharp_constant, validate, Domain, HardyParams,
    HardyRatioResult, KernelSpec, PhiMethod, RatioSeries, ValidationReport, DEFAULT_TOL,
};

pub mod error;
pub mod profile_file;
pub mod sweep;

pub use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "tlhardy", version, about = "Sharp constants of weighted fractional Hardy inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the sharp constant
    Constant {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Evaluate the angular kernel Φ(t)
    Phi {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Check the parameter assumptions
    Validate {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Evaluate both sides of the inequality for a profile file
    Verify {
        /// Two-column `r u(r)` file
        #[arg(long)]
        profile: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Hardy ratios of the extremal family
    Extremal {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
        n_list: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Evaluate the constant over a grid described by a JSON spec
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the `out` entry of the spec
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = DomainArg::Whole)]
    domain: DomainArg,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DomainArg {
    Whole,
    Half,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum MethodArg {
    Direct,
    Hypergeometric,
    Auto,
}

impl From<ParamArgs> for HardyParams {
    fn from(a: ParamArgs) -> Self {
        let domain = match a.domain {
            DomainArg::Whole => Domain::WholeSpace,
            DomainArg::Half => Domain::HalfSpace,
        };
        HardyParams { d: a.d, s: a.s, p: a.p, q: a.q, alpha: a.alpha, beta: a.beta, domain }
    }
}

impl From<MethodArg> for PhiMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => PhiMethod::Direct,
            MethodArg::Hypergeometric => PhiMethod::Hypergeometric,
            MethodArg::Auto => PhiMethod::Auto,
        }
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
pub struct ConstantDoc {
    pub params: HardyParams,
    pub valid: bool,
    pub delta: f64,
    pub constant: f64,
    pub abs_error_estimate: f64,
    pub converged: bool,
    pub sharpness_proven: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct PhiDoc {
    pub d: u32,
    pub s: f64,
    pub p: f64,
    pub t: f64,
    pub value: f64,
    pub method: PhiMethod,
}

#[derive(Debug, Serialize)]
pub struct ValidateDoc {
    pub params: HardyParams,
    #[serde(flatten)]
    pub report: ValidationReport,
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub params: HardyParams,
    pub profile: String,
    #[serde(flatten)]
    pub result: HardyRatioResult,
}

#[derive(Debug, Serialize)]
pub struct ExtremalDoc {
    pub params: HardyParams,
    #[serde(flatten)]
    pub series: RatioSeries,
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    Ok(text)
}

/// Validation gate for single-point commands: an invalid set prints its
/// report and exits 2.
fn require_valid(params: &HardyParams) -> Result<ValidationReport, CliError> {
    let report = validate(params);
    if report.valid {
        return Ok(report);
    }
    let message = report
        .violations
        .iter()
        .map(|v| v.constraint.as_str())
        .collect::<Vec<_>>()
        .join(", ");
    let document = to_json(&ValidateDoc { params: *params, report })?;
    Err(CliError::Validation { message, document: Some(document) })
}

fn run(command: Command) -> Result<(String, String), CliError> {
    match command {
        Command::Constant { params, tol } => {
            let params = HardyParams::from(params);
            let report = require_valid(&params)?;
            let result = sharp_constant(&params, tol)?;
            let doc = ConstantDoc {
                params,
                valid: true,
                delta: report.delta,
                constant: result.value,
                abs_error_estimate: result.abs_error_estimate,
                converged: result.converged,
                sharpness_proven: report.sharpness_proven(),
                warnings: report.warnings,
            };
            Ok((to_json(&doc)?, String::new()))
        }
        Command::Phi { d, s, p, t, method } => {
            let spec = KernelSpec::new(d, s, p)?;
            let method = PhiMethod::from(method);
            let value = if (0.0..1.0).contains(&t) {
                tlhardy_core::phi(spec, t, method)?
            } else {
                phi_extended(spec, t)?
            };
            Ok((to_json(&PhiDoc { d, s, p, t, value, method })?, String::new()))
        }
        Command::Validate { params } => {
            let params = HardyParams::from(params);
            require_valid(&params)?;
            let report = validate(&params);
            Ok((to_json(&ValidateDoc { params, report })?, String::new()))
        }
        Command::Verify { profile, params, tol } => {
            let params = HardyParams::from(params);
            require_valid(&params)?;
            let u = profile_file::read_profile(&profile)?;
            let result = hardy_ratio(&u, &params, tol)?;
            let converged = result.lhs_seminorm.converged && result.rhs_norm.converged;
            let doc = to_json(&VerifyDoc {
                params,
                profile: profile.display().to_string(),
                result,
            })?;
            if !converged {
                return Err(CliError::Convergence {
                    what: format!("hardy ratio for {}", profile.display()),
                    document: Some(doc),
                });
            }
            Ok((doc, String::new()))
        }
        Command::Extremal { params, n_list, tol } => {
            let params = HardyParams::from(params);
            require_valid(&params)?;
            let series = ratio_sequence(&params, &n_list, tol)?;
            let mut notes = String::new();
            if !series.monotone {
                notes.push_str("warning: ratios are not monotone in n\n");
            }
            if !series.margins_nonnegative {
                notes.push_str("warning: a ratio fell below the sharp constant\n");
            }
            Ok((to_json(&ExtremalDoc { params, series })?, notes))
        }
        Command::Sweep { spec, out } => {
            let (rows, failed, path) = sweep::run(&spec, out.as_deref())?;
            Ok((String::new(), format!("wrote {rows} rows to {path} ({failed} without a constant)\n")))
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
///
/// Exit codes: 0 success, 1 usage or input error, 2 parameters rejected,
/// 3 quadrature did not converge.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(cli.command) {
        Ok((stdout, stderr)) => Outcome { code: 0, stdout, stderr },
        Err(e) => {
            let code = e.exit_code();
            let stdout = match &e {
                CliError::Validation { document: Some(doc), .. }
                | CliError::Convergence { document: Some(doc), .. } => doc.clone(),
                _ => String::new(),
            };
            Outcome { code, stdout, stderr: format!("error: {e}\n") }
        }
    }
}
