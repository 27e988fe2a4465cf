//! Command-line front end. All results go to stdout as JSON tagged
//! `"schema": "rao-spacing/1"`; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 statistical-computation failure, 2 usage error.

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::moments::{build_coefficients, cumulant_set, moment_set};
use crate::sim::{run_experiment, Alternative, DecisionMethod, ExperimentConfig};
use crate::spacings::{parse_angle_file, AngleSample, AngleUnit};
use crate::{exact, gramcharlier, uniformity_test, Method, MethodChoice};

pub const SCHEMA: &str = "rao-spacing/1";

const EXIT_OK: i32 = 0;
const EXIT_STAT: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(name = "rao", about = "Rao's spacing test for circular uniformity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    Deg,
    Rad,
}

impl From<UnitArg> for AngleUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Deg => AngleUnit::Degrees,
            UnitArg::Rad => AngleUnit::Radians,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Gc,
    Exact,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Gc => MethodChoice::GramCharlier,
            MethodArg::Exact => MethodChoice::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AltArg {
    Uniform,
    Vonmises,
}

#[derive(Args)]
struct TestArgs {
    /// Text file, one angle per line; blank lines and # comments ignored
    #[arg(long)]
    file: String,
    #[arg(long, value_enum, default_value = "deg")]
    unit: UnitArg,
    /// Gram-Charlier truncation order
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
}

#[derive(Args)]
struct CdfArgs {
    #[arg(long)]
    n: usize,
    /// Statistic value at which to evaluate the CDF
    #[arg(long)]
    t: f64,
    #[arg(long, value_enum, default_value = "deg")]
    unit: UnitArg,
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
}

#[derive(Args)]
struct CritvalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 10)]
    order: usize,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    order: usize,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    reps: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "uniform")]
    alt: AltArg,
    /// von Mises mean direction, radians
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    /// von Mises concentration
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reject on statistic_deg > this instead of the Gram-Charlier P-value
    #[arg(long)]
    fixed_critval: Option<f64>,
    #[arg(long, default_value_t = 10)]
    order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Uniformity test on an angle file
    Test(TestArgs),
    /// Null CDF of the statistic at a point
    Cdf(CdfArgs),
    /// Critical value for a significance level
    Critval(CritvalArgs),
    /// Raw moments and cumulants of the null distribution
    Moments(MomentsArgs),
    /// Monte Carlo size/power experiment
    Simulate(SimulateArgs),
}

fn emit<T: Serialize>(payload: &T) -> i32 {
    match serde_json::to_string_pretty(payload) {
        Ok(text) => {
            println!("{text}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_STAT
        }
    }
}

fn check_order(order: usize) -> Result<(), String> {
    if (3..=10).contains(&order) {
        Ok(())
    } else {
        Err(format!("--order must be in 3..=10, got {order}"))
    }
}

fn check_alpha(alpha: f64) -> Result<(), String> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(format!("--alpha must be in (0, 1), got {alpha}"))
    }
}

fn run_test(args: &TestArgs) -> Result<i32, (i32, String)> {
    check_order(args.order).map_err(|m| (EXIT_USAGE, m))?;
    let text = fs::read_to_string(&args.file)
        .map_err(|e| (EXIT_USAGE, format!("cannot read {}: {e}", args.file)))?;
    let raw = parse_angle_file(&text).map_err(|m| (EXIT_USAGE, format!("{}: {m}", args.file)))?;
    let sample = AngleSample::ingest(&raw, args.unit.into())
        .map_err(|e| (EXIT_USAGE, e.to_string()))?;
    let result = uniformity_test(&sample, args.order, args.method.into())
        .map_err(|e| (EXIT_STAT, e.to_string()))?;
    Ok(emit(&json!({
        "schema": SCHEMA,
        "n": result.n,
        "statistic_deg": result.statistic_deg,
        "statistic_rad": result.statistic_rad,
        "p_value": result.p_value,
        "method": result.method,
        "order": result.truncation_order,
    })))
}

fn run_cdf(args: &CdfArgs) -> Result<i32, (i32, String)> {
    check_order(args.order).map_err(|m| (EXIT_USAGE, m))?;
    if args.n < 2 {
        return Err((EXIT_USAGE, format!("--n must be >= 2, got {}", args.n)));
    }
    let t_rad = match args.unit {
        UnitArg::Deg => args.t.to_radians(),
        UnitArg::Rad => args.t,
    };
    let method = MethodChoice::from(args.method);
    let resolved = match method {
        MethodChoice::Exact => Method::ExactQuadrature,
        MethodChoice::GramCharlier => Method::GramCharlier,
        MethodChoice::Auto => {
            if args.n < crate::SMALL_SAMPLE_THRESHOLD {
                Method::ExactQuadrature
            } else {
                Method::GramCharlier
            }
        }
    };
    let outside = t_rad < 0.0 || t_rad > crate::spacings::support_max(args.n);
    let value = match resolved {
        Method::GramCharlier => {
            let cumulants = cumulant_set(args.n, args.order).map_err(|e| (EXIT_STAT, e.to_string()))?;
            gramcharlier::cdf(args.n, t_rad, &cumulants)
        }
        Method::ExactQuadrature => {
            exact::exact_cdf(args.n, t_rad).map_err(|e| (EXIT_STAT, e.to_string()))?
        }
    };
    Ok(emit(&json!({
        "schema": SCHEMA,
        "n": args.n,
        "t_deg": t_rad.to_degrees(),
        "t_rad": t_rad,
        "cdf": value,
        "method": resolved,
        "order": args.order,
        "outside_support": outside,
    })))
}

fn run_critval(args: &CritvalArgs) -> Result<i32, (i32, String)> {
    check_order(args.order).map_err(|m| (EXIT_USAGE, m))?;
    check_alpha(args.alpha).map_err(|m| (EXIT_USAGE, m))?;
    if args.n < 2 {
        return Err((EXIT_USAGE, format!("--n must be >= 2, got {}", args.n)));
    }
    let cumulants = cumulant_set(args.n, args.order).map_err(|e| (EXIT_STAT, e.to_string()))?;
    let cv = gramcharlier::critical_value(args.n, args.alpha, &cumulants)
        .map_err(|e| (EXIT_STAT, e.to_string()))?;
    Ok(emit(&json!({
        "schema": SCHEMA,
        "n": args.n,
        "alpha": args.alpha,
        "critical_value_deg": cv,
    })))
}

fn run_moments(args: &MomentsArgs) -> Result<i32, (i32, String)> {
    check_order(args.order).map_err(|m| (EXIT_USAGE, m))?;
    if args.n < 2 {
        return Err((EXIT_USAGE, format!("--n must be >= 2, got {}", args.n)));
    }
    let table = build_coefficients(args.order).map_err(|e| (EXIT_STAT, e.to_string()))?;
    let moments =
        moment_set(args.n, args.order, &table).map_err(|e| (EXIT_STAT, e.to_string()))?;
    let cumulants = cumulant_set(args.n, args.order).map_err(|e| (EXIT_STAT, e.to_string()))?;
    Ok(emit(&json!({
        "schema": SCHEMA,
        "n": args.n,
        "order": args.order,
        "raw_moments": moments.raw_moments,
        "raw_cumulants": cumulants.raw_cumulants,
        "standardized_cumulants": cumulants.standardized_cumulants,
    })))
}

fn run_simulate(args: &SimulateArgs) -> Result<i32, (i32, String)> {
    check_order(args.order).map_err(|m| (EXIT_USAGE, m))?;
    check_alpha(args.alpha).map_err(|m| (EXIT_USAGE, m))?;
    if args.n < 2 {
        return Err((EXIT_USAGE, format!("--n must be >= 2, got {}", args.n)));
    }
    if args.reps < 1 {
        return Err((EXIT_USAGE, "--reps must be >= 1".into()));
    }
    if args.kappa < 0.0 {
        return Err((EXIT_USAGE, format!("--kappa must be >= 0, got {}", args.kappa)));
    }
    let config = ExperimentConfig {
        n: args.n,
        reps: args.reps,
        alpha: args.alpha,
        alternative: match args.alt {
            AltArg::Uniform => Alternative::Uniform,
            AltArg::Vonmises => Alternative::VonMises { mu: args.mu, kappa: args.kappa },
        },
        seed: args.seed,
        method: match args.fixed_critval {
            Some(deg) => DecisionMethod::FixedCriticalValue(deg),
            None => DecisionMethod::GramCharlier,
        },
        truncation_order: args.order,
    };
    let report = run_experiment(&config).map_err(|e| (EXIT_STAT, e.to_string()))?;
    Ok(emit(&json!({
        "schema": SCHEMA,
        "n": args.n,
        "reps": report.reps,
        "alpha": args.alpha,
        "seed": args.seed,
        "accept": report.accept,
        "reject": report.reject,
        "rejection_rate": report.rejection_rate,
        "wilson_ci_95": [report.wilson_ci_95.0, report.wilson_ci_95.1],
    })))
}

/// Parse and dispatch. Returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version as "errors" with success status
            let code = if e.exit_code() == 0 { EXIT_OK } else { EXIT_USAGE };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Test(args) => run_test(args),
        Command::Cdf(args) => run_cdf(args),
        Command::Critval(args) => run_critval(args),
        Command::Moments(args) => run_moments(args),
        Command::Simulate(args) => run_simulate(args),
    };
    match outcome {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            code
        }
    }
}
