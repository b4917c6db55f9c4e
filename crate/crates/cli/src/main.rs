use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fracspline_cli::config::{self, ConfigMap};
use fracspline_cli::formats::{grid_table, write_atomic, ColumnTable, DeltaExpansionJson};
use fracspline_cli::parallel;
use fracspline_cli::verify::{run_suite, SuiteConfig, SuiteSelection};
use fracspline_core::distributional::{delta_coeffs, kernel_kalpha, shifted_coeffs};
use fracspline_core::spectral::fourier_symbol_frac;
use fracspline_core::splines::{
    bspline_frac, bspline_int, frac_spline_poly, BsplineMethod, GridFunction, GridValues,
};

#[derive(Parser)]
#[command(
    name = "fracspline",
    version,
    about = "Fractional B-spline evaluation, Fourier symbols, delta expansions, and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a spline family on a uniform grid and write CSV
    Eval(EvalArgs),
    /// Tabulate the fractional Fourier symbol as omega,re,im CSV
    Symbol(SymbolArgs),
    /// Dump delta-expansion coefficients as JSON
    Delta(DeltaArgs),
    /// Run the identity-verification suite and report verdicts
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Integer-order B-spline B_n
    Spline,
    /// Fractional B-spline B_alpha (alpha > 1)
    Fracspline,
    /// Fractional spline polynomials S_n^(alpha) (alpha > 0)
    Polyspline,
    /// Convolution kernel K_alpha
    Kernel,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    family: Family,
    /// Integer order(s), comma separated (spline family)
    #[arg(long)]
    n: Option<String>,
    /// Order token(s): decimal, `pi`, or `sqrt5`; comma separated
    #[arg(long)]
    alpha: Option<String>,
    /// Largest polynomial index for polyspline columns `s0..s{nmax}`
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    x0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x1: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file merged under the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SymbolArgs {
    /// Order token: decimal, `pi`, or `sqrt5`
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    omega0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega1: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct DeltaArgs {
    #[arg(long)]
    alpha: Option<String>,
    /// Shift of the spline argument
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Largest delta-derivative index
    #[arg(long)]
    order: Option<usize>,
    /// Emit the expansion re-centered on delta^(m)(t - x)
    #[arg(long)]
    shifted: bool,
    /// Output JSON path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Combinatorics,
    Spectral,
    Distributional,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Sweep bound for the order n
    #[arg(long)]
    max_n: Option<usize>,
    /// Sweep bound for the index m
    #[arg(long)]
    max_m: Option<usize>,
    /// Write the JSON report here (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

enum CliError {
    /// Invalid flags or values: exit 2.
    Usage(String),
    /// Filesystem problems: exit 3.
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn load_config(path: &Option<PathBuf>) -> Result<ConfigMap, CliError> {
    match path {
        Some(p) => config::load(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => Ok(BTreeMap::new()),
    }
}

fn merged<T: std::str::FromStr + Clone>(
    flag: &Option<T>,
    cfg: &ConfigMap,
    key: &str,
) -> Result<Option<T>, CliError> {
    config::merge(flag, cfg, key).map_err(CliError::Usage)
}

fn require<T>(v: Option<T>, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required value: {what}")))
}

/// Order tokens: decimals plus the literals `pi` and `sqrt5`.
fn parse_order_token(tok: &str) -> Result<f64, CliError> {
    match tok.trim() {
        "pi" => Ok(std::f64::consts::PI),
        "sqrt5" => Ok(5.0f64.sqrt()),
        t => t
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("cannot parse order token '{t}'"))),
    }
}

fn parse_order_list(raw: &str) -> Result<Vec<f64>, CliError> {
    let list: Result<Vec<f64>, CliError> = raw.split(',').map(parse_order_token).collect();
    let list = list?;
    if list.is_empty() {
        return usage("empty order list");
    }
    Ok(list)
}

fn parse_int_list(raw: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for tok in raw.split(',') {
        let n: u32 = tok
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse integer order '{tok}'")))?;
        if n < 1 {
            return usage("integer spline order starts at 1");
        }
        out.push(n);
    }
    Ok(out)
}

/// Uniform abscissas from x0 to x1 inclusive (within rounding of the step).
fn build_grid(x0: f64, x1: f64, step: f64) -> Result<Vec<f64>, CliError> {
    // partial_cmp keeps NaN inputs on the error path
    if x1.partial_cmp(&x0) != Some(std::cmp::Ordering::Greater) {
        return usage("x1 must exceed x0");
    }
    if step.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return usage("step must be positive");
    }
    let raw = (x1 - x0) / step;
    let rounded = raw.round();
    let count = if (raw - rounded).abs() < 1e-9 * rounded.max(1.0) {
        rounded as usize + 1
    } else {
        raw.floor() as usize + 1
    };
    if count > 50_000_000 {
        return usage("grid would exceed 50e6 rows; enlarge the step");
    }
    Ok((0..count).map(|i| x0 + step * i as f64).collect())
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("FRACSPLINE_THREADS") {
        Ok(raw) => {
            let n: usize = raw.parse().map_err(|_| {
                CliError::Usage(format!(
                    "FRACSPLINE_THREADS must be a positive integer, got '{raw}'"
                ))
            })?;
            if n == 0 {
                return usage("FRACSPLINE_THREADS must be at least 1");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    write_atomic(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let x0 = require(merged(&args.x0, &cfg, "x0")?, "--x0")?;
    let x1 = require(merged(&args.x1, &cfg, "x1")?, "--x1")?;
    let step = require(merged(&args.step, &cfg, "step")?, "--step")?;
    let out = require(merged(&args.out, &cfg, "out")?, "--out")?;
    let xs = build_grid(x0, x1, step)?;
    let threads = parallel::worker_count(thread_cap()?);

    let mut table = ColumnTable::new("x", xs.clone());
    match args.family {
        Family::Spline => {
            let raw = require(merged(&args.n, &cfg, "n")?, "--n")?;
            for n in parse_int_list(&raw)? {
                // recursion route: stable at any order
                let vals = parallel::map_f64(&xs, threads, |x| {
                    bspline_int(n, x, BsplineMethod::Recursion)
                });
                table.push_column(&format!("n={n}"), vals);
            }
        }
        Family::Fracspline => {
            let raw = require(merged(&args.alpha, &cfg, "alpha")?, "--alpha")?;
            for alpha in parse_order_list(&raw)? {
                if alpha <= 1.0 {
                    return usage("fracspline needs alpha > 1");
                }
                let vals = parallel::map_f64(&xs, threads, |x| bspline_frac(alpha, x));
                table.push_column(&format!("alpha={alpha}"), vals);
            }
        }
        Family::Polyspline => {
            let raw = require(merged(&args.alpha, &cfg, "alpha")?, "--alpha")?;
            let orders = parse_order_list(&raw)?;
            if orders.len() != 1 {
                return usage("polyspline takes a single alpha");
            }
            let alpha = orders[0];
            if alpha <= 0.0 {
                return usage("polyspline needs alpha > 0");
            }
            let nmax = merged(&args.nmax, &cfg, "nmax")?.unwrap_or(3);
            for n in 0..=nmax {
                let vals = parallel::map_f64(&xs, threads, |x| frac_spline_poly(n, alpha, x));
                table.push_column(&format!("s{n}"), vals);
            }
        }
        Family::Kernel => {
            let raw = require(merged(&args.alpha, &cfg, "alpha")?, "--alpha")?;
            for alpha in parse_order_list(&raw)? {
                if alpha <= 0.0 {
                    return usage("kernel needs alpha > 0");
                }
                let vals = parallel::map_f64(&xs, threads, |x| kernel_kalpha(alpha, x));
                table.push_column(&format!("alpha={alpha}"), vals);
            }
        }
    }
    write_out(&out, &table.to_csv())
}

fn cmd_symbol(args: &SymbolArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let alpha_raw = require(merged(&args.alpha, &cfg, "alpha")?, "--alpha")?;
    let alpha = parse_order_token(&alpha_raw)?;
    if alpha <= 0.0 {
        return usage("symbol needs alpha > 0");
    }
    let omega0 = require(merged(&args.omega0, &cfg, "omega0")?, "--omega0")?;
    let omega1 = require(merged(&args.omega1, &cfg, "omega1")?, "--omega1")?;
    let step = require(merged(&args.step, &cfg, "step")?, "--step")?;
    let out = require(merged(&args.out, &cfg, "out")?, "--out")?;
    let omegas = build_grid(omega0, omega1, step)?;
    let values: Vec<_> = omegas
        .iter()
        .map(|&w| fourier_symbol_frac(alpha, w))
        .collect();
    let grid = GridFunction::new(omega0, step, GridValues::Complex(values));
    write_out(&out, &grid_table(&grid, "omega").to_csv())
}

fn cmd_delta(args: &DeltaArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let alpha_raw = require(merged(&args.alpha, &cfg, "alpha")?, "--alpha")?;
    let alpha = parse_order_token(&alpha_raw)?;
    if alpha <= 1.0 {
        return usage("delta expansion needs alpha > 1");
    }
    let x = merged(&args.x, &cfg, "x")?.unwrap_or(0.0);
    let order = require(merged(&args.order, &cfg, "order")?, "--order")?;
    if order > 4096 {
        return usage("delta expansion order capped at 4096");
    }
    let expansion = delta_coeffs(alpha, x, order);
    let expansion = if args.shifted {
        shifted_coeffs(&expansion, x, order)
    } else {
        expansion
    };
    let json = DeltaExpansionJson::from(&expansion).to_json();
    match merged(&args.out, &cfg, "out")? {
        Some(path) => write_out(&path, &json),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    let cfg = load_config(&args.config)?;
    let mut suite_cfg = SuiteConfig {
        suite: match args.suite {
            SuiteArg::All => SuiteSelection::All,
            SuiteArg::Combinatorics => SuiteSelection::Combinatorics,
            SuiteArg::Spectral => SuiteSelection::Spectral,
            SuiteArg::Distributional => SuiteSelection::Distributional,
        },
        ..Default::default()
    };
    if let Some(n) = merged(&args.max_n, &cfg, "max-n")? {
        suite_cfg.max_n = n.max(1);
    }
    if let Some(m) = merged(&args.max_m, &cfg, "max-m")? {
        suite_cfg.max_m = m;
    }
    let report = run_suite(&suite_cfg);

    let out = merged(&args.out, &cfg, "out")?;
    let json = report.to_json();
    let summary_to_stdout = out.is_some();
    if let Some(path) = out {
        write_out(&path, &json)?;
    }
    let sink: Box<dyn Fn(String)> = if summary_to_stdout {
        Box::new(|line| println!("{line}"))
    } else {
        Box::new(|line| eprintln!("{line}"))
    };
    for (id, worst) in &report.summary.worst_residual {
        sink(format!("identity {id}: worst residual {worst:.3e}"));
    }
    for (status, count) in &report.summary.counts {
        sink(format!("status {status}: {count}"));
    }
    sink(format!(
        "total {} reports, established failures: {}",
        report.summary.total, report.summary.established_failures
    ));
    if !summary_to_stdout {
        println!("{json}");
    }
    Ok(if report.summary.established_failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args).map(|()| ExitCode::SUCCESS),
        Command::Symbol(args) => cmd_symbol(args).map(|()| ExitCode::SUCCESS),
        Command::Delta(args) => cmd_delta(args).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Io(msg) => eprintln!("io error: {msg}"),
            }
            e.exit_code()
        }
    }
}
