//! The `logdpp` command line: CSV reports of exact, numerical, sampled and
//! asymptotic energies.
//!
//! Exit codes: 0 success, 1 failed verification or numerical failure,
//! 2 bad arguments, 3 I/O failure. `LOGDPP_THREADS` caps the worker count.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closedform;
use crate::dpp::{self, DppSampler};
use crate::error::Error;
use crate::fekete;
use crate::orthopoly::GegenbauerParam;
use crate::quadrature;
use crate::report::{checks_to_csv, Method, Quantity, Report, ReportRow};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_ARGS: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Largest number of λ values accepted by `--grid`.
const MAX_GRID_POINTS: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "logdpp", version, about = "Logarithmic energy of Fekete points and Gegenbauer projection processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write 0 in the runtime column, for reproducible files.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Quad,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Lemmas,
    Kernels,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy of Fekete points against the exact and asymptotic minimum.
    Fekete {
        /// Comma-separated point counts, each at least 2.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Expected energy of the (n+1)-point projection process and its parts.
    Dpp {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Kernel degree; the process has n + 1 points.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Quadrature tolerance; 1e-7 for n <= 20, else 1e-5.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Expected energy over a grid of λ, with the minimal energy for reference.
    Sweep {
        /// `start:stop:step`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Check every closed form against an independent numerical route.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    BadArgs(String),
    Numeric(String),
    Io(String),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ToleranceNotReached { .. } | Error::NegativeConditionalDensity { .. } => {
                Failure::Numeric(e.to_string())
            }
            _ => Failure::BadArgs(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Fekete { n, output } => cmd_fekete(&n, &output),
        Command::Dpp {
            lambda,
            n,
            mode,
            samples,
            seed,
            tol,
            output,
        } => cmd_dpp(lambda, n, mode, samples, seed, tol, &output),
        Command::Sweep { grid, n, tol, output } => cmd_sweep(&grid, n, tol, &output),
        Command::Verify { suite, out } => cmd_verify(suite, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::BadArgs(msg)) => {
            eprintln!("error: {msg}");
            EXIT_BAD_ARGS
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            EXIT_VERIFY_FAILED
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_IO
        }
        Err(Failure::Verify(count)) => {
            eprintln!("{count} check(s) failed");
            EXIT_VERIFY_FAILED
        }
    }
}

fn configure_threads() {
    if let Some(threads) = std::env::var("LOGDPP_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        // fails harmlessly if the pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn emit(mut report: Report, output: &Output) -> CmdResult {
    report.sort();
    if output.no_timing {
        report.clear_timing();
    }
    write_output(output.out.as_ref(), &report.to_csv())
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn cmd_fekete(n_list: &[usize], output: &Output) -> CmdResult {
    if let Some(&bad) = n_list.iter().find(|&&n| n < 2) {
        return Err(Failure::BadArgs(format!("--n must be at least 2, got {bad}")));
    }
    let mut report = Report::default();
    for &n in n_list {
        let start = Instant::now();
        let direct = fekete::log_energy(&fekete::fekete_points(n)?)?;
        let direct_ms = elapsed_ms(start);
        let start = Instant::now();
        let exact = fekete::epsilon_exact(n)?;
        let exact_ms = elapsed_ms(start);
        let asym = fekete::epsilon_asymptotic(n)?;
        for (method, value, runtime_ms) in [
            (Method::Fekete, direct, direct_ms),
            (Method::EpsilonExact, exact, exact_ms),
            (Method::EpsilonAsym, asym, 0),
        ] {
            report.push(ReportRow {
                method,
                quantity: Quantity::Energy,
                lambda: None,
                n_points: n,
                value,
                error: None,
                runtime_ms,
            });
        }
    }
    emit(report, output)
}

#[allow(clippy::too_many_arguments)]
fn cmd_dpp(
    lambda: f64,
    n: usize,
    mode: Mode,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
    output: &Output,
) -> CmdResult {
    GegenbauerParam::new(lambda)?;
    let n_points = n + 1;
    let row = |method, quantity, value, error, runtime_ms| ReportRow {
        method,
        quantity,
        lambda: Some(lambda),
        n_points,
        value,
        error,
        runtime_ms,
    };
    let mut report = Report::default();
    match mode {
        Mode::Closed => {
            let start = Instant::now();
            if lambda == 0.0 {
                if n < 1 {
                    return Err(Failure::BadArgs("closed mode needs --n >= 1".into()));
                }
                let energy = closedform::e0_exact(n_points)?;
                let l1 = closedform::l1_cheb(n);
                let l2 = closedform::l2_cheb(n)?;
                let l3 = closedform::l3_exact(0.0, n)?;
                let ms = elapsed_ms(start);
                report.push(row(Method::ClosedForm, Quantity::Energy, energy, None, ms));
                report.push(row(Method::ClosedForm, Quantity::L1, l1, None, ms));
                report.push(row(Method::ClosedForm, Quantity::L2, l2, None, ms));
                report.push(row(Method::ClosedForm, Quantity::L3, l3, None, ms));
            } else {
                let l3 = closedform::l3_exact(lambda, n)?;
                report.push(row(Method::ClosedForm, Quantity::L3, l3, None, elapsed_ms(start)));
            }
        }
        Mode::Quad => {
            let tol = tol.unwrap_or_else(|| quadrature::default_tol(n));
            let start = Instant::now();
            let l1 = quadrature::integrate_l1(lambda, n, tol)?;
            let l1_ms = elapsed_ms(start);
            let start = Instant::now();
            let l2 = quadrature::integrate_l2(lambda, n, tol)?;
            let l2_ms = elapsed_ms(start);
            let start = Instant::now();
            let l3 = quadrature::integrate_l3(lambda, n, tol)?;
            let l3_ms = elapsed_ms(start);
            report.push(row(
                Method::Quadrature,
                Quantity::Energy,
                l1.value - l2.value,
                Some(l1.error_estimate + l2.error_estimate),
                l1_ms + l2_ms,
            ));
            report.push(row(Method::Quadrature, Quantity::L1, l1.value, Some(l1.error_estimate), l1_ms));
            report.push(row(Method::Quadrature, Quantity::L2, l2.value, Some(l2.error_estimate), l2_ms));
            report.push(row(Method::Quadrature, Quantity::L3, l3.value, Some(l3.error_estimate), l3_ms));
        }
        Mode::Mc => {
            if samples < 2 {
                return Err(Failure::BadArgs("--samples must be at least 2".into()));
            }
            if n < 1 {
                return Err(Failure::BadArgs("energy needs --n >= 1".into()));
            }
            let start = Instant::now();
            let sampler = DppSampler::new(lambda, n)?;
            let est = dpp::mc_expected_energy(&sampler, samples, seed)?;
            report.push(row(
                Method::MonteCarlo,
                Quantity::Energy,
                est.mean,
                Some(est.std_error),
                elapsed_ms(start),
            ));
        }
    }
    emit(report, output)
}

/// `start:stop:step` to the inclusive list `start, start + step, …`.
fn parse_grid(spec: &str) -> std::result::Result<Vec<f64>, Failure> {
    let bad = || Failure::BadArgs(format!("--grid must look like start:stop:step, got {spec:?}"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite()) || stop < start {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(Failure::BadArgs(format!("--grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn cmd_sweep(grid: &str, n: usize, tol: Option<f64>, output: &Output) -> CmdResult {
    let lambdas = parse_grid(grid)?;
    for &lambda in &lambdas {
        GegenbauerParam::new(lambda)?;
    }
    if n < 1 {
        return Err(Failure::BadArgs("sweep needs --n >= 1".into()));
    }
    let tol = tol.unwrap_or_else(|| quadrature::default_tol(n));
    let mut report = Report::default();
    let start = Instant::now();
    let minimum = fekete::epsilon_exact(n + 1)?;
    report.push(ReportRow {
        method: Method::EpsilonExact,
        quantity: Quantity::Energy,
        lambda: None,
        n_points: n + 1,
        value: minimum,
        error: None,
        runtime_ms: elapsed_ms(start),
    });
    for lambda in lambdas {
        let start = Instant::now();
        let e = quadrature::expected_energy_numeric(lambda, n, tol)?;
        report.push(ReportRow {
            method: Method::Quadrature,
            quantity: Quantity::Energy,
            lambda: Some(lambda),
            n_points: n + 1,
            value: e.value,
            error: Some(e.error_estimate),
            runtime_ms: elapsed_ms(start),
        });
    }
    emit(report, output)
}

fn cmd_verify(suite: SuiteArg, out: Option<PathBuf>) -> CmdResult {
    let suite = match suite {
        SuiteArg::Lemmas => Suite::Lemmas,
        SuiteArg::Kernels => Suite::Kernels,
        SuiteArg::All => Suite::All,
    };
    let rows = verify::run_suite(suite)?;
    write_output(out.as_ref(), &checks_to_csv(&rows))?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        Err(Failure::Verify(failed))
    } else {
        Ok(())
    }
}
