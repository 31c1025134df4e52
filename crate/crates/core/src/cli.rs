//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails (comparison,
//! Monte Carlo z-score, non-converged evaluation, numerical breakdown),
//! 2 on usage or domain errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bernoulli::{format_rational, BernoulliTable};
use crate::distributions::{mc_moment, DistributionKind, DistributionSpec, RNG_ALGORITHM};
use crate::error::{Result, ZetaError};
use crate::output::{csv_rows, BernoulliRecord, Command, McRecord, OutputRecord, RouteRecord, CSV_HEADER, F17};
use crate::quadrature::QuadratureConfig;
use crate::routes::{compare_routes, default_route, evaluate, CompareOptions, FaultInjection, RouteConfig, RouteId, RouteResult};
use crate::series::SeriesConfig;

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest |z| accepted by `mc`.
pub const MC_Z_LIMIT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    /// Only for `table`.
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "zeta-routes", version, about = "Evaluate and cross-check the Riemann zeta function at positive real arguments")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Cmd,
}

fn parse_route(raw: &str) -> std::result::Result<RouteId, String> {
    raw.parse().map_err(|e: ZetaError| e.to_string())
}

fn parse_distribution(raw: &str) -> std::result::Result<DistributionKind, String> {
    raw.parse().map_err(|e: ZetaError| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Evaluate ζ(s) by one route
    Eval {
        #[arg(allow_negative_numbers = true)]
        s: f64,
        /// Route to use; defaults to Euler's closed form at even integers and the eta series elsewhere
        #[arg(long, value_parser = parse_route)]
        route: Option<RouteId>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Evaluate ζ(s) by every applicable route and check agreement
    Compare {
        #[arg(allow_negative_numbers = true)]
        s: f64,
        /// Allowed gap on top of the reported error bounds
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Comma-separated subset of routes
        #[arg(long, value_delimiter = ',', value_parser = parse_route)]
        routes: Vec<RouteId>,
        #[arg(long, hide = true, allow_negative_numbers = true)]
        inject_fault: Option<f64>,
        #[arg(long, hide = true, value_parser = parse_route, requires = "inject_fault")]
        fault_route: Option<RouteId>,
    },
    /// Print B_0..B_n as exact fractions
    Bernoulli { n_max: usize },
    /// Monte Carlo estimate of E X^k against its closed form
    Mc {
        #[arg(value_parser = parse_distribution)]
        dist: DistributionKind,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate several arguments
    Table {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        s: Vec<f64>,
        #[arg(long, value_parser = parse_route)]
        route: Option<RouteId>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

/// Exit status for an error.
pub fn exit_code(err: &ZetaError) -> i32 {
    match err {
        ZetaError::Domain { .. }
        | ZetaError::PoleProximity { .. }
        | ZetaError::Capacity { .. }
        | ZetaError::NoApplicableRoute { .. }
        | ZetaError::Config(_) => EXIT_USAGE,
        ZetaError::NonFinite { .. }
        | ZetaError::NonDecay { .. }
        | ZetaError::Consistency { .. }
        | ZetaError::Overflow(_) => EXIT_VERIFICATION,
    }
}

fn route_config(tol: f64) -> Result<RouteConfig> {
    let quadrature = QuadratureConfig::from_env()?.with_tol(tol);
    quadrature.validate()?;
    Ok(RouteConfig {
        quadrature,
        series: SeriesConfig::default().with_tol(tol),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_SUCCESS;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_error(e: std::io::Error) -> ZetaError {
    ZetaError::Config(format!("cannot write output: {e}"))
}

/// Runs a parsed command, writing records to `out`. Returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if cli.format == Format::Csv && !matches!(cli.command, Cmd::Table { .. }) {
        return Err(ZetaError::Config("--format csv is only available for table".into()));
    }
    match &cli.command {
        Cmd::Eval { s, route, tol } => cmd_eval(*s, *route, *tol, cli.format, out),
        Cmd::Compare {
            s,
            tol,
            routes,
            inject_fault,
            fault_route,
        } => {
            let fault = inject_fault.map(|offset| FaultInjection {
                route: *fault_route,
                offset,
            });
            cmd_compare(*s, *tol, routes, fault, cli.format, out)
        }
        Cmd::Bernoulli { n_max } => cmd_bernoulli(*n_max, cli.format, out),
        Cmd::Mc { dist, k, n, seed } => cmd_mc(*dist, *k, *n, *seed, cli.format, out),
        Cmd::Table { s, route, tol } => cmd_table(s, *route, *tol, cli.format, out),
    }
}

fn eval_record(command: Command, s: f64, tol: f64, result: &RouteResult) -> OutputRecord {
    OutputRecord {
        s: Some(F17(s)),
        tol: Some(F17(tol)),
        routes: vec![RouteRecord::from(result)],
        ..OutputRecord::new(command)
    }
}

fn text_route_line(r: &RouteRecord) -> String {
    format!(
        "{:<17} {:>24}  +/- {:.2e}  {}",
        r.route.tag(),
        r.value.to_string(),
        r.abs_error.0,
        if r.converged { "converged" } else { "NOT converged" }
    )
}

pub fn cmd_eval(s: f64, route: Option<RouteId>, tol: f64, format: Format, out: &mut dyn Write) -> Result<i32> {
    let cfg = route_config(tol)?;
    let route = route.unwrap_or_else(|| default_route(s));
    let result = evaluate(route, s, &cfg)?;
    let record = eval_record(Command::Eval, s, tol, &result);
    match format {
        Format::Json => writeln!(out, "{}", record.to_json()),
        _ => writeln!(
            out,
            "zeta({s}) = {} +/- {:.2e}  [{}{}]",
            F17(result.result.value),
            result.result.abs_error,
            route,
            if result.result.converged { "" } else { ", NOT converged" }
        ),
    }
    .map_err(io_error)?;
    Ok(if result.result.converged {
        EXIT_SUCCESS
    } else {
        EXIT_VERIFICATION
    })
}

pub fn cmd_compare(
    s: f64,
    tol: f64,
    routes: &[RouteId],
    fault: Option<FaultInjection>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let options = CompareOptions {
        config: route_config(RouteConfig::default().quadrature.tol)?,
        fault,
    };
    let subset = (!routes.is_empty()).then_some(routes);
    let report = compare_routes(s, subset, tol, &options)?;
    let record = OutputRecord::from_comparison(&report);
    match format {
        Format::Json => writeln!(out, "{}", record.to_json()).map_err(io_error)?,
        _ => {
            let mut text = format!("zeta({s}) by {} routes, tolerance {tol:e}\n", report.results.len());
            for r in &record.routes {
                text.push_str(&format!("  {}\n", text_route_line(r)));
            }
            text.push_str(&format!(
                "max pairwise gap {:.3e}, allowed {:.3e}: {}",
                report.max_pairwise_gap,
                report.allowance(),
                if report.pass { "PASS" } else { "FAIL" }
            ));
            writeln!(out, "{text}").map_err(io_error)?;
        }
    }
    Ok(if report.pass { EXIT_SUCCESS } else { EXIT_VERIFICATION })
}

pub fn cmd_bernoulli(n_max: usize, format: Format, out: &mut dyn Write) -> Result<i32> {
    let values = BernoulliTable::shared().prefix(n_max)?;
    let entries: Vec<BernoulliRecord> = values
        .iter()
        .enumerate()
        .map(|(n, b)| BernoulliRecord {
            n,
            value: format_rational(b),
        })
        .collect();
    match format {
        Format::Json => {
            let record = OutputRecord {
                bernoulli: Some(entries),
                ..OutputRecord::new(Command::Bernoulli)
            };
            writeln!(out, "{}", record.to_json()).map_err(io_error)?;
        }
        _ => {
            for e in &entries {
                writeln!(out, "B_{} = {}", e.n, e.value).map_err(io_error)?;
            }
        }
    }
    Ok(EXIT_SUCCESS)
}

pub fn cmd_mc(kind: DistributionKind, k: u32, n: usize, seed: u64, format: Format, out: &mut dyn Write) -> Result<i32> {
    let spec = DistributionSpec::new(kind)?;
    let target = spec.closed_moment(k)?;
    let estimate = mc_moment(&spec, k, seed, n)?;
    let mc = McRecord::new(kind, &estimate, target, RNG_ALGORITHM, MC_Z_LIMIT);
    let pass = mc.pass;
    match format {
        Format::Json => {
            let record = OutputRecord {
                mc: Some(mc),
                ..OutputRecord::new(Command::Mc)
            };
            writeln!(out, "{}", record.to_json()).map_err(io_error)?;
        }
        _ => writeln!(
            out,
            "{kind} E[X^{k}]: sample {} +/- {:.3e} (n = {n}, seed = {seed}), closed form {}, z = {:+.3}: {}",
            mc.mean,
            mc.stderr.0,
            mc.target,
            mc.z_score.0,
            if pass { "PASS" } else { "FAIL" }
        )
        .map_err(io_error)?,
    }
    Ok(if pass { EXIT_SUCCESS } else { EXIT_VERIFICATION })
}

pub fn cmd_table(s_list: &[f64], route: Option<RouteId>, tol: f64, format: Format, out: &mut dyn Write) -> Result<i32> {
    let cfg = route_config(tol)?;
    let outcomes: Vec<Result<RouteResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = s_list
            .iter()
            .map(|&s| scope.spawn(move || evaluate(route.unwrap_or_else(|| default_route(s)), s, &cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("evaluation thread panicked"))
            .collect()
    });
    let results = outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    let mut text = String::new();
    match format {
        Format::Json => {
            for (s, r) in s_list.iter().zip(&results) {
                text.push_str(&eval_record(Command::Table, *s, tol, r).to_json());
                text.push('\n');
            }
        }
        Format::Csv => {
            text.push_str(CSV_HEADER);
            text.push('\n');
            for (s, r) in s_list.iter().zip(&results) {
                for row in csv_rows(*s, &[RouteRecord::from(r)]) {
                    text.push_str(&row);
                    text.push('\n');
                }
            }
        }
        Format::Text => {
            for (s, r) in s_list.iter().zip(&results) {
                text.push_str(&format!("{:>8}  {}\n", s, text_route_line(&RouteRecord::from(r))));
            }
        }
    }
    out.write_all(text.as_bytes()).map_err(io_error)?;
    Ok(if results.iter().all(|r| r.result.converged) {
        EXIT_SUCCESS
    } else {
        EXIT_VERIFICATION
    })
}
