//! Command-line front end. Every command writes a plot-ready CSV or JSON document.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 internal invariant violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::diversity::{output_entropy_base, output_value_distribution};
use crate::empirical::{load_rankings_path, EmpiricalConfig, QueryOrder, SyntheticRankings};
use crate::error::Error;
use crate::mixture::{reveal_count_pmf, MixtureParams};
use crate::policy::{best_for_k, maximin_objective, optimal_query_count, regime_map, MaximinValue};
use crate::serde_gamma;
use crate::sim::{run_exhaustive, run_exhaustive_patterns, run_monte_carlo};
use crate::welfare::{expected_utility, welfare, PolicyTable, WelfareSpec};

#[derive(Parser, Debug)]
#[command(name = "elicit", version, about = "Optimal preference elicitation under inequality-averse welfare")]
pub struct Cli {
    /// Output format (default: json for `simulate`, csv otherwise).
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for grid and Monte Carlo evaluation.
    #[arg(long, env = "ELICIT_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct WelfareArgs {
    /// Cost charged per query.
    #[arg(long, default_value_t = 1.0)]
    pub cost: f64,
    /// Evaluate raw `u` instead of `u + 1` for gamma >= 1.
    #[arg(long)]
    pub no_zero_shift: bool,
    /// Gamma above which policy search compares welfare terms in the log domain.
    #[arg(long, default_value_t = 50.0)]
    pub log_crossover: f64,
}

impl WelfareArgs {
    fn spec(&self, gamma: f64) -> Result<WelfareSpec, Error> {
        let spec = WelfareSpec { gamma, query_cost: self.cost, zero_shift: !self.no_zero_shift, log_domain_crossover: self.log_crossover };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimMode {
    /// Exact, over mistake-count classes.
    Exhaustive,
    /// Exact, over every one of the 2^n flip patterns (n <= 20).
    Patterns,
    MonteCarlo,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Optimal response table a -> f(a) for one k and gamma.
    Policy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        k: usize,
        /// Inequality aversion; `inf` for maximin.
        #[arg(long, default_value = "0", value_parser = parse_gamma)]
        gamma: f64,
        #[command(flatten)]
        welfare: WelfareArgs,
    },
    /// Welfare of the best policy for every k, with the argmax flagged per (gamma, p).
    SweepK {
        #[arg(long)]
        n: usize,
        /// One or more noise rates, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', default_value = "0", value_parser = parse_gamma)]
        gamma: Vec<f64>,
        #[command(flatten)]
        welfare: WelfareArgs,
    },
    /// Matrix of optimal k over a (p, alpha) grid.
    Regime {
        #[arg(long)]
        n: usize,
        /// Explicit p values; otherwise `--p-steps` points on [0, 0.5].
        #[arg(long, value_delimiter = ',')]
        p_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 51)]
        p_steps: usize,
        /// Explicit alpha values; otherwise `--alpha-steps` points on [0.5, 1].
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 26)]
        alpha_steps: usize,
        #[arg(long, default_value = "0", value_parser = parse_gamma)]
        gamma: f64,
        #[command(flatten)]
        welfare: WelfareArgs,
    },
    /// Entropy of the optimal pipeline's output distribution per gamma.
    Entropy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', default_value = "0,2,5,10", value_parser = parse_gamma)]
        gamma: Vec<f64>,
        /// Use this k instead of the welfare-optimal one.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 2.0)]
        base: f64,
        #[command(flatten)]
        welfare: WelfareArgs,
    },
    /// Simulate a population against a policy and report utility, welfare and Gini.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        k: usize,
        /// Explicit policy table f(0), ..., f(k); otherwise the optimal policy for `--policy-gamma`.
        #[arg(long, value_delimiter = ',')]
        zeros: Option<Vec<usize>>,
        #[arg(long, default_value = "0", value_parser = parse_gamma)]
        policy_gamma: f64,
        /// Welfare parameters to report.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,5", value_parser = parse_gamma)]
        gamma: Vec<f64>,
        #[arg(long, value_enum, default_value_t = SimMode::Exhaustive)]
        mode: SimMode,
        /// Users sampled in Monte Carlo mode.
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        welfare: WelfareArgs,
    },
    /// Welfare / utility / Gini sweep over k on ranking data.
    Empirical(EmpiricalArgs),
}

#[derive(Args, Debug)]
pub struct EmpiricalArgs {
    /// Ranking file. Omit together with `--synthetic` to use the built-in stand-in.
    #[arg(long, required_unless_present = "synthetic")]
    pub data: Option<PathBuf>,
    #[arg(long, conflicts_with = "data")]
    pub synthetic: bool,
    /// TOML file with pipeline settings; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Ranking layout preset: `plain` or `sushi`.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub metadata_columns: Option<usize>,
    #[arg(long)]
    pub header_lines: Option<usize>,
    /// Items in each user's top m are binarised to 1.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub cost: Option<f64>,
    #[arg(long, value_delimiter = ',', value_parser = parse_gamma)]
    pub gamma: Option<Vec<f64>>,
    #[arg(long)]
    pub k_min: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long)]
    pub order: Option<QueryOrderArg>,
    #[arg(long)]
    pub holdout: Option<f64>,
    #[arg(long)]
    pub no_zero_shift: bool,
    /// Where to write the (k, mean_utility, gini) frontier; defaults to `<output>.frontier.csv`.
    #[arg(long)]
    pub frontier: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QueryOrderArg {
    Adaptive,
    BreadthFirst,
}

impl From<QueryOrderArg> for QueryOrder {
    fn from(o: QueryOrderArg) -> Self {
        match o {
            QueryOrderArg::Adaptive => QueryOrder::Adaptive,
            QueryOrderArg::BreadthFirst => QueryOrder::BreadthFirst,
        }
    }
}

/// `inf` / `infinity` or a finite non-negative number.
pub fn parse_gamma(s: &str) -> Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        t => match t.parse::<f64>() {
            Ok(g) if g.is_finite() && g >= 0.0 => Ok(g),
            _ => Err(format!("`{s}` is not a non-negative number or `inf`")),
        },
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::EmptyDataset | Error::Io { .. } | Error::ImpossibleObservation { .. } | Error::UndefinedGini(_) => {
                CliError::Data(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os(), &mut std::io::stdout().lock())
}

pub fn run_from<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        // A second initialisation in the same process is harmless; keep the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let default_format = if matches!(cli.command, Command::Simulate { .. }) { OutputFormat::Json } else { OutputFormat::Csv };
    let format = cli.format.unwrap_or(default_format);
    let text = match &cli.command {
        Command::Policy { n, p, alpha, k, gamma, welfare } => cmd_policy(*n, *p, *alpha, *k, *gamma, welfare, format)?,
        Command::SweepK { n, p, alpha, gamma, welfare } => cmd_sweep_k(*n, p, *alpha, gamma, welfare, format)?,
        Command::Regime { n, p_grid, p_steps, alpha_grid, alpha_steps, gamma, welfare } => {
            let ps = p_grid.clone().map_or_else(|| linspace(0.0, 0.5, *p_steps), Ok)?;
            let alphas = alpha_grid.clone().map_or_else(|| linspace(0.5, 1.0, *alpha_steps), Ok)?;
            cmd_regime(*n, &ps, &alphas, *gamma, welfare, format)?
        }
        Command::Entropy { n, p, alpha, gamma, k, base, welfare } => cmd_entropy(*n, *p, *alpha, gamma, *k, *base, welfare, format)?,
        Command::Simulate { n, p, alpha, k, zeros, policy_gamma, gamma, mode, count, seed, welfare } => {
            let params = MixtureParams::new(*n, *p, *alpha)?;
            let policy = match zeros {
                Some(z) => PolicyTable::new(*n, *k, z.clone())?,
                None => best_for_k(&params, *k, &welfare.spec(*policy_gamma)?)?.policy,
            };
            cmd_simulate(&params, &policy, gamma, *mode, *count as usize, *seed, welfare, format)?
        }
        Command::Empirical(args) => cmd_empirical(args, cli.output.as_deref(), format)?,
    };
    match &cli.output {
        Some(path) => write_file(path, &text),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Internal(format!("stdout: {e}"))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    match steps {
        0 => Err(CliError::Usage("grid needs at least one point".into())),
        1 => Ok(vec![lo]),
        _ => Ok((0..steps).map(|i| (lo * (steps - 1 - i) as f64 + hi * i as f64) / (steps - 1) as f64).collect()),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| CliError::Internal(e.to_string()))
}

#[derive(Serialize)]
struct PolicyRow {
    a: usize,
    zeros: usize,
    ones: usize,
    probability: f64,
}

#[derive(Serialize)]
struct PolicyReport {
    n: usize,
    k: usize,
    p: f64,
    alpha: f64,
    #[serde(serialize_with = "serde_gamma::serialize")]
    gamma: f64,
    query_cost: f64,
    zero_shift: bool,
    rows: Vec<PolicyRow>,
    /// For `gamma = inf`, minus the probability of the worst outcome.
    welfare: f64,
    expected_utility: f64,
    maximin: Option<MaximinValue>,
}

fn cmd_policy(n: usize, p: f64, alpha: f64, k: usize, gamma: f64, w: &WelfareArgs, format: OutputFormat) -> Result<String, CliError> {
    let params = MixtureParams::new(n, p, alpha)?;
    let spec = w.spec(gamma)?;
    let eval = best_for_k(&params, k, &spec)?;
    let policy = eval.policy;
    let marginal = reveal_count_pmf(&params, k)?.marginal;
    let rows: Vec<PolicyRow> = (0..=k)
        .map(|a| PolicyRow { a, zeros: policy.zeros(a), ones: n - k - policy.zeros(a), probability: marginal[a] })
        .collect();
    let report = PolicyReport {
        n,
        k,
        p,
        alpha,
        gamma,
        query_cost: spec.query_cost,
        zero_shift: spec.zero_shift,
        rows,
        welfare: welfare(&params, &policy, &spec)?,
        expected_utility: expected_utility(&params, &policy, &spec)?,
        maximin: if spec.is_maximin() { Some(maximin_objective(&params, &policy, &spec)?) } else { None },
    };
    match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut out = String::from("a,zeros,ones,probability,welfare\n");
            for r in &report.rows {
                let _ = writeln!(out, "{},{},{},{},{}", r.a, r.zeros, r.ones, r.probability, report.welfare);
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct SweepKRow {
    #[serde(serialize_with = "serde_gamma::serialize")]
    gamma: f64,
    p: f64,
    k: usize,
    welfare: f64,
    best: bool,
}

fn cmd_sweep_k(n: usize, ps: &[f64], alpha: f64, gammas: &[f64], w: &WelfareArgs, format: OutputFormat) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for &gamma in gammas {
        let spec = w.spec(gamma)?;
        for &p in ps {
            let params = MixtureParams::new(n, p, alpha)?;
            let result = optimal_query_count(&params, &spec, n)?;
            for e in &result.per_k {
                rows.push(SweepKRow { gamma, p, k: e.k, welfare: e.objective, best: e.k == result.best_k });
            }
        }
    }
    match format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("gamma,p,k,welfare,best\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{},{}", serde_gamma::format(r.gamma), r.p, r.k, r.welfare, r.best as u8);
            }
            Ok(out)
        }
    }
}

fn cmd_regime(n: usize, ps: &[f64], alphas: &[f64], gamma: f64, w: &WelfareArgs, format: OutputFormat) -> Result<String, CliError> {
    let map = regime_map(n, ps, alphas, &w.spec(gamma)?)?;
    match format {
        OutputFormat::Json => to_json(&map),
        OutputFormat::Csv => {
            // Rows are alpha values, columns p values.
            let mut out = String::from("alpha");
            for p in &map.p_grid {
                let _ = write!(out, ",{p}");
            }
            out.push('\n');
            for (alpha, row) in map.alpha_grid.iter().zip(&map.best_k) {
                let _ = write!(out, "{alpha}");
                for k in row {
                    let _ = write!(out, ",{k}");
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct EntropyRow {
    #[serde(serialize_with = "serde_gamma::serialize")]
    gamma: f64,
    k: usize,
    entropy: f64,
    support: Vec<usize>,
    probabilities: Vec<f64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_entropy(
    n: usize,
    p: f64,
    alpha: f64,
    gammas: &[f64],
    forced_k: Option<usize>,
    base: f64,
    w: &WelfareArgs,
    format: OutputFormat,
) -> Result<String, CliError> {
    if !(base > 0.0 && base != 1.0) {
        return Err(CliError::Usage(format!("entropy base {base} must be positive and not 1")));
    }
    let params = MixtureParams::new(n, p, alpha)?;
    let mut rows = Vec::new();
    for &gamma in gammas {
        let spec = w.spec(gamma)?;
        let (k, policy) = match forced_k {
            Some(k) => (k, best_for_k(&params, k, &spec)?.policy),
            None => {
                let r = optimal_query_count(&params, &spec, n)?;
                (r.best_k, r.policy)
            }
        };
        let dist = output_value_distribution(&params, &policy)?;
        rows.push(EntropyRow {
            gamma,
            k,
            entropy: output_entropy_base(&dist, base),
            support: dist.support,
            probabilities: dist.probabilities,
        });
    }
    match format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("gamma,best_k,entropy,support_size\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{}", serde_gamma::format(r.gamma), r.k, r.entropy, r.support.len());
            }
            Ok(out)
        }
    }
}

const SELF_CHECK_RTOL: f64 = 1e-9;

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    params: &MixtureParams,
    policy: &PolicyTable,
    gammas: &[f64],
    mode: SimMode,
    count: usize,
    seed: u64,
    w: &WelfareArgs,
    format: OutputFormat,
) -> Result<String, CliError> {
    let spec = w.spec(0.0)?;
    for &g in gammas {
        w.spec(g)?;
    }
    let report = match mode {
        SimMode::Exhaustive => run_exhaustive(params, policy, &spec, gammas)?,
        SimMode::Patterns => run_exhaustive_patterns(params, policy, &spec, gammas)?,
        SimMode::MonteCarlo => run_monte_carlo(params, policy, &spec, gammas, count, seed)?,
    };
    if mode != SimMode::MonteCarlo {
        // The enumeration is an independent oracle for the closed forms.
        let close = |a: f64, b: f64| (a - b).abs() <= SELF_CHECK_RTOL * a.abs().max(b.abs()).max(1.0);
        let eu = expected_utility(params, policy, &spec)?;
        if !close(report.mean_utility, eu) {
            return Err(CliError::Internal(format!("self-check failed: simulated mean utility {} vs closed form {eu}", report.mean_utility)));
        }
        for gw in report.welfare_by_gamma.iter().filter(|gw| gw.gamma.is_finite()) {
            let closed = welfare(params, policy, &w.spec(gw.gamma)?)?;
            if !close(gw.welfare, closed) {
                return Err(CliError::Internal(format!(
                    "self-check failed at gamma = {}: simulated welfare {} vs closed form {closed}",
                    gw.gamma, gw.welfare
                )));
            }
        }
    }
    match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut out = String::from("mistakes,utility,frequency\n");
            for b in &report.utility_histogram {
                let _ = writeln!(out, "{},{},{}", b.mistakes, b.utility, b.frequency);
            }
            Ok(out)
        }
    }
}

fn cmd_empirical(args: &EmpiricalArgs, output: Option<&Path>, format: OutputFormat) -> Result<String, CliError> {
    let mut cfg = match &args.config {
        Some(path) => EmpiricalConfig::from_path(path)?,
        None => EmpiricalConfig::default(),
    };
    if let Some(v) = &args.preset {
        cfg.format = v.clone();
    }
    if args.metadata_columns.is_some() {
        cfg.metadata_columns = args.metadata_columns;
    }
    if args.header_lines.is_some() {
        cfg.header_lines = args.header_lines;
    }
    if let Some(v) = args.m {
        cfg.m = v;
    }
    if let Some(v) = args.cost {
        cfg.query_cost = v;
    }
    if let Some(v) = &args.gamma {
        cfg.gammas = v.clone();
    }
    if let Some(v) = args.k_min {
        cfg.k_min = v;
    }
    if args.k_max.is_some() {
        cfg.k_max = args.k_max;
    }
    if args.max_depth.is_some() {
        cfg.max_depth = args.max_depth;
    }
    if let Some(v) = args.order {
        cfg.order = v.into();
    }
    if let Some(v) = args.holdout {
        cfg.holdout = v;
    }
    if args.no_zero_shift {
        cfg.zero_shift = false;
    }
    let rankings = match &args.data {
        Some(path) => load_rankings_path(path, cfg.ranking_format()?)?,
        None => SyntheticRankings::default().generate()?,
    };
    let table = cfg.run(&rankings)?;

    let frontier_path = args.frontier.clone().or_else(|| {
        output.map(|o| {
            let stem = o.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            o.with_file_name(format!("{stem}.frontier.csv"))
        })
    });
    if let Some(path) = &frontier_path {
        write_file(path, &table.frontier_csv())?;
    }
    match format {
        OutputFormat::Csv => Ok(table.to_csv()),
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                config: &'a EmpiricalConfig,
                users: usize,
                n: usize,
                rows: &'a [crate::empirical::SweepRow],
                frontier: Vec<crate::empirical::FrontierPoint>,
                optimal_k: Vec<OptimalK>,
            }
            #[derive(Serialize)]
            struct OptimalK {
                #[serde(serialize_with = "serde_gamma::serialize")]
                gamma: f64,
                k: usize,
            }
            let optimal_k = cfg.gammas.iter().filter_map(|&g| table.optimal_k(g).map(|k| OptimalK { gamma: g, k })).collect();
            to_json(&Doc { config: &cfg, users: rankings.len(), n: rankings.n(), rows: &table.rows, frontier: table.frontier(), optimal_k })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run_from(std::iter::once("elicit").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn gamma_spellings() {
        assert_eq!(parse_gamma("inf"), Ok(f64::INFINITY));
        assert_eq!(parse_gamma("2.5"), Ok(2.5));
        assert!(parse_gamma("-1").is_err());
        assert!(parse_gamma("nan").is_err());
    }

    #[test]
    fn default_grids() {
        let p = linspace(0.0, 0.5, 51).unwrap();
        assert_eq!((p.len(), p[0], p[50]), (51, 0.0, 0.5));
        let a = linspace(0.5, 1.0, 26).unwrap();
        assert_eq!((a.len(), a[0], a[25]), (26, 0.5, 1.0));
    }

    #[test]
    fn policy_tables() {
        let (code, out) = run_args(&["policy", "--n", "10", "--p", "0.1", "--alpha", "0.5", "--k", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
        let (code, out) = run_args(&["policy", "--n", "10", "--p", "0.1", "--alpha", "0.5", "--k", "3", "--gamma", "0"]);
        assert_eq!(code, 0);
        for line in out.lines().skip(1) {
            let zeros: usize = line.split(',').nth(1).unwrap().parse().unwrap();
            assert!(zeros == 0 || zeros == 7);
        }
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["policy", "--n", "3", "--p", "0.7", "--alpha", "0.5", "--k", "1"]).0, 2);
        assert_eq!(run_args(&["policy", "--n", "3", "--p", "0.1", "--alpha", "0.5", "--k", "4"]).0, 2);
        assert_eq!(run_args(&["simulate", "--n", "3", "--p", "0.1", "--alpha", "0.5", "--k", "1", "--count", "0"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
    }

    #[test]
    fn missing_dataset_is_a_data_error() {
        let (code, _) = run_args(&["empirical", "--data", "/nonexistent/rankings.order"]);
        assert_eq!(code, 3);
    }
}
