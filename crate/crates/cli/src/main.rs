//! `korovkin`: norms, moment tables, bound checks and rate sweeps from the
//! command line.
//!
//! Exit status: 0 when every bound holds, 1 on a bound violation, 2 on a
//! usage or configuration error.

mod config;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, ensure, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use config::{flavor_for, parse_flavor, parse_fn, parse_operator, parse_space, ExperimentConfig, Format};
use korovkin_core::bounds::{evaluate_bound, mu_n, rate_sweep, MuEstimate, RateReport};
use korovkin_core::library::parse_function_auto;
use korovkin_core::norms::norm;
use korovkin_core::{BoundFlavor, BoundOptions, BoundReport, NormResult, OperatorFamily, SpaceSpec};
use output::{fmt_f64, to_json, write_atomic, Table};

#[derive(Parser)]
#[command(name = "korovkin", version, about = "Korovkin-type bounds for positive linear operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON experiment manifest; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write an SVG log-log plot (rate-sweep only); the path defaults to
    /// the output path with an .svg extension.
    #[arg(long, num_args = 0..=1)]
    plot: Option<Option<PathBuf>>,
    /// Grid resolution for the norm kernels.
    #[arg(long)]
    resolution: Option<usize>,
    /// Starting grid for the modulus of continuity and sampled sup norms.
    #[arg(long)]
    modulus_resolution: Option<usize>,
    /// Report the raw comparison lhs <= rhs in the holds column.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug, Default)]
struct Experiment {
    /// Space descriptor, e.g. lp:p=2 or morrey:p=2,p0=3 (repeatable).
    #[arg(long)]
    space: Vec<String>,
    /// Function descriptor, e.g. x2 or abs:0.3 (repeatable).
    #[arg(long = "fn")]
    function: Vec<String>,
    /// Degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// kantorovich or fejer.
    #[arg(long)]
    operator: Option<String>,
    /// shisha-mond, devore, trig-shisha-mond or trig-devore.
    #[arg(long)]
    flavor: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the norm of one function in one space.
    Norm {
        #[arg(long)]
        space: String,
        #[arg(long = "fn")]
        function: String,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate mu_n per space and degree.
    MuTable {
        #[command(flatten)]
        exp: Experiment,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate both sides of the bound for every (function, space, n).
    BoundCheck {
        #[command(flatten)]
        exp: Experiment,
        #[command(flatten)]
        common: Common,
    },
    /// Fit log-log decay rates of both sides over n.
    RateSweep {
        #[command(flatten)]
        exp: Experiment,
        #[command(flatten)]
        common: Common,
    },
}

/// Flags merged over the config file.
struct Settings {
    functions: Vec<String>,
    spaces: Vec<String>,
    family: OperatorFamily,
    n_values: Vec<usize>,
    flavor: BoundFlavor,
    resolution: Option<usize>,
    opts: BoundOptions,
    out: Option<PathBuf>,
    format: Format,
    plot: Option<PathBuf>,
    strict: bool,
}

fn pick<T>(flag: Vec<T>, cfg: Vec<T>) -> Vec<T> {
    if flag.is_empty() {
        cfg
    } else {
        flag
    }
}

fn settings(exp: Experiment, common: Common) -> Result<Settings> {
    let cfg = match &common.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let family = parse_operator(exp.operator.as_deref().or(cfg.operator.as_deref()).unwrap_or("kantorovich"))?;
    let flavor = flavor_for(parse_flavor(exp.flavor.as_deref().or(cfg.flavor.as_deref()).unwrap_or("shisha-mond"))?, &family);
    let n_values = pick(exp.n, cfg.n_values);
    ensure!(!n_values.is_empty(), "no n values given (use --n or n_values in the config)");
    ensure!(n_values.windows(2).all(|w| w[0] < w[1]), "n values must be strictly ascending");
    let mut opts = BoundOptions::default();
    if let Some(m) = common.modulus_resolution.or(cfg.modulus_resolution) {
        ensure!(m >= korovkin_core::modulus::MIN_RESOLUTION, "modulus resolution must be at least {}", korovkin_core::modulus::MIN_RESOLUTION);
        opts.modulus_resolution = m;
    }
    let resolution = common.resolution.or(cfg.resolution);
    if let Some(r) = resolution {
        ensure!(r >= 2, "resolution must be at least 2");
    }
    Ok(Settings {
        functions: pick(exp.function, cfg.functions),
        spaces: pick(exp.space, cfg.spaces),
        family,
        n_values,
        flavor,
        resolution,
        opts,
        out: common.out.or(cfg.out),
        format: common.format.or(cfg.format).unwrap_or_default(),
        // an empty path selects the default location
        plot: common.plot.map(Option::unwrap_or_default).or(cfg.plot),
        strict: common.strict || cfg.strict,
    })
}

impl Settings {
    fn spaces(&self) -> Result<Vec<SpaceSpec>> {
        ensure!(!self.spaces.is_empty(), "no spaces given (use --space or spaces in the config)");
        let domain = self.family.domain();
        self.spaces
            .iter()
            .map(|d| {
                let s = parse_space(d, domain)?;
                Ok(match self.resolution {
                    Some(r) => s.with_resolution(r),
                    None => s,
                })
            })
            .collect()
    }

    fn functions(&self) -> Result<Vec<korovkin_core::FunctionHandle>> {
        ensure!(!self.functions.is_empty(), "no functions given (use --fn or functions in the config)");
        self.functions.iter().map(|d| parse_fn(d, self.family.domain())).collect()
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => write_atomic(p, text.as_bytes()),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Violation,
}

fn run_norm(space: &str, function: &str, common: Common) -> Result<Outcome> {
    let cfg = match &common.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let f = parse_function_auto(function).map_err(|e| anyhow!("function '{function}': {e}"))?;
    let mut s = parse_space(space, f.domain())?;
    if let Some(r) = common.resolution.or(cfg.resolution) {
        ensure!(r >= 2, "resolution must be at least 2");
        s = s.with_resolution(r);
    }
    let r: NormResult = norm(&s, &f).map_err(|e| anyhow!("{e}"))?;
    let text = match common.format.or(cfg.format).unwrap_or_default() {
        Format::Csv => {
            let mut t = Table::new(vec!["space", "function", "value", "est_error", "method"]);
            t.push(vec![s.label(), f.name().to_string(), fmt_f64(r.value), fmt_f64(r.est_error), r.method.to_string()]);
            t.to_csv()?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                space: String,
                function: &'a str,
                #[serde(flatten)]
                result: &'a NormResult,
            }
            to_json(&Row { space: s.label(), function: f.name(), result: &r })?
        }
    };
    match common.out.or(cfg.out) {
        Some(p) => write_atomic(&p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}

fn run_mu_table(st: Settings) -> Result<Outcome> {
    let spaces = st.spaces()?;
    let cells: Vec<(usize, usize)> = (0..spaces.len()).flat_map(|i| st.n_values.iter().map(move |&n| (i, n))).collect();
    let values = cells
        .par_iter()
        .map(|&(i, n)| {
            let op = st.family.at(n)?;
            mu_n(&spaces[i], &op)
        })
        .collect::<korovkin_core::Result<Vec<MuEstimate>>>()
        .map_err(|e| anyhow!("{e}"))?;
    let text = match st.format {
        Format::Csv => {
            let mut t = Table::new(vec!["space", "n", "mu_n", "mu_n_squared", "est_error"]);
            for (&(i, n), m) in cells.iter().zip(&values) {
                t.push(vec![spaces[i].label(), n.to_string(), fmt_f64(m.mu), fmt_f64(m.mu_squared), fmt_f64(m.est_error)]);
            }
            t.to_csv()?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                space: String,
                n: usize,
                #[serde(flatten)]
                mu: MuEstimate,
            }
            let rows: Vec<Row> = cells.iter().zip(&values).map(|(&(i, n), m)| Row { space: spaces[i].label(), n, mu: *m }).collect();
            to_json(&rows)?
        }
    };
    st.emit(&text)?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct BoundRecord<'a> {
    function: &'a str,
    #[serde(flatten)]
    report: &'a BoundReport,
}

fn run_bound_check(st: Settings) -> Result<Outcome> {
    let spaces = st.spaces()?;
    let functions = st.functions()?;
    let mut cells = Vec::new();
    for fi in 0..functions.len() {
        for si in 0..spaces.len() {
            for &n in &st.n_values {
                cells.push((fi, si, n));
            }
        }
    }
    let reports = cells
        .par_iter()
        .map(|&(fi, si, n)| {
            let op = st.family.at(n)?;
            evaluate_bound(st.flavor, &spaces[si], &op, &functions[fi], &st.opts)
        })
        .collect::<korovkin_core::Result<Vec<_>>>()
        .map_err(|e| anyhow!("{e}"))?;

    let text = match st.format {
        Format::Csv => {
            let mut t = Table::new(vec![
                "function", "space", "flavor", "n", "lhs", "mu_n", "omega", "term_unital", "term_main", "rhs", "ratio", "holds", "est_error",
            ]);
            for (&(fi, _, _), r) in cells.iter().zip(&reports) {
                let holds = if st.strict { r.strict_holds } else { r.holds };
                t.push(vec![
                    functions[fi].name().to_string(),
                    r.space.clone(),
                    r.flavor.to_string(),
                    r.n.to_string(),
                    fmt_f64(r.lhs),
                    fmt_f64(r.mu_n),
                    fmt_f64(r.omega_val),
                    fmt_f64(r.term_unital),
                    fmt_f64(r.term_main + r.term_drift),
                    fmt_f64(r.rhs),
                    fmt_f64(r.ratio),
                    holds.to_string(),
                    fmt_f64(r.est_error),
                ]);
            }
            t.to_csv()?
        }
        Format::Json => {
            let rows: Vec<BoundRecord> =
                cells.iter().zip(&reports).map(|(&(fi, _, _), r)| BoundRecord { function: functions[fi].name(), report: r }).collect();
            to_json(&rows)?
        }
    };
    st.emit(&text)?;

    let failed = reports.iter().filter(|r| !r.holds).count();
    if st.strict {
        for (&(fi, _, _), r) in cells.iter().zip(&reports).filter(|(_, r)| !r.strict_holds) {
            eprintln!("strict: {} in {} at n={}: lhs {} > rhs {}", functions[fi].name(), r.space, r.n, fmt_f64(r.lhs), fmt_f64(r.rhs));
        }
    }
    let worst = reports.iter().map(|r| r.ratio).fold(0.0, f64::max);
    eprintln!(
        "{} records, {} violations, worst ratio {}",
        reports.len(),
        failed,
        fmt_f64(worst)
    );
    Ok(if failed == 0 { Outcome::Pass } else { Outcome::Violation })
}

fn plot_path(st: &Settings, index: usize, count: usize) -> Option<PathBuf> {
    let base = st.plot.as_ref()?;
    let base = if base.as_os_str().is_empty() {
        st.out.as_ref().map(|o| o.with_extension("svg")).unwrap_or_else(|| PathBuf::from("rate_sweep.svg"))
    } else {
        base.clone()
    };
    if count == 1 {
        return Some(base);
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("rate_sweep");
    Some(base.with_file_name(format!("{stem}_{index}.svg")))
}

fn run_rate_sweep(st: Settings) -> Result<Outcome> {
    ensure!(st.n_values.len() >= 4, "rate sweep needs at least 4 n values, got {}", st.n_values.len());
    let spaces = st.spaces()?;
    let functions = st.functions()?;
    let pairs: Vec<(usize, usize)> = (0..functions.len()).flat_map(|fi| (0..spaces.len()).map(move |si| (fi, si))).collect();
    let sweeps = pairs
        .iter()
        .map(|&(fi, si)| rate_sweep(&spaces[si], &st.family, &functions[fi], &st.n_values, st.flavor, &st.opts))
        .collect::<korovkin_core::Result<Vec<RateReport>>>()
        .map_err(|e| anyhow!("{e}"))?;

    let text = match st.format {
        Format::Csv => {
            let mut t = Table::new(vec!["function", "space", "flavor", "n", "lhs", "rhs", "mu_n", "ratio", "holds"]);
            for (&(fi, si), sw) in pairs.iter().zip(&sweeps) {
                for r in &sw.reports {
                    let holds = if st.strict { r.strict_holds } else { r.holds };
                    t.push(vec![
                        functions[fi].name().to_string(),
                        spaces[si].label(),
                        r.flavor.to_string(),
                        r.n.to_string(),
                        fmt_f64(r.lhs),
                        fmt_f64(r.rhs),
                        fmt_f64(r.mu_n),
                        fmt_f64(r.ratio),
                        holds.to_string(),
                    ]);
                }
            }
            t.to_csv()?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                function: &'a str,
                space: String,
                sweep: &'a RateReport,
            }
            let rows: Vec<Row> =
                pairs.iter().zip(&sweeps).map(|(&(fi, si), sw)| Row { function: functions[fi].name(), space: spaces[si].label(), sweep: sw }).collect();
            to_json(&rows)?
        }
    };
    st.emit(&text)?;

    for (k, (&(fi, si), sw)) in pairs.iter().zip(&sweeps).enumerate() {
        let slope = |f: &Option<korovkin_core::SlopeFit>| f.as_ref().map_or("undefined".to_string(), |f| format!("{:.4}", f.slope));
        eprintln!("{} in {}: slope_lhs {} slope_rhs {}", functions[fi].name(), spaces[si].label(), slope(&sw.slope_lhs), slope(&sw.slope_rhs));
        if let Some(path) = plot_path(&st, k, pairs.len()) {
            let svg = plot::rate_svg(
                &format!("{} in {} ({})", functions[fi].name(), spaces[si].label(), st.flavor),
                &sw.n_values,
                &[
                    plot::Series { label: "lhs", color: "#1f77b4", values: &sw.lhs_values, fit: sw.slope_lhs.as_ref() },
                    plot::Series { label: "rhs", color: "#d62728", values: &sw.rhs_values, fit: sw.slope_rhs.as_ref() },
                ],
            );
            write_atomic(&path, svg.as_bytes())?;
        }
    }
    let ok = sweeps.iter().all(RateReport::all_hold);
    Ok(if ok { Outcome::Pass } else { Outcome::Violation })
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Norm { space, function, common } => run_norm(&space, &function, common),
        Command::MuTable { exp, common } => run_mu_table(settings(exp, common)?),
        Command::BoundCheck { exp, common } => run_bound_check(settings(exp, common)?),
        Command::RateSweep { exp, common } => run_rate_sweep(settings(exp, common)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
