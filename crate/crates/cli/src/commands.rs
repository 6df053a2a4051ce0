use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use bellbound::bounds::{
    classical_max, local_max, naive_bound, nonlocal_max, reach_tolerance, regime_report, OptimizationResult,
    OptimizerConfig, ReportConfig,
};
use bellbound::scenario::{
    classify_regime, correlation_table, evaluate, parse_scenario, swap_assumption_delta, CorrelationTable, StateSpec,
};
use bellbound::simulator::{
    angle_scan, chsh_estimate, format_full, run_model, simulation_row, AngleSettings, Detection, Model,
    SIMULATION_HEADER,
};
use bellbound::Regime;

use crate::{ModelChoice, RunConfig, SubcommandKind};

pub const BOUND_HEADER: &str = "regime,dimension,restarts,achieved,target,converged,seed";

#[derive(Debug)]
pub(crate) enum RunError {
    Core(bellbound::Error),
    Io { path: PathBuf, source: io::Error },
    Stdout(io::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Core(e) => write!(f, "{e}"),
            RunError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            RunError::Stdout(e) => write!(f, "writing output: {e}"),
        }
    }
}

impl From<bellbound::Error> for RunError {
    fn from(e: bellbound::Error) -> Self {
        RunError::Core(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Stdout(e)
    }
}

type Result<T> = std::result::Result<T, RunError>;

pub(crate) fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    match cfg.subcommand {
        SubcommandKind::Bound => bound(cfg, out),
        SubcommandKind::Expect => scenario(cfg, out, false),
        SubcommandKind::Check => scenario(cfg, out, true),
        SubcommandKind::Simulate => simulate(cfg, out),
        SubcommandKind::Scan => scan(cfg, out),
        SubcommandKind::Report => report(cfg, out),
    }
}

/// Text-report number: rounded to 6 decimals, shortest form.
pub fn round6(x: f64) -> String {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

/// CSV goes to `--output` when given, otherwise to stdout.
fn emit_csv(cfg: &RunConfig, out: &mut dyn Write, lines: &[String]) -> Result<()> {
    let mut text = lines.join("\n");
    text.push('\n');
    match &cfg.output_path {
        Some(path) => fs::write(path, text).map_err(|source| RunError::Io {
            path: path.clone(),
            source,
        }),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn model(choice: ModelChoice) -> Model {
    Model::from_name(choice.name()).expect("built-in model name")
}

fn optimizer(cfg: &RunConfig, base: OptimizerConfig, restarts: usize) -> OptimizerConfig {
    let mut o = base
        .with_dimension(cfg.dimension)
        .with_restarts(restarts)
        .with_seed(cfg.seed);
    o.value_range = cfg.value_range;
    o.max_iterations = cfg.max_iterations;
    o
}

fn bound(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let regime = cfg.regime.expect("validated bound config");
    let result = match regime {
        Regime::Classical => classical_max(cfg.value_range)?,
        Regime::LocalHiddenVariable => local_max(&optimizer(cfg, OptimizerConfig::local(), cfg.restarts))?,
        Regime::Nonlocal => nonlocal_max(&optimizer(cfg, OptimizerConfig::nonlocal(), cfg.restarts))?,
    };
    let target = regime.expected_bound();
    let row = bound_row(&result, cfg.dimension, target, cfg.seed);
    if cfg.csv || cfg.output_path.is_some() {
        emit_csv(cfg, out, &[BOUND_HEADER.to_string(), row])?;
    }
    if !cfg.csv {
        let reached = (result.best_value - target).abs() <= reach_tolerance(regime);
        writeln!(out, "regime     {regime}")?;
        writeln!(out, "dimension  {}", cfg.dimension)?;
        writeln!(out, "restarts   {}", result.restarts)?;
        writeln!(out, "value      {}", round6(result.best_value))?;
        writeln!(out, "target     {}", round6(target))?;
        writeln!(out, "reached    {reached}")?;
        writeln!(out, "converged  {}", result.converged)?;
        writeln!(out, "seed       {}", cfg.seed)?;
    }
    Ok(())
}

pub fn bound_row(result: &OptimizationResult, dimension: usize, target: f64, seed: u64) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        result.regime.name(),
        dimension,
        result.restarts,
        format_full(result.best_value),
        format_full(target),
        result.converged,
        seed
    )
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

// correlations of feasible observables can overshoot ±1 by rounding
fn swap_delta(t: &CorrelationTable) -> std::result::Result<f64, String> {
    let snap = |e: f64| {
        if (e.abs() - 1.0) > 0.0 && (e.abs() - 1.0) < 1e-9 {
            e.signum()
        } else {
            e
        }
    };
    swap_assumption_delta(snap(t.e11), snap(t.e21), snap(t.e12), snap(t.e22)).map_err(|e| e.to_string())
}

fn state_name(spec: &StateSpec) -> String {
    match spec {
        StateSpec::Optimal => "optimal".into(),
        StateSpec::PhiPlus => "phi_plus".into(),
        StateSpec::MaximallyMixed => "mixed".into(),
        StateSpec::Basis(k) => format!("basis {k}"),
        StateSpec::Amplitudes(v) => format!("explicit ({} amplitudes)", v.len()),
    }
}

fn scenario(cfg: &RunConfig, out: &mut dyn Write, commutators: bool) -> Result<()> {
    let path = cfg.scenario_path.as_deref().expect("validated scenario config");
    let text = read_file(path)?;
    let file = parse_scenario(&text).map_err(|e| RunError::Io {
        path: path.to_path_buf(),
        source: io::Error::new(io::ErrorKind::InvalidData, e.to_string()),
    })?;
    let s = &file.scenario;
    let state = file.state.resolve(s)?;
    let eval = evaluate(s, &state)?;
    let regime = classify_regime(s, cfg.tolerances.commutator);
    let table = correlation_table(s, &state)?;
    let gap = eval.magnitude - eval.expectation.abs();

    writeln!(out, "scenario     {}", path.display())?;
    writeln!(out, "embedding    {:?}", s.embedding())?;
    writeln!(out, "dimension    {}", s.dim())?;
    writeln!(out, "state        {}", state_name(&file.state))?;
    writeln!(out, "expectation  {}", round6(eval.expectation))?;
    writeln!(out, "magnitude    {}", round6(eval.magnitude))?;
    if gap > cfg.tolerances.equality_gap {
        writeln!(out, "equality     fails (gap {})", round6(gap))?;
    } else {
        writeln!(out, "equality     holds")?;
    }
    writeln!(out, "regime       {}", regime.regime)?;
    writeln!(out, "bound        {}", round6(regime.expected_bound))?;
    writeln!(
        out,
        "correlations {} {} {} {}",
        round6(table.e11),
        round6(table.e21),
        round6(table.e12),
        round6(table.e22)
    )?;
    match swap_delta(&table) {
        Ok(d) => writeln!(out, "swap_delta   {}", round6(d))?,
        Err(m) => writeln!(out, "swap_delta   undefined ({m})")?,
    }
    if commutators {
        for w in &regime.witness {
            let kind = if w.cross_site { "cross-site" } else { "same-site" };
            writeln!(out, "{:<12} {:<10} {}", format!("[{}]", w.pair), kind, round6(w.norm))?;
        }
    }
    Ok(())
}

fn simulate(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let settings = cfg.angles.unwrap_or_else(AngleSettings::optimal_chsh);
    let stats = run_model(&model(cfg.model), &settings, cfg.shots, cfg.seed, Detection::IDEAL)?;
    let est = chsh_estimate(&stats)?;
    emit_csv(cfg, out, &[SIMULATION_HEADER.to_string(), simulation_row(&stats, &est)])?;
    if cfg.output_path.is_some() {
        writeln!(out, "S = {} ± {}", round6(est.s), round6(est.sigma))?;
    }
    Ok(())
}

pub const SCAN_HEADER_PREFIX: &str = "phi";

fn scan(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let rows = angle_scan(&model(cfg.model), cfg.step, cfg.shots, cfg.seed)?;
    let mut lines = vec![format!("{SCAN_HEADER_PREFIX},{SIMULATION_HEADER},S_expected")];
    for r in &rows {
        let expected = r.expected_s.map(format_full).unwrap_or_default();
        lines.push(format!(
            "{},{},{expected}",
            format_full(r.phi),
            simulation_row(&r.stats, &r.estimate)
        ));
    }
    emit_csv(cfg, out, &lines)?;
    if cfg.output_path.is_some() {
        writeln!(out, "{} scan points written", rows.len())?;
    }
    Ok(())
}

fn report(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let rc = ReportConfig {
        classical_range: cfg.value_range,
        local: optimizer(cfg, OptimizerConfig::local(), cfg.restarts),
        nonlocal: optimizer(cfg, OptimizerConfig::nonlocal(), cfg.nonlocal_restarts),
    };
    let report = regime_report(&rc, cfg.experimental);
    if cfg.csv || cfg.output_path.is_some() {
        let mut lines = vec![BOUND_HEADER.to_string()];
        for row in &report.rows {
            if let Ok(r) = &row.outcome {
                let dim = if row.regime == Regime::Classical {
                    1
                } else {
                    cfg.dimension
                };
                lines.push(bound_row(r, dim, row.expected_bound, cfg.seed));
            }
        }
        emit_csv(cfg, out, &lines)?;
    }
    if !cfg.csv {
        writeln!(
            out,
            "{:<20} {:>9} {:>9}  {:<8} experimental",
            "regime", "expected", "achieved", "reached"
        )?;
        for row in &report.rows {
            let achieved = match &row.outcome {
                Ok(r) => round6(r.best_value),
                Err(_) => "failed".into(),
            };
            let consistent = match row.consistent {
                Some(true) => "consistent",
                Some(false) => "excluded",
                None => "-",
            };
            writeln!(
                out,
                "{:<20} {:>9} {:>9}  {:<8} {}",
                row.regime.name(),
                round6(row.expected_bound),
                achieved,
                row.reached,
                consistent
            )?;
        }
        writeln!(out, "naive ceiling {}", round6(naive_bound()))?;
        if let Some(x) = cfg.experimental {
            writeln!(out, "experimental value {}", round6(x))?;
        }
        for row in &report.rows {
            if let Err(e) = &row.outcome {
                writeln!(out, "{}: {e}", row.regime.name())?;
            }
        }
    }
    if report.rows.iter().any(|r| r.outcome.is_err()) {
        return Err(RunError::Core(bellbound::Error::Argument(
            "a maximizer failed; see the report".into(),
        )));
    }
    Ok(())
}
