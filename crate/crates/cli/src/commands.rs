use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use qsuppress::depth;
use qsuppress::grover::{closed_form_success, run_grover, suppression_sweep, GroverConfig, GroverMode, OracleSpec};
use qsuppress::label::parse_label_list;
use qsuppress::qaoa::{bundled_three_city, compare_initializations, QaoaConfig, QaoaResult, TspInstance, DEFAULT_BUDGET};
use qsuppress::{BasisLabel, Distribution, Histogram};
use serde_json::json;

use crate::config::{RunConfig, DEFAULT_LAYERS, DEFAULT_SHOTS};
use crate::output::{fmt_float, Outputs};
use crate::UsageError;

pub struct Report {
    pub lines: Vec<String>,
    pub outputs: Outputs,
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| UsageError(format!("missing required argument --{flag}")).into())
}

fn labels(list: &str, n: usize, flag: &str) -> Result<Vec<BasisLabel>> {
    parse_label_list(list, n).with_context(|| format!("bad --{flag} value {list:?}"))
}

fn sample(dist: &Distribution, shots: u64, seed: u64) -> Result<Option<Histogram>> {
    if shots == 0 {
        return Ok(None);
    }
    Ok(Some(dist.sample(shots, seed)?))
}

/// `label,probability,counts`, one row per register label.
fn histogram_csv(dist: &Distribution, hist: Option<&Histogram>) -> String {
    let mut out = String::from("label,probability,counts\n");
    for (label, p) in dist.iter() {
        let counts = hist.map_or(0, |h| h.count(label.index()));
        writeln!(out, "{label},{},{counts}", fmt_float(p)).expect("string write");
    }
    out
}

fn sampled_mass(hist: Option<&Histogram>, indices: &[usize]) -> Option<f64> {
    hist.map(|h| indices.iter().map(|&i| h.count(i)).sum::<u64>() as f64 / h.shots() as f64)
}

pub fn grover(cfg: &RunConfig) -> Result<Report> {
    let n = required(cfg.n, "n")?;
    let targets = labels(&required(cfg.targets.clone(), "targets")?, n, "targets")?;
    let shots = cfg.shots.unwrap_or(DEFAULT_SHOTS);
    let spec = OracleSpec::from_desired(n, targets.iter().copied())?;
    let mut config = GroverConfig::new(spec.clone(), GroverMode::Classical);
    config.iterations = cfg.k;
    let run = run_grover(&config)?;

    let desired = spec.desired();
    let simulated = run.desired_probability(&spec);
    let closed = closed_form_success(spec.total_states(), desired.len(), run.iterations)?;
    let hist = sample(&run.register, shots, cfg.seed())?;

    let dir = cfg.out_dir();
    let mut outputs = Outputs::default();
    outputs.add(dir.join("histogram.csv"), histogram_csv(&run.register, hist.as_ref()));
    outputs.add_json(
        dir.join("summary.json"),
        json!({
            "command": "grover",
            "n": n,
            "targets": targets.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "iterations": run.iterations,
            "optimal_k": run.plan.optimal_k,
            "closed_form_probability": closed,
            "simulated_probability": simulated,
            "sampled_probability": sampled_mass(hist.as_ref(), &desired),
            "shots": shots,
            "seed": cfg.seed(),
        }),
    );
    Ok(Report {
        lines: vec![format!(
            "k={} P(targets) simulated {} closed form {}",
            run.iterations,
            fmt_float(simulated),
            fmt_float(closed)
        )],
        outputs,
    })
}

pub fn suppress(cfg: &RunConfig) -> Result<Report> {
    let n = required(cfg.n, "n")?;
    let undesired = labels(&required(cfg.undesired.clone(), "undesired")?, n, "undesired")?;
    let shots = cfg.shots.unwrap_or(DEFAULT_SHOTS);
    let spec = OracleSpec::new(n, undesired.iter().copied())?;
    let mut config = GroverConfig::new(spec.clone(), GroverMode::Suppression);
    config.iterations = cfg.k;
    let run = run_grover(&config)?;
    let sweep = if run.sweep.is_empty() { suppression_sweep(&config, run.plan.bound)? } else { run.sweep.clone() };

    let before = spec.undesired_count() as f64 / spec.total_states() as f64;
    let after = run.undesired_probability(&spec);
    let hist = sample(&run.register, shots, cfg.seed())?;
    let undesired_idx: Vec<usize> = spec.undesired().iter().copied().collect();

    let dir = cfg.out_dir();
    let mut outputs = Outputs::default();
    outputs.add(dir.join("histogram.csv"), histogram_csv(&run.register, hist.as_ref()));
    outputs.add_json(
        dir.join("summary.json"),
        json!({
            "command": "suppress",
            "n": n,
            "undesired": undesired.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "iterations": run.iterations,
            "bound": run.plan.bound,
            "undesired_probability_before": before,
            "undesired_probability_after": after,
            "sampled_undesired_probability": sampled_mass(hist.as_ref(), &undesired_idx),
            "sweep": sweep.iter().map(|p| json!({"k": p.k, "undesired_probability": p.undesired_probability})).collect::<Vec<_>>(),
            "shots": shots,
            "seed": cfg.seed(),
        }),
    );
    let table: Vec<String> = sweep.iter().map(|p| format!("k={}:{}", p.k, fmt_float(p.undesired_probability))).collect();
    Ok(Report {
        lines: vec![
            format!("k={} P(S) {} -> {}", run.iterations, fmt_float(before), fmt_float(after)),
            format!("sweep {}", table.join(" ")),
        ],
        outputs,
    })
}

pub fn depth_sweep(cfg: &RunConfig) -> Result<Report> {
    let n_min = cfg.n_min.unwrap_or(depth::MIN_SWEEP_QUBITS);
    let n_max = cfg.n_max.unwrap_or(depth::MAX_SWEEP_QUBITS);
    if n_min > n_max {
        return Err(UsageError(format!("--n-min {n_min} is above --n-max {n_max}")).into());
    }
    let rows = depth::sweep(n_min, n_max)?;
    let mut outputs = Outputs::default();
    outputs.add(cfg.out_dir().join("depth.csv"), depth::to_csv(&rows));
    let line = match depth::crossover(&rows) {
        Some(n) => format!("crossover n={n}"),
        None => "crossover none".to_string(),
    };
    Ok(Report { lines: vec![line], outputs })
}

fn load_instance(path: Option<&PathBuf>) -> Result<TspInstance> {
    match path {
        None => Ok(bundled_three_city()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading instance {}", p.display()))?;
            TspInstance::from_json(&text).with_context(|| format!("parsing instance {}", p.display()))
        }
    }
}

fn arm_json(r: &QaoaResult) -> serde_json::Value {
    json!({
        "best_expected_cost": r.best_expected_cost,
        "optimal_state_probability": r.optimal_state_probability,
        "gammas": r.gammas,
        "betas": r.betas,
        "evaluations": r.evaluations,
        "grover_iterations": r.grover_iterations,
        "initial_feasible_probability": r.initial_feasible_probability,
        "initial_optimal_state_probability": r.initial_optimal_state_probability,
    })
}

pub fn qaoa_compare(cfg: &RunConfig) -> Result<Report> {
    let instance = load_instance(cfg.instance.as_ref())?;
    let mut config = QaoaConfig::new(instance, cfg.p.unwrap_or(DEFAULT_LAYERS), qsuppress::qaoa::InitMode::Uniform);
    config.budget = cfg.budget.unwrap_or(DEFAULT_BUDGET);
    if config.budget == 0 {
        return Err(anyhow!("--budget must be at least 1"));
    }
    config.seed = cfg.seed();
    config.penalty = cfg.penalty;
    config.grover_iterations = cfg.grover_iterations;
    let cmp = compare_initializations(&config)?;

    let mut csv = String::from("mode,evaluation,best_expected_cost,optimal_state_probability\n");
    for arm in cmp.arms() {
        for t in &arm.trace {
            writeln!(
                csv,
                "{},{},{},{}",
                arm.mode.name(),
                t.evaluation,
                fmt_float(t.best_expected_cost),
                fmt_float(t.optimal_state_probability)
            )
            .expect("string write");
        }
    }

    let winner = cmp.winner().name();
    let (opt_label, opt_energy) = cmp.problem.optimum;
    let dir = cfg.out_dir();
    let mut outputs = Outputs::default();
    outputs.add(dir.join("comparison.csv"), csv);
    outputs.add_json(
        dir.join("summary.json"),
        json!({
            "command": "qaoa-compare",
            "cities": config.instance.cities,
            "qubits": config.instance.num_qubits(),
            "p": config.layers,
            "budget": config.budget,
            "seed": config.seed,
            "penalty": cmp.problem.encoding.penalty,
            "penalty_warning": cmp.problem.encoding.warning,
            "optimum": {"label": opt_label.to_string(), "energy": opt_energy},
            "optimal_labels": cmp.problem.optimal_indices.iter()
                .map(|&i| BasisLabel::new(i, config.instance.num_qubits()).map(|l| l.to_string()))
                .collect::<Result<Vec<_>, _>>()?,
            "uniform": arm_json(&cmp.uniform),
            "suppression": arm_json(&cmp.suppression),
            "winner": winner,
        }),
    );
    let mut lines: Vec<String> = cmp
        .arms()
        .iter()
        .map(|a| {
            format!(
                "{}: best cost {} P(optimal) {}",
                a.mode.name(),
                fmt_float(a.best_expected_cost),
                fmt_float(a.optimal_state_probability)
            )
        })
        .collect();
    if let Some(w) = &cmp.problem.encoding.warning {
        lines.push(format!("warning: {w}"));
    }
    lines.push(format!("winner {winner}"));
    Ok(Report { lines, outputs })
}
