//! QAOA on a one-hot TSP encoding, with either a uniform start or a start
//! prepared by the amplitude-suppression search over the infeasible strings.

mod ansatz;
mod qubo;
mod tsp;

pub use ansatz::{expected_energy, qaoa_expected_cost, qaoa_state};
pub use qubo::{brute_force_min, qubo_to_ising, IsingModel, Qubo, MAX_BRUTE_FORCE_VARS};
pub use tsp::{default_penalty, feasible_labels, tsp_to_qubo, TspEncoding, TspInstance, MAX_CITIES};

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::grover::{run_grover, GroverConfig, GroverMode, OracleSpec, SweepPoint};
use crate::label::BasisLabel;
use crate::optim::{minimize, MultiStartOptions, PeriodicBox};
use crate::state::{Distribution, StateVector};

/// Energies within this of the minimum count as optimal.
pub const OPTIMUM_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_BUDGET: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitMode {
    Uniform,
    Suppression,
}

impl InitMode {
    pub fn name(self) -> &'static str {
        match self {
            InitMode::Uniform => "uniform",
            InitMode::Suppression => "suppression",
        }
    }
}

/// QAOA starting state.
#[derive(Debug, Clone)]
pub struct InitialState {
    pub mode: InitMode,
    /// Problem register, plus the Grover ancilla on top in suppression mode.
    pub state: StateVector,
    pub register_qubits: usize,
    pub grover_iterations: usize,
    pub feasible_probability: f64,
    /// Infeasible-mass sweep used to pick `grover_iterations`.
    pub sweep: Vec<SweepPoint>,
}

impl InitialState {
    pub fn register_distribution(&self) -> Result<Distribution> {
        self.state.register_probabilities(self.register_qubits)
    }
}

/// Uniform superposition, or the suppression search with `S` = infeasible
/// strings. The search keeps its ancilla so the returned state is pure; QAOA
/// treats that qubit as a spectator, which is the same as running on the
/// register's reduced state.
pub fn build_initial_state(
    mode: InitMode,
    instance: &TspInstance,
    grover_iterations: Option<usize>,
) -> Result<InitialState> {
    let n = instance.num_qubits();
    let feasible = feasible_labels(instance)?;
    let spec = OracleSpec::from_desired(n, feasible.iter().copied())?;
    match mode {
        InitMode::Uniform => {
            let state = StateVector::uniform(n)?;
            let feasible_probability = state.probabilities().mass(&spec.desired());
            Ok(InitialState {
                mode,
                state,
                register_qubits: n,
                grover_iterations: 0,
                feasible_probability,
                sweep: Vec::new(),
            })
        }
        InitMode::Suppression => {
            let mut config = GroverConfig::new(spec.clone(), GroverMode::Suppression);
            config.iterations = grover_iterations;
            let run = run_grover(&config)?;
            Ok(InitialState {
                mode,
                feasible_probability: run.desired_probability(&spec),
                state: run.state,
                register_qubits: n,
                grover_iterations: run.iterations,
                sweep: run.sweep,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaConfig {
    pub instance: TspInstance,
    pub layers: usize,
    pub mode: InitMode,
    pub budget: usize,
    pub seed: u64,
    /// Defaults to [`default_penalty`].
    pub penalty: Option<f64>,
    /// Defaults to the sweep minimum.
    pub grover_iterations: Option<usize>,
}

impl QaoaConfig {
    pub fn new(instance: TspInstance, layers: usize, mode: InitMode) -> Self {
        Self { instance, layers, mode, budget: DEFAULT_BUDGET, seed: 0, penalty: None, grover_iterations: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub evaluation: usize,
    /// Best expected cost seen so far.
    pub best_expected_cost: f64,
    /// Optimal-state probability at that best point.
    pub optimal_state_probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaResult {
    pub mode: InitMode,
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub best_expected_cost: f64,
    pub final_distribution: Distribution,
    pub optimal_state_probability: f64,
    pub evaluations: usize,
    pub trace: Vec<TracePoint>,
    pub initial_feasible_probability: f64,
    pub initial_optimal_state_probability: f64,
    pub grover_iterations: usize,
}

/// Encoded problem shared by both arms of a comparison.
#[derive(Debug, Clone)]
pub struct Problem {
    pub encoding: TspEncoding,
    pub ising: IsingModel,
    pub energies: Vec<f64>,
    pub optimum: (BasisLabel, f64),
    pub optimal_indices: Vec<usize>,
}

impl Problem {
    pub fn new(instance: &TspInstance, penalty: Option<f64>) -> Result<Self> {
        let encoding = tsp_to_qubo(instance, penalty.unwrap_or_else(|| default_penalty(instance)))?;
        let ising = qubo_to_ising(&encoding.qubo);
        let energies = ising.diagonal();
        let optimum = brute_force_min(&encoding.qubo)?;
        let optimal_indices = (0..energies.len())
            .filter(|&i| encoding.qubo.evaluate(i) <= optimum.1 + OPTIMUM_TOLERANCE)
            .collect();
        Ok(Self { encoding, ising, energies, optimum, optimal_indices })
    }

    fn measure(&self, gammas: &[f64], betas: &[f64], initial: &InitialState) -> Result<(f64, Distribution)> {
        let out = qaoa_state(&self.energies, gammas, betas, &initial.state)?;
        let dist = out.register_probabilities(initial.register_qubits)?;
        Ok((expected_energy(&self.energies, &dist), dist))
    }
}

pub fn optimize_qaoa(config: &QaoaConfig) -> Result<QaoaResult> {
    let problem = Problem::new(&config.instance, config.penalty)?;
    optimize_on(&problem, config)
}

fn optimize_on(problem: &Problem, config: &QaoaConfig) -> Result<QaoaResult> {
    let initial = build_initial_state(config.mode, &config.instance, config.grover_iterations)?;
    let p = config.layers;
    let split = |x: &[f64]| (x[..p].to_vec(), x[p..].to_vec());

    let (initial_cost, initial_dist) = problem.measure(&[], &[], &initial)?;
    let initial_opt = initial_dist.mass(&problem.optimal_indices);

    let domain = PeriodicBox {
        lower: vec![0.0; 2 * p],
        period: std::iter::repeat_n(2.0 * PI, p).chain(std::iter::repeat_n(PI, p)).collect(),
    };
    let mut optimal_mass = Vec::with_capacity(config.budget);
    let mut failure = None;
    let result = minimize(
        |x| {
            let (g, b) = split(x);
            match problem.measure(&g, &b, &initial) {
                Ok((cost, dist)) => {
                    optimal_mass.push(dist.mass(&problem.optimal_indices));
                    cost
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    optimal_mass.push(0.0);
                    f64::NAN
                }
            }
        },
        &domain,
        &vec![0.0; 2 * p],
        &MultiStartOptions::new(config.budget.max(1), config.seed),
    );
    if let Some(e) = failure {
        return Err(e);
    }

    let trace = if p == 0 {
        vec![TracePoint { evaluation: 0, best_expected_cost: initial_cost, optimal_state_probability: initial_opt }]
    } else {
        result
            .best_index_trace
            .iter()
            .enumerate()
            .map(|(evaluation, &b)| TracePoint {
                evaluation,
                best_expected_cost: result.values[b],
                optimal_state_probability: optimal_mass[b],
            })
            .collect()
    };

    let (gammas, betas) = split(&result.best_point);
    let (best_expected_cost, final_distribution) = problem.measure(&gammas, &betas, &initial)?;
    let optimal_state_probability = final_distribution.mass(&problem.optimal_indices);
    Ok(QaoaResult {
        mode: config.mode,
        gammas,
        betas,
        best_expected_cost,
        final_distribution,
        optimal_state_probability,
        evaluations: if p == 0 { 0 } else { result.evaluations },
        trace,
        initial_feasible_probability: initial.feasible_probability,
        initial_optimal_state_probability: initial_opt,
        grover_iterations: initial.grover_iterations,
    })
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub problem: Problem,
    pub uniform: QaoaResult,
    pub suppression: QaoaResult,
}

impl Comparison {
    /// Arm with the higher optimal-state probability; suppression on ties.
    pub fn winner(&self) -> InitMode {
        if self.uniform.optimal_state_probability > self.suppression.optimal_state_probability {
            InitMode::Uniform
        } else {
            InitMode::Suppression
        }
    }

    pub fn arms(&self) -> [&QaoaResult; 2] {
        [&self.uniform, &self.suppression]
    }
}

/// Runs both arms with the same instance, seed, layer count and budget.
/// `config.mode` is ignored.
pub fn compare_initializations(config: &QaoaConfig) -> Result<Comparison> {
    let problem = Problem::new(&config.instance, config.penalty)?;
    let arm = |mode| optimize_on(&problem, &QaoaConfig { mode, ..config.clone() });
    let uniform = arm(InitMode::Uniform)?;
    let suppression = arm(InitMode::Suppression)?;
    Ok(Comparison { problem, uniform, suppression })
}

/// The 3-city instance used throughout the docs and acceptance tests.
pub fn bundled_three_city() -> TspInstance {
    TspInstance::new(vec![vec![0.0, 1.0, 4.0], vec![1.0, 0.0, 2.0], vec![4.0, 2.0, 0.0]])
        .expect("bundled instance is valid")
}
