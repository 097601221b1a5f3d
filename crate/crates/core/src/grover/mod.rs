//! Grover search and its amplitude-suppression variant.
//!
//! Register qubits are `0..n`; the ancilla is qubit `n`.
//!
//! * Classical mode prepares the ancilla in `(|0⟩ − |1⟩)/√2`, flags every
//!   desired state with an MCX onto it, and reflects the register about the
//!   prepared state.
//! * Suppression mode leaves the ancilla in `|0⟩`, flags the undesired set
//!   `S` (or its complement, whichever is smaller) and reflects about
//!   `|ψ⟩|0⟩` over all `n + 1` qubits.

mod diffuser;
mod oracle;
mod schedule;
mod spec;

pub use diffuser::{build_diffuser, build_drawn_diffuser, build_reflection, build_register_diffuser, hadamard_layer};
pub use oracle::{
    build_classical_oracle, build_classical_oracle_with, build_suppression_oracle, build_suppression_oracle_with,
    enumerated_side, flag_gates, suppression_gates, Enumerate, OracleRealization, SuppressionOptions,
};
pub use schedule::{closed_form_success, plan_iterations, IterationPlan};
pub use spec::{OracleSpec, MAX_REGISTER_QUBITS};

use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::GateOp;
use crate::state::{Distribution, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroverMode {
    Classical,
    Suppression,
}

#[derive(Debug, Clone)]
pub struct GroverConfig {
    pub spec: OracleSpec,
    pub mode: GroverMode,
    /// `None` picks the count automatically: `optimal_k` for classical runs,
    /// the best point of a `1..=⌈N/M⌉` sweep for suppression runs.
    pub iterations: Option<usize>,
    /// Register preparation `A`; Hadamards on every register qubit when unset.
    pub state_prep: Option<Circuit>,
    pub suppression: SuppressionOptions,
}

impl GroverConfig {
    pub fn new(spec: OracleSpec, mode: GroverMode) -> Self {
        Self { spec, mode, iterations: None, state_prep: None, suppression: SuppressionOptions::default() }
    }

    pub fn iterations(mut self, k: usize) -> Self {
        self.iterations = Some(k);
        self
    }

    pub fn state_prep(mut self, prep: Circuit) -> Self {
        self.state_prep = Some(prep);
        self
    }

    pub fn suppression_options(mut self, options: SuppressionOptions) -> Self {
        self.suppression = options;
        self
    }
}

/// Preparation circuit and one Grover round, both `n + 1` qubits wide.
#[derive(Debug, Clone)]
pub struct GroverCircuits {
    pub prep: Circuit,
    pub oracle: Circuit,
    pub diffuser: Circuit,
}

impl GroverCircuits {
    pub fn step(&self) -> Result<Circuit> {
        self.oracle.compose(&self.diffuser)
    }

    /// Preparation followed by `k` rounds.
    pub fn full(&self, k: usize) -> Result<Circuit> {
        let step = self.step()?;
        let mut c = self.prep.clone();
        for _ in 0..k {
            c = c.compose(&step)?;
        }
        Ok(c)
    }
}

pub fn grover_circuits(config: &GroverConfig) -> Result<GroverCircuits> {
    let n = config.spec.n();
    let width = n + 1;
    let register_prep = match &config.state_prep {
        Some(a) if a.num_qubits() != n => {
            return Err(Error::Shape { expected: n, found: a.num_qubits() });
        }
        Some(a) => a.clone(),
        None => hadamard_layer(n, n)?,
    };
    let wide_prep = register_prep.widen(width)?;
    match config.mode {
        GroverMode::Classical => {
            let mut prep = wide_prep.clone();
            prep.extend([GateOp::x(n), GateOp::h(n)])?;
            let oracle = build_classical_oracle(n, &config.spec.desired_labels())?;
            let diffuser = build_reflection(&wide_prep, n)?.with_ancilla(n)?;
            Ok(GroverCircuits { prep: prep.with_ancilla(n)?, oracle, diffuser })
        }
        GroverMode::Suppression => {
            let oracle = build_suppression_oracle_with(&config.spec, config.suppression)?;
            let diffuser = build_reflection(&wide_prep, width)?.with_ancilla(n)?;
            Ok(GroverCircuits { prep: wide_prep.with_ancilla(n)?, oracle, diffuser })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub k: usize,
    pub undesired_probability: f64,
}

#[derive(Debug, Clone)]
pub struct GroverRun {
    pub iterations: usize,
    pub plan: IterationPlan,
    /// Register distribution with the ancilla summed out.
    pub register: Distribution,
    /// Full register + ancilla state.
    pub state: StateVector,
    /// Filled when the iteration count was chosen by sweeping.
    pub sweep: Vec<SweepPoint>,
}

impl GroverRun {
    pub fn undesired_probability(&self, spec: &OracleSpec) -> f64 {
        self.register.mass(spec.undesired())
    }

    pub fn desired_probability(&self, spec: &OracleSpec) -> f64 {
        1.0 - self.undesired_probability(spec)
    }
}

pub fn run_grover(config: &GroverConfig) -> Result<GroverRun> {
    let plan = plan_iterations(&config.spec, config.mode)?;
    let circuits = grover_circuits(config)?;
    let n = config.spec.n();
    let mut state = StateVector::zero(n + 1)?;
    state.run(&circuits.prep)?;
    match (config.iterations, config.mode) {
        (Some(k), _) => {
            let step = circuits.step()?;
            for _ in 0..k {
                state.run(&step)?;
            }
            finish(state, k, plan, n, Vec::new())
        }
        (None, GroverMode::Classical) => {
            let step = circuits.step()?;
            for _ in 0..plan.optimal_k {
                state.run(&step)?;
            }
            finish(state, plan.optimal_k, plan, n, Vec::new())
        }
        (None, GroverMode::Suppression) => {
            let (best, sweep) = sweep_from(&config.spec, &circuits, state, plan.bound)?;
            finish(best.1, best.0, plan, n, sweep)
        }
    }
}

fn finish(state: StateVector, k: usize, plan: IterationPlan, n: usize, sweep: Vec<SweepPoint>) -> Result<GroverRun> {
    let register = state.register_probabilities(n)?;
    Ok(GroverRun { iterations: k, plan, register, state, sweep })
}

/// Undesired-set probability after each of `1..=max_k` rounds.
pub fn suppression_sweep(config: &GroverConfig, max_k: usize) -> Result<Vec<SweepPoint>> {
    let circuits = grover_circuits(config)?;
    let mut state = StateVector::zero(config.spec.n() + 1)?;
    state.run(&circuits.prep)?;
    Ok(sweep_from(&config.spec, &circuits, state, max_k)?.1)
}

/// Runs `1..=max_k` rounds, returning the state with the smallest undesired
/// probability (earliest on ties) and the whole table.
fn sweep_from(
    spec: &OracleSpec,
    circuits: &GroverCircuits,
    mut state: StateVector,
    max_k: usize,
) -> Result<((usize, StateVector), Vec<SweepPoint>)> {
    let step = circuits.step()?;
    let n = spec.n();
    let mut best: Option<(usize, f64, StateVector)> = None;
    let mut table = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        state.run(&step)?;
        let p = state.register_probabilities(n)?.mass(spec.undesired());
        table.push(SweepPoint { k, undesired_probability: p });
        if best.as_ref().is_none_or(|(_, bp, _)| p < *bp) {
            best = Some((k, p, state.clone()));
        }
    }
    match best {
        Some((k, _, s)) => Ok(((k, s), table)),
        None => Ok(((0, state), table)),
    }
}
