//! Flat gate lists with composition, adjoint and gate counting.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::GateOp;

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<GateOp>,
    ancilla: Option<usize>,
    /// Global phase `φ` in radians; the circuit implements `e^{iφ}·U`.
    global_phase: f64,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, gates: Vec::new(), ancilla: None, global_phase: 0.0 }
    }

    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = GateOp>) -> Result<Self> {
        let mut c = Self::new(num_qubits);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn with_ancilla(mut self, ancilla: usize) -> Result<Self> {
        if ancilla >= self.num_qubits {
            return Err(Error::InvalidGate(format!(
                "ancilla {ancilla} outside a {}-qubit circuit",
                self.num_qubits
            )));
        }
        self.ancilla = Some(ancilla);
        Ok(self)
    }

    pub fn with_global_phase(mut self, phase: f64) -> Self {
        self.global_phase = phase;
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    pub fn ancilla(&self) -> Option<usize> {
        self.ancilla
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: GateOp) -> Result<()> {
        gate.check_width(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = GateOp>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::Shape { expected: self.num_qubits, found: other.num_qubits });
        }
        let mut gates = Vec::with_capacity(self.len() + other.len());
        gates.extend_from_slice(&self.gates);
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            num_qubits: self.num_qubits,
            gates,
            ancilla: self.ancilla.or(other.ancilla),
            global_phase: normalize_phase(self.global_phase + other.global_phase),
        })
    }

    /// Reversed gate list with each gate inverted.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(GateOp::inverse).collect(),
            ancilla: self.ancilla,
            global_phase: normalize_phase(-self.global_phase),
        }
    }

    /// Re-embeds this circuit into a wider one; qubit indices are unchanged.
    pub fn widen(&self, num_qubits: usize) -> Result<Circuit> {
        if num_qubits < self.num_qubits {
            return Err(Error::Shape { expected: self.num_qubits, found: num_qubits });
        }
        Ok(Circuit { num_qubits, ..self.clone() })
    }

    pub fn count_gates(&self) -> GateCountReport {
        GateCountReport::tally(&self.gates)
    }
}

fn normalize_phase(phase: f64) -> f64 {
    let p = phase.rem_euclid(2.0 * PI);
    // keep exact multiples of π exact
    if (p - PI).abs() < 1e-15 {
        PI
    } else if p.abs() < 1e-15 || (p - 2.0 * PI).abs() < 1e-15 {
        0.0
    } else {
        p
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Gate totals: H, X and Z count one each as single-qubit gates, and every
/// multi-controlled gate counts one regardless of how many controls it has.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GateCountReport {
    pub single_qubit_count: u64,
    pub multi_controlled_count: u64,
    pub total: u64,
}

impl GateCountReport {
    pub fn tally<'a>(gates: impl IntoIterator<Item = &'a GateOp>) -> Self {
        let mut report = Self::default();
        for g in gates {
            report.add(g);
        }
        report
    }

    pub fn add(&mut self, gate: &GateOp) {
        if gate.kind().is_controlled() {
            self.multi_controlled_count += 1;
        } else {
            self.single_qubit_count += 1;
        }
        self.total += 1;
    }
}

impl std::ops::Add for GateCountReport {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            single_qubit_count: self.single_qubit_count + rhs.single_qubit_count,
            multi_controlled_count: self.multi_controlled_count + rhs.multi_controlled_count,
            total: self.total + rhs.total,
        }
    }
}
