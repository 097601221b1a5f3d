//! Dense-unitary reference evaluator.
//!
//! Builds the full `2^q × 2^q` matrix of every gate from its defining 2×2
//! kernel and multiplies them out. It shares no code with the stride loops in
//! [`crate::state`], so the two can be checked against each other.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{GateKind, GateOp, Polarity};
use crate::state::StateVector;

/// Largest circuit [`dense_unitary`] will expand.
pub const MAX_DENSE_QUBITS: usize = 12;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidSize("matrix rows are ragged".into()));
        }
        Ok(Self { dim, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self { dim: self.dim, data: vec![ZERO; self.data.len()] };
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|v| v * factor).collect() }
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |U†U − I|` elementwise.
    pub fn unitarity_error(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&DenseMatrix::identity(self.dim))
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.dim() != self.dim {
            return Err(Error::Shape {
                expected: self.dim.trailing_zeros() as usize,
                found: state.num_qubits(),
            });
        }
        let v = state.amplitudes();
        let out: Vec<Complex64> = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect();
        // unitary × unit vector: renormalizing would hide errors, so only check
        StateVector::from_amplitudes(out)
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = DenseMatrix { dim: n, data: vec![ZERO; n * n] };
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

fn kernel(kind: GateKind) -> [[Complex64; 2]; 2] {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    match kind {
        GateKind::H => [[s, s], [s, -s]],
        GateKind::X | GateKind::Mcx => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Z | GateKind::Mcz => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// Full matrix of one gate acting on `q` qubits.
pub fn gate_matrix(gate: &GateOp, q: usize) -> Result<DenseMatrix> {
    gate.check_width(q)?;
    let dim = 1usize << q;
    let k = kernel(gate.kind());
    let controls: Vec<_> = gate.controls().collect();
    let t = gate.target();
    let mut m = DenseMatrix { dim, data: vec![ZERO; dim * dim] };
    for col in 0..dim {
        let active = controls.iter().all(|c| {
            let bit = (col >> c.qubit) & 1 == 1;
            match c.polarity {
                Polarity::Closed => bit,
                Polarity::Open => !bit,
            }
        });
        if !active {
            m.set(col, col, ONE);
            continue;
        }
        let col_bit = (col >> t) & 1;
        for row_bit in 0..2 {
            let row = (col & !(1 << t)) | (row_bit << t);
            m.set(row, col, k[row_bit][col_bit]);
        }
    }
    Ok(m)
}

/// Matrix of the whole circuit including its global phase.
pub fn dense_unitary(circuit: &Circuit) -> Result<DenseMatrix> {
    let q = circuit.num_qubits();
    if q == 0 || q > MAX_DENSE_QUBITS {
        return Err(Error::InvalidSize(format!(
            "dense expansion supports 1..={MAX_DENSE_QUBITS} qubits, got {q}"
        )));
    }
    let mut u = DenseMatrix::identity(1 << q);
    for g in circuit.gates() {
        u = &gate_matrix(g, q)? * &u;
    }
    if circuit.global_phase() != 0.0 {
        u = u.scaled(Complex64::from_polar(1.0, circuit.global_phase()));
    }
    Ok(u)
}
