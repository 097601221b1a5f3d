//! Reflections about a prepared state.

use std::f64::consts::PI;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Control, GateOp};

/// `H` on each of qubits `0..n` in a `width`-qubit circuit.
pub fn hadamard_layer(n: usize, width: usize) -> Result<Circuit> {
    Circuit::from_gates(width, (0..n).map(GateOp::h))
}

/// `A(2|0⟩⟨0| − I)A†` with the zero projector taken over qubits `0..span`.
///
/// Realized as `A†`, X on the span, an MCZ firing on all ones, X on the span,
/// then `A`. That sequence gives `A(I − 2|0⟩⟨0|)A†`; the circuit carries a
/// global phase of `π` so its matrix is the reflection exactly.
pub fn build_reflection(prep: &Circuit, span: usize) -> Result<Circuit> {
    if span == 0 {
        return Err(Error::InvalidSize("reflection over zero qubits".into()));
    }
    let width = prep.num_qubits().max(span);
    let prep = prep.widen(width)?;
    let mut c = prep.adjoint().with_global_phase(0.0);
    c.extend((0..span).map(GateOp::x))?;
    let top = span - 1;
    if span == 1 {
        c.push(GateOp::z(top))?;
    } else {
        let controls: Vec<Control> = (0..top).map(Control::closed).collect();
        c.push(GateOp::mcz(top, &controls)?)?;
    }
    c.extend((0..span).map(GateOp::x))?;
    let c = c.compose(&prep.with_global_phase(0.0))?;
    Ok(c.with_global_phase(PI))
}

/// Diffuser spanning `q` qubits, the top one being the ancilla.
///
/// Hadamards act on the register `0..q-1`; the conditional phase covers all
/// `q` qubits including the ancilla. This is the diffuser of the
/// amplitude-suppression search.
pub fn build_diffuser(q: usize) -> Result<Circuit> {
    if q < 2 {
        return Err(Error::InvalidSize(format!("diffuser needs register plus ancilla, got {q} qubits")));
    }
    build_reflection(&hadamard_layer(q - 1, q)?, q)?.with_ancilla(q - 1)
}

/// Textbook diffuser `2|ψ⟩⟨ψ| − I` on register qubits `0..n`, embedded in a
/// `width`-qubit circuit. Qubits above `n` are untouched.
pub fn build_register_diffuser(n: usize, width: usize) -> Result<Circuit> {
    if n == 0 || width < n {
        return Err(Error::InvalidSize(format!("register diffuser on {n} of {width} qubits")));
    }
    build_reflection(&hadamard_layer(n, width)?, n)
}

/// The diffuser column sequence as drawn for a register plus ancilla: H on the
/// register, X on every qubit, H on the ancilla, an MCX from the register onto
/// the ancilla, H on the ancilla, X on every qubit, H on the register.
///
/// On an ancilla in `|0⟩` this equals `−(2|ψ0⟩⟨ψ0| − I)`. It is not a
/// register-only operation when the ancilla is in `(|0⟩ − |1⟩)/√2`.
pub fn build_drawn_diffuser(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::InvalidSize("empty register".into()));
    }
    let anc = n;
    let mut c = Circuit::new(n + 1);
    c.extend((0..n).map(GateOp::h))?;
    c.extend((0..=n).map(GateOp::x))?;
    c.push(GateOp::h(anc))?;
    let controls: Vec<Control> = (0..n).map(Control::closed).collect();
    c.push(GateOp::mcx(anc, &controls)?)?;
    c.push(GateOp::h(anc))?;
    c.extend((0..=n).map(GateOp::x))?;
    c.extend((0..n).map(GateOp::h))?;
    c.with_ancilla(anc)
}
