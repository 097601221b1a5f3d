//! Oracle builders.
//!
//! Both oracles act on an `n`-qubit register (qubits `0..n`) plus one ancilla
//! at qubit `n`. Each flagged basis state contributes one multi-controlled X
//! onto the ancilla whose controls read that state.

use std::collections::BTreeSet;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{GateKind, GateOp};
use crate::label::BasisLabel;

use super::spec::{check_register, OracleSpec};

/// How a flagged basis state is recognized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleRealization {
    /// One MCX with open controls on the zero bits.
    #[default]
    Polarity,
    /// Closed controls only: X on each zero bit before and after the MCX.
    XConjugation,
}

/// Which side of the partition the suppression oracle lists explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Enumerate {
    /// Whichever of `S`, `S^∁` is smaller; `S` on ties.
    #[default]
    Smaller,
    Undesired,
    Desired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuppressionOptions {
    pub enumerate: Enumerate,
    /// Append an X on the ancilla after the Z.
    pub trailing_x: bool,
    pub realization: OracleRealization,
}

/// Gates flagging each index in `patterns` onto `ancilla`.
pub fn flag_gates(
    n: usize,
    ancilla: usize,
    patterns: impl IntoIterator<Item = usize>,
    realization: OracleRealization,
) -> impl Iterator<Item = GateOp> {
    let register_mask = (1u64 << n) - 1;
    patterns.into_iter().flat_map(move |p| {
        let (pattern, flips) = match realization {
            OracleRealization::Polarity => (p as u64, 0),
            OracleRealization::XConjugation => (register_mask, !p as u64 & register_mask),
        };
        let mcx = GateOp::with_control_pattern(GateKind::Mcx, ancilla, register_mask, pattern)
            .expect("register controls never include the ancilla");
        let xs = move || (0..n).filter(move |q| flips >> q & 1 == 1).map(GateOp::x);
        xs().chain(std::iter::once(mcx)).chain(xs())
    })
}

/// Phase oracle for a set of target states: one MCX per target onto the
/// ancilla. With the ancilla in `(|0⟩ − |1⟩)/√2` each target picks up `−1`.
pub fn build_classical_oracle(n: usize, targets: &[BasisLabel]) -> Result<Circuit> {
    build_classical_oracle_with(n, targets, OracleRealization::Polarity)
}

pub fn build_classical_oracle_with(
    n: usize,
    targets: &[BasisLabel],
    realization: OracleRealization,
) -> Result<Circuit> {
    check_register(n)?;
    if targets.is_empty() {
        return Err(Error::InvalidSpec("classical oracle needs at least one target".into()));
    }
    let mut seen = BTreeSet::new();
    for t in targets {
        if t.width() != n {
            return Err(Error::InvalidSpec(format!("target {t} is not {n} bits wide")));
        }
        if !seen.insert(t.index()) {
            return Err(Error::InvalidSpec(format!("duplicate target {t}")));
        }
    }
    let gates = flag_gates(n, n, targets.iter().map(|t| t.index()), realization);
    Circuit::from_gates(n + 1, gates)?.with_ancilla(n)
}

/// Resolves [`Enumerate::Smaller`] against a spec.
pub fn enumerated_side(spec: &OracleSpec, enumerate: Enumerate) -> Enumerate {
    match enumerate {
        Enumerate::Smaller if spec.desired_count() < spec.undesired_count() => Enumerate::Desired,
        Enumerate::Smaller => Enumerate::Undesired,
        e => e,
    }
}

/// Gate stream of the amplitude-suppression oracle.
///
/// Listing `S`: X on the ancilla, one MCX per state in `S`, then Z on the
/// ancilla. States in `S` return the ancilla to `|0⟩`; states in `S^∁` leave
/// it at `|1⟩` where the Z adds the `−1`. Listing `S^∁` drops the leading X
/// and flags `S^∁` directly, which is the same unitary.
pub fn suppression_gates(spec: &OracleSpec, options: SuppressionOptions) -> Result<Vec<GateOp>> {
    if spec.undesired().is_empty() {
        return Err(Error::InvalidSpec("suppression oracle needs a nonempty undesired set".into()));
    }
    let n = spec.n();
    let anc = n;
    let mut gates = Vec::new();
    match enumerated_side(spec, options.enumerate) {
        Enumerate::Desired => {
            gates.extend(flag_gates(n, anc, spec.desired(), options.realization));
        }
        _ => {
            gates.push(GateOp::x(anc));
            gates.extend(flag_gates(n, anc, spec.undesired().iter().copied(), options.realization));
        }
    }
    gates.push(GateOp::z(anc));
    if options.trailing_x {
        gates.push(GateOp::x(anc));
    }
    Ok(gates)
}

pub fn build_suppression_oracle(spec: &OracleSpec) -> Result<Circuit> {
    build_suppression_oracle_with(spec, SuppressionOptions::default())
}

pub fn build_suppression_oracle_with(spec: &OracleSpec, options: SuppressionOptions) -> Result<Circuit> {
    let gates = suppression_gates(spec, options)?;
    Circuit::from_gates(spec.n() + 1, gates)?.with_ancilla(spec.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{Control, Polarity};
    use crate::label::parse_label_list;

    fn labels(s: &str, n: usize) -> Vec<BasisLabel> {
        parse_label_list(s, n).unwrap()
    }

    #[test]
    fn single_target_controls() {
        let c = build_classical_oracle(3, &labels("001", 3)).unwrap();
        assert_eq!(c.len(), 1);
        let g = c.gates()[0];
        assert_eq!(g.target(), 3);
        let ctrls: Vec<_> = g.controls().collect();
        assert_eq!(ctrls, vec![Control::closed(0), Control::open(1), Control::open(2)]);
        assert_eq!(c.ancilla(), Some(3));
    }

    #[test]
    fn six_targets_six_gates() {
        let c = build_classical_oracle(3, &labels("001,010,011,100,101,110", 3)).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.gates().iter().all(|g| g.kind() == GateKind::Mcx));
    }

    #[test]
    fn classical_rejects_bad_targets() {
        assert!(build_classical_oracle(3, &[]).is_err());
        assert!(build_classical_oracle(3, &labels("001,001", 3)).is_err());
        assert!(build_classical_oracle(3, &labels("01", 2)).is_err());
    }

    #[test]
    fn x_conjugation_layout() {
        let c = build_classical_oracle_with(3, &labels("101", 3), OracleRealization::XConjugation).unwrap();
        assert_eq!(c.to_string(), "X t=1\nMCX t=3 c=0+,1+,2+\nX t=1\n");
    }

    #[test]
    fn suppression_layout_for_000_111() {
        let spec = OracleSpec::new(3, labels("000,111", 3)).unwrap();
        let c = build_suppression_oracle(&spec).unwrap();
        assert_eq!(c.to_string(), "X t=3\nMCX t=3 c=0-,1-,2-\nMCX t=3 c=0+,1+,2+\nZ t=3\n");
        let r = c.count_gates();
        assert_eq!((r.single_qubit_count, r.multi_controlled_count), (2, 2));

        let trailing = build_suppression_oracle_with(
            &spec,
            SuppressionOptions { trailing_x: true, ..Default::default() },
        )
        .unwrap();
        assert_eq!(trailing.count_gates().total, 5);
    }

    #[test]
    fn suppression_two_qubit_register() {
        let spec = OracleSpec::new(2, labels("00,11", 2)).unwrap();
        let c = build_suppression_oracle(&spec).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.gates()[1..3].iter().all(|g| g.num_controls() == 2));
        assert!(c.gates()[1].controls().all(|c| c.polarity == Polarity::Open));
    }

    #[test]
    fn smaller_side_is_enumerated() {
        let spec = OracleSpec::from_desired(4, labels("1001,0110", 4)).unwrap();
        let c = build_suppression_oracle(&spec).unwrap();
        // two MCX + Z, no leading X
        assert_eq!(c.len(), 3);
        assert_eq!(c.gates()[0].kind(), GateKind::Mcx);
        let forced = build_suppression_oracle_with(
            &spec,
            SuppressionOptions { enumerate: Enumerate::Undesired, ..Default::default() },
        )
        .unwrap();
        assert_eq!(forced.len(), 16);
    }

    #[test]
    fn suppression_rejects_empty_set() {
        let spec = OracleSpec::new(2, []).unwrap();
        assert!(matches!(build_suppression_oracle(&spec), Err(Error::InvalidSpec(_))));
    }
}
