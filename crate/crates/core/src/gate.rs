//! Gate instances.
//!
//! Controls are stored as a pair of bitmasks: `control_mask` selects the
//! control qubits and `control_value` holds the bit each control must read for
//! the gate to fire. A closed control (●) fires on `|1⟩`, an open control (○)
//! on `|0⟩`.

use std::fmt;

use crate::error::{Error, Result};

/// Hard limit imposed by the `u64` control masks.
pub const MAX_GATE_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Z,
    /// Multi-controlled X (generalized Toffoli).
    Mcx,
    /// Multi-controlled Z.
    Mcz,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Mcx => "MCX",
            GateKind::Mcz => "MCZ",
        }
    }

    pub fn is_controlled(self) -> bool {
        matches!(self, GateKind::Mcx | GateKind::Mcz)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires on `|1⟩`.
    Closed,
    /// Fires on `|0⟩`.
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn closed(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Closed }
    }

    pub fn open(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Open }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GateOp {
    kind: GateKind,
    target: usize,
    control_mask: u64,
    control_value: u64,
}

impl GateOp {
    pub fn h(target: usize) -> Self {
        Self::single(GateKind::H, target)
    }

    pub fn x(target: usize) -> Self {
        Self::single(GateKind::X, target)
    }

    pub fn z(target: usize) -> Self {
        Self::single(GateKind::Z, target)
    }

    fn single(kind: GateKind, target: usize) -> Self {
        Self { kind, target, control_mask: 0, control_value: 0 }
    }

    pub fn mcx(target: usize, controls: &[Control]) -> Result<Self> {
        Self::controlled(GateKind::Mcx, target, controls)
    }

    pub fn mcz(target: usize, controls: &[Control]) -> Result<Self> {
        Self::controlled(GateKind::Mcz, target, controls)
    }

    pub fn controlled(kind: GateKind, target: usize, controls: &[Control]) -> Result<Self> {
        if !kind.is_controlled() {
            return Err(Error::InvalidGate(format!("{} takes no controls", kind.name())));
        }
        if controls.is_empty() {
            return Err(Error::InvalidGate(format!("{} needs at least one control", kind.name())));
        }
        if target >= MAX_GATE_QUBITS {
            return Err(Error::InvalidGate(format!("target {target} out of range")));
        }
        let mut mask = 0u64;
        let mut value = 0u64;
        for c in controls {
            if c.qubit >= MAX_GATE_QUBITS {
                return Err(Error::InvalidGate(format!("control {} out of range", c.qubit)));
            }
            if c.qubit == target {
                return Err(Error::InvalidGate(format!("qubit {target} is both target and control")));
            }
            let bit = 1u64 << c.qubit;
            if mask & bit != 0 {
                return Err(Error::InvalidGate(format!("duplicate control on qubit {}", c.qubit)));
            }
            mask |= bit;
            if c.polarity == Polarity::Closed {
                value |= bit;
            }
        }
        Ok(Self { kind, target, control_mask: mask, control_value: value })
    }

    /// Controlled gate whose controls fire exactly on `pattern` restricted to
    /// `mask`. `pattern` bits outside `mask` are ignored.
    pub fn with_control_pattern(kind: GateKind, target: usize, mask: u64, pattern: u64) -> Result<Self> {
        if !kind.is_controlled() {
            return Err(Error::InvalidGate(format!("{} takes no controls", kind.name())));
        }
        if mask == 0 {
            return Err(Error::InvalidGate(format!("{} needs at least one control", kind.name())));
        }
        if target >= MAX_GATE_QUBITS {
            return Err(Error::InvalidGate(format!("target {target} out of range")));
        }
        if mask >> target & 1 == 1 {
            return Err(Error::InvalidGate(format!("qubit {target} is both target and control")));
        }
        Ok(Self { kind, target, control_mask: mask, control_value: pattern & mask })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn control_mask(&self) -> u64 {
        self.control_mask
    }

    pub fn control_value(&self) -> u64 {
        self.control_value
    }

    pub fn num_controls(&self) -> usize {
        self.control_mask.count_ones() as usize
    }

    /// Controls in ascending qubit order.
    pub fn controls(&self) -> impl Iterator<Item = Control> + '_ {
        (0..MAX_GATE_QUBITS)
            .filter(move |q| self.control_mask >> q & 1 == 1)
            .map(move |q| Control {
                qubit: q,
                polarity: if self.control_value >> q & 1 == 1 { Polarity::Closed } else { Polarity::Open },
            })
    }

    /// Highest qubit index touched plus one.
    pub fn span(&self) -> usize {
        let ctrl = MAX_GATE_QUBITS - self.control_mask.leading_zeros() as usize;
        ctrl.max(self.target + 1)
    }

    pub fn check_width(&self, num_qubits: usize) -> Result<()> {
        if self.span() > num_qubits {
            return Err(Error::InvalidGate(format!(
                "{self} touches qubit {} but the circuit has {num_qubits}",
                self.span() - 1
            )));
        }
        Ok(())
    }

    /// Whether the controls fire on basis index `index`.
    #[inline]
    pub fn fires_on(&self, index: usize) -> bool {
        (index as u64) & self.control_mask == self.control_value
    }

    /// Every supported gate is self-inverse.
    pub fn inverse(&self) -> Self {
        *self
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} t={}", self.kind.name(), self.target)?;
        if self.control_mask != 0 {
            f.write_str(" c=")?;
            for (i, c) in self.controls().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                let sign = match c.polarity {
                    Polarity::Closed => '+',
                    Polarity::Open => '-',
                };
                write!(f, "{}{}", c.qubit, sign)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_format() {
        let g = GateOp::mcx(3, &[Control::closed(0), Control::open(1), Control::closed(2)]).unwrap();
        assert_eq!(g.to_string(), "MCX t=3 c=0+,1-,2+");
        assert_eq!(GateOp::h(2).to_string(), "H t=2");
    }

    #[test]
    fn rejects_malformed_controls() {
        assert!(GateOp::mcx(0, &[]).is_err());
        assert!(GateOp::mcx(0, &[Control::closed(0)]).is_err());
        assert!(GateOp::mcz(1, &[Control::closed(0), Control::open(0)]).is_err());
        assert!(GateOp::controlled(GateKind::H, 1, &[Control::closed(0)]).is_err());
    }

    #[test]
    fn polarity_masks() {
        let g = GateOp::mcx(0, &[Control::closed(1), Control::open(2)]).unwrap();
        assert!(g.fires_on(0b010));
        assert!(g.fires_on(0b011));
        assert!(!g.fires_on(0b110));
        assert_eq!(g.span(), 3);
        assert!(g.check_width(2).is_err());
    }

    #[test]
    fn pattern_constructor_matches_explicit_controls() {
        let a = GateOp::with_control_pattern(GateKind::Mcx, 3, 0b111, 0b101).unwrap();
        let b = GateOp::mcx(3, &[Control::closed(0), Control::open(1), Control::closed(2)]).unwrap();
        assert_eq!(a, b);
    }
}
