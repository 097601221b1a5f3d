use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::label::BasisLabel;

/// Partition of an `n`-qubit register into undesired states `S` and desired
/// states `S^∁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSpec {
    n: usize,
    undesired: BTreeSet<usize>,
}

/// Register sizes above this are refused by every builder.
pub const MAX_REGISTER_QUBITS: usize = 40;

impl OracleSpec {
    /// `S` may be empty but must not cover the whole register.
    pub fn new(n: usize, undesired: impl IntoIterator<Item = BasisLabel>) -> Result<Self> {
        check_register(n)?;
        let mut set = BTreeSet::new();
        for label in undesired {
            if label.width() != n {
                return Err(Error::InvalidSpec(format!("label {label} is not {n} bits wide")));
            }
            if !set.insert(label.index()) {
                return Err(Error::InvalidSpec(format!("duplicate label {label}")));
            }
        }
        Self::from_indices(n, set)
    }

    /// Builds the spec from `S^∁` instead.
    pub fn from_desired(n: usize, desired: impl IntoIterator<Item = BasisLabel>) -> Result<Self> {
        check_register(n)?;
        let mut wanted = BTreeSet::new();
        for label in desired {
            if label.width() != n {
                return Err(Error::InvalidSpec(format!("label {label} is not {n} bits wide")));
            }
            if !wanted.insert(label.index()) {
                return Err(Error::InvalidSpec(format!("duplicate label {label}")));
            }
        }
        if wanted.is_empty() {
            return Err(Error::InvalidSpec("no desired states".into()));
        }
        let undesired = (0..1usize << n).filter(|i| !wanted.contains(i)).collect();
        Self::from_indices(n, undesired)
    }

    pub fn from_indices(n: usize, undesired: BTreeSet<usize>) -> Result<Self> {
        check_register(n)?;
        if let Some(&max) = undesired.iter().next_back() {
            if max >> n != 0 {
                return Err(Error::InvalidSpec(format!("index {max} outside a {n}-qubit register")));
            }
        }
        if undesired.len() == 1 << n {
            return Err(Error::InvalidSpec("every state is undesired".into()));
        }
        Ok(Self { n, undesired })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2^n`.
    pub fn total_states(&self) -> usize {
        1 << self.n
    }

    pub fn undesired(&self) -> &BTreeSet<usize> {
        &self.undesired
    }

    pub fn desired(&self) -> Vec<usize> {
        (0..self.total_states()).filter(|i| !self.undesired.contains(i)).collect()
    }

    pub fn undesired_count(&self) -> usize {
        self.undesired.len()
    }

    pub fn desired_count(&self) -> usize {
        self.total_states() - self.undesired.len()
    }

    pub fn is_desired(&self, index: usize) -> bool {
        !self.undesired.contains(&index)
    }

    pub fn undesired_labels(&self) -> Vec<BasisLabel> {
        self.undesired.iter().map(|&i| self.label(i)).collect()
    }

    pub fn desired_labels(&self) -> Vec<BasisLabel> {
        self.desired().into_iter().map(|i| self.label(i)).collect()
    }

    fn label(&self, index: usize) -> BasisLabel {
        BasisLabel::new(index, self.n).expect("index within register")
    }
}

pub(crate) fn check_register(n: usize) -> Result<()> {
    if n == 0 || n > MAX_REGISTER_QUBITS {
        return Err(Error::InvalidSize(format!("register of {n} qubits")));
    }
    Ok(())
}
