//! Exact QAOA evolution on a statevector.
//!
//! Each layer applies the diagonal cost phase `e^{−iγH_C}` followed by the
//! transverse-field mixer `e^{−iβX}` on every problem qubit. The initial
//! state may carry extra qubits above the problem register (for example the
//! ancilla left over from a Grover preparation); they are spectators and are
//! summed out when measuring.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{Distribution, StateVector};

use super::qubo::IsingModel;

/// Applies `p` layers to a copy of `initial`.
pub fn qaoa_state(energies: &[f64], gammas: &[f64], betas: &[f64], initial: &StateVector) -> Result<StateVector> {
    if gammas.len() != betas.len() {
        return Err(Error::InvalidArgument(format!(
            "{} cost angles but {} mixer angles",
            gammas.len(),
            betas.len()
        )));
    }
    let dim = energies.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidSize(format!("{dim} energies is not 2^n")));
    }
    let n = dim.trailing_zeros() as usize;
    if initial.num_qubits() < n {
        return Err(Error::Shape { expected: n, found: initial.num_qubits() });
    }
    let mask = dim - 1;
    let mut state = initial.clone();
    for (&gamma, &beta) in gammas.iter().zip(betas) {
        let amps = state.amplitudes_mut();
        if gamma != 0.0 {
            for (i, a) in amps.iter_mut().enumerate() {
                *a *= Complex64::from_polar(1.0, -gamma * energies[i & mask]);
            }
        }
        if beta != 0.0 {
            let (s, c) = beta.sin_cos();
            let mis = Complex64::new(0.0, -s);
            for q in 0..n {
                let t = 1usize << q;
                for block in (0..amps.len()).step_by(2 * t) {
                    for i in block..block + t {
                        let (a, b) = (amps[i], amps[i | t]);
                        amps[i] = a * c + b * mis;
                        amps[i | t] = a * mis + b * c;
                    }
                }
            }
        }
    }
    Ok(state)
}

/// `⟨H_C⟩` of a measured distribution over the problem register.
pub fn expected_energy(energies: &[f64], dist: &Distribution) -> f64 {
    dist.as_slice().iter().zip(energies).map(|(p, e)| p * e).sum()
}

/// Expectation of the Ising energy after `p` QAOA layers.
pub fn qaoa_expected_cost(
    ising: &IsingModel,
    p: usize,
    gammas: &[f64],
    betas: &[f64],
    initial: &StateVector,
) -> Result<f64> {
    if gammas.len() != p || betas.len() != p {
        return Err(Error::InvalidArgument(format!(
            "expected {p} angles per layer kind, got {} and {}",
            gammas.len(),
            betas.len()
        )));
    }
    let energies = ising.diagonal();
    let out = qaoa_state(&energies, gammas, betas, initial)?;
    let dist = out.register_probabilities(ising.num_spins)?;
    Ok(expected_energy(&energies, &dist))
}
