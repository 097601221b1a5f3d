//! Dense statevector simulation.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{GateKind, GateOp};
use crate::label::BasisLabel;

pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Amplitudes with magnitude below this are reported as probability zero.
pub const AMPLITUDE_FLOOR: f64 = 1e-14;

static MAX_QUBITS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_QUBITS);

/// Current simulation ceiling.
pub fn max_qubits() -> usize {
    MAX_QUBITS.load(Ordering::Relaxed)
}

/// Raises or lowers the simulation ceiling for the whole process.
pub fn set_max_qubits(limit: usize) -> Result<()> {
    if limit == 0 || limit >= usize::BITS as usize - 2 {
        return Err(Error::InvalidSize(format!("qubit ceiling {limit}")));
    }
    MAX_QUBITS.store(limit, Ordering::Relaxed);
    Ok(())
}

fn check_qubits(q: usize) -> Result<()> {
    if q == 0 {
        return Err(Error::InvalidSize("a state needs at least one qubit".into()));
    }
    if q > max_qubits() {
        return Err(Error::InvalidSize(format!("{q} qubits exceeds the ceiling of {}", max_qubits())));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `q` qubits.
    pub fn zero(q: usize) -> Result<Self> {
        Self::basis(q, 0)
    }

    pub fn basis(q: usize, index: usize) -> Result<Self> {
        check_qubits(q)?;
        if index >> q != 0 {
            return Err(Error::InvalidArgument(format!("basis index {index} out of range for {q} qubits")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << q];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits: q, amplitudes })
    }

    /// Equal superposition `H^{⊗q}|0…0⟩`.
    pub fn uniform(q: usize) -> Result<Self> {
        check_qubits(q)?;
        let dim = 1usize << q;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self { num_qubits: q, amplitudes: vec![a; dim] })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the norm
    /// must be 1 within `1e-10`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidSize(format!("{dim} amplitudes is not 2^q for q ≥ 1")));
        }
        let q = dim.trailing_zeros() as usize;
        check_qubits(q)?;
        let s = Self { num_qubits: q, amplitudes };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("state norm² is {norm}, expected 1")));
        }
        Ok(s)
    }

    /// Like [`StateVector::from_amplitudes`] but rescales to unit norm first.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("cannot normalize a zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_width(other.num_qubits)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest elementwise amplitude difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_same_width(&self, q: usize) -> Result<()> {
        if q != self.num_qubits {
            return Err(Error::Shape { expected: self.num_qubits, found: q });
        }
        Ok(())
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &GateOp) -> Result<()> {
        gate.check_width(self.num_qubits)?;
        let t = 1usize << gate.target();
        let dim = self.amplitudes.len();
        let amps = &mut self.amplitudes;
        let controlled = gate.control_mask() != 0;
        for block in (0..dim).step_by(2 * t) {
            for i in block..block + t {
                if controlled && !gate.fires_on(i) {
                    continue;
                }
                let j = i | t;
                match gate.kind() {
                    GateKind::H => {
                        let (a, b) = (amps[i], amps[j]);
                        amps[i] = (a + b) * FRAC_1_SQRT_2;
                        amps[j] = (a - b) * FRAC_1_SQRT_2;
                    }
                    GateKind::X | GateKind::Mcx => amps.swap(i, j),
                    GateKind::Z | GateKind::Mcz => amps[j] = -amps[j],
                }
            }
        }
        Ok(())
    }

    /// Returns the state after `gate`.
    pub fn applied(&self, gate: &GateOp) -> Result<StateVector> {
        let mut s = self.clone();
        s.apply(gate)?;
        Ok(s)
    }

    /// Runs `circuit` in place, gates in listed order.
    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        self.check_same_width(circuit.num_qubits())?;
        for g in circuit.gates() {
            self.apply(g)?;
        }
        let phase = circuit.global_phase();
        if phase != 0.0 {
            let factor = Complex64::from_polar(1.0, phase);
            self.amplitudes.iter_mut().for_each(|a| *a *= factor);
        }
        Ok(())
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Embeds `self ⊗ |0⟩^{⊗extra}` with the new qubits on top.
    pub fn with_zero_qubits(&self, extra: usize) -> Result<StateVector> {
        let q = self.num_qubits + extra;
        check_qubits(q)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << q];
        amplitudes[..self.dim()].copy_from_slice(&self.amplitudes);
        Ok(StateVector { num_qubits: q, amplitudes })
    }

    pub fn probabilities(&self) -> Distribution {
        Distribution {
            num_qubits: self.num_qubits,
            probs: self
                .amplitudes
                .iter()
                .map(|a| if a.norm() < AMPLITUDE_FLOOR { 0.0 } else { a.norm_sqr() })
                .collect(),
        }
    }

    /// Probabilities of the lowest `register` qubits, summed over the rest.
    pub fn register_probabilities(&self, register: usize) -> Result<Distribution> {
        self.probabilities().marginal(register)
    }

    /// Draws `shots` measurements of every qubit.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        self.probabilities().sample(shots, seed)
    }
}

/// Runs `circuit` on a copy of `initial`.
pub fn run_circuit(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    let mut s = initial.clone();
    s.run(circuit)?;
    Ok(s)
}

/// Measurement distribution over basis labels of a fixed width.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    num_qubits: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn from_probabilities(probs: Vec<f64>) -> Result<Self> {
        let dim = probs.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidSize(format!("{dim} probabilities is not 2^q for q ≥ 1")));
        }
        if probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidArgument("probabilities must be finite and nonnegative".into()));
        }
        Ok(Self { num_qubits: dim.trailing_zeros() as usize, probs })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    pub fn get(&self, label: &BasisLabel) -> Option<f64> {
        (label.width() == self.num_qubits).then(|| self.probs[label.index()])
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Sum of probabilities over `indices`.
    pub fn mass<'a>(&self, indices: impl IntoIterator<Item = &'a usize>) -> f64 {
        indices.into_iter().map(|&i| self.probs[i]).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisLabel, f64)> + '_ {
        let w = self.num_qubits;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (BasisLabel::new(i, w).expect("index within width"), p))
    }

    pub fn to_map(&self) -> BTreeMap<BasisLabel, f64> {
        self.iter().collect()
    }

    /// Keeps the lowest `register` qubits and sums out the others.
    pub fn marginal(&self, register: usize) -> Result<Distribution> {
        if register == 0 || register > self.num_qubits {
            return Err(Error::InvalidArgument(format!(
                "cannot keep {register} of {} qubits",
                self.num_qubits
            )));
        }
        let mask = (1usize << register) - 1;
        let mut probs = vec![0.0; 1 << register];
        for (i, p) in self.probs.iter().enumerate() {
            probs[i & mask] += p;
        }
        Ok(Distribution { num_qubits: register, probs })
    }

    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        let mut cumulative = Vec::with_capacity(self.probs.len());
        let mut acc = 0.0;
        for p in &self.probs {
            acc += p;
            cumulative.push(acc);
        }
        if acc <= 0.0 {
            return Err(Error::InvalidArgument("distribution has zero mass".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; self.probs.len()];
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * acc;
            // first bucket whose cumulative mass exceeds u, skipping empty ones
            let idx = cumulative.partition_point(|&c| c <= u).min(self.probs.len() - 1);
            counts[idx] += 1;
        }
        Ok(Histogram { num_qubits: self.num_qubits, counts })
    }
}

/// Shot counts per basis label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    num_qubits: usize,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts[index]
    }

    pub fn get(&self, label: &BasisLabel) -> u64 {
        if label.width() == self.num_qubits {
            self.counts[label.index()]
        } else {
            0
        }
    }

    pub fn shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Sums out all but the lowest `register` qubits.
    pub fn marginal(&self, register: usize) -> Result<Histogram> {
        if register == 0 || register > self.num_qubits {
            return Err(Error::InvalidArgument(format!("cannot keep {register} of {} qubits", self.num_qubits)));
        }
        let mask = (1usize << register) - 1;
        let mut counts = vec![0u64; 1 << register];
        for (i, c) in self.counts.iter().enumerate() {
            counts[i & mask] += c;
        }
        Ok(Histogram { num_qubits: register, counts })
    }

    /// Labels with at least one count.
    pub fn nonzero(&self) -> BTreeMap<BasisLabel, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (BasisLabel::new(i, self.num_qubits).expect("index within width"), c))
            .collect()
    }
}
