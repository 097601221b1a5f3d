//! QUBO and Ising cost models.
//!
//! Bit `i` of a basis index is variable `x_i`. The spin convention is
//! `x = (1 − z)/2`, so `x = 0` is `z = +1` and `x = 1` is `z = −1`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::BasisLabel;

/// Largest model [`brute_force_min`] will scan.
pub const MAX_BRUTE_FORCE_VARS: usize = 20;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Qubo {
    pub num_vars: usize,
    pub linear: BTreeMap<usize, f64>,
    /// Keys satisfy `i < j`.
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
}

impl Qubo {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, ..Default::default() }
    }

    pub fn add_linear(&mut self, i: usize, coeff: f64) {
        assert!(i < self.num_vars, "variable {i} out of range");
        *self.linear.entry(i).or_insert(0.0) += coeff;
    }

    /// Adds `coeff · x_i x_j`; `i == j` folds into the linear term.
    pub fn add_quadratic(&mut self, i: usize, j: usize, coeff: f64) {
        assert!(i < self.num_vars && j < self.num_vars, "variable out of range");
        if i == j {
            self.add_linear(i, coeff);
            return;
        }
        let key = if i < j { (i, j) } else { (j, i) };
        *self.quadratic.entry(key).or_insert(0.0) += coeff;
    }

    /// Value on the assignment encoded by `bits`.
    pub fn evaluate(&self, bits: usize) -> f64 {
        let x = |i: usize| (bits >> i) & 1 == 1;
        let mut e = self.offset;
        for (&i, &a) in &self.linear {
            if x(i) {
                e += a;
            }
        }
        for (&(i, j), &b) in &self.quadratic {
            if x(i) && x(j) {
                e += b;
            }
        }
        e
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct IsingModel {
    pub num_spins: usize,
    pub h: BTreeMap<usize, f64>,
    /// Keys satisfy `i < j`.
    pub j: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
}

impl IsingModel {
    /// `offset + Σ h_i z_i + Σ J_ij z_i z_j` with `z_i = +1` for bit 0.
    pub fn energy(&self, bits: usize) -> f64 {
        let z = |i: usize| if (bits >> i) & 1 == 1 { -1.0 } else { 1.0 };
        let mut e = self.offset;
        for (&i, &h) in &self.h {
            e += h * z(i);
        }
        for (&(i, k), &c) in &self.j {
            e += c * z(i) * z(k);
        }
        e
    }

    /// Energy of every basis index.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..1usize << self.num_spins).map(|b| self.energy(b)).collect()
    }
}

/// Substitutes `x_i = (1 − z_i)/2`.
pub fn qubo_to_ising(q: &Qubo) -> IsingModel {
    let mut ising = IsingModel { num_spins: q.num_vars, offset: q.offset, ..Default::default() };
    for (&i, &a) in &q.linear {
        ising.offset += a / 2.0;
        *ising.h.entry(i).or_insert(0.0) -= a / 2.0;
    }
    for (&(i, k), &b) in &q.quadratic {
        let quarter = b / 4.0;
        ising.offset += quarter;
        *ising.h.entry(i).or_insert(0.0) -= quarter;
        *ising.h.entry(k).or_insert(0.0) -= quarter;
        *ising.j.entry((i, k)).or_insert(0.0) += quarter;
    }
    ising
}

/// Exhaustive minimum; ties go to the lowest index.
pub fn brute_force_min(q: &Qubo) -> Result<(BasisLabel, f64)> {
    if q.num_vars == 0 || q.num_vars > MAX_BRUTE_FORCE_VARS {
        return Err(Error::InvalidSize(format!(
            "brute force supports 1..={MAX_BRUTE_FORCE_VARS} variables, got {}",
            q.num_vars
        )));
    }
    let mut best = (0usize, q.evaluate(0));
    for b in 1..1usize << q.num_vars {
        let e = q.evaluate(b);
        if e < best.1 {
            best = (b, e);
        }
    }
    Ok((BasisLabel::new(best.0, q.num_vars)?, best.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_substitution() {
        let mut q = Qubo::new(1);
        q.add_linear(0, 1.0);
        let ising = qubo_to_ising(&q);
        assert_eq!(ising.h[&0], -0.5);
        assert_eq!(ising.offset, 0.5);
    }

    #[test]
    fn quadratic_substitution() {
        let mut q = Qubo::new(2);
        q.add_quadratic(0, 1, 4.0);
        let ising = qubo_to_ising(&q);
        assert_eq!(ising.j[&(0, 1)], 1.0);
        assert_eq!(ising.h[&0], -1.0);
        assert_eq!(ising.h[&1], -1.0);
        assert_eq!(ising.offset, 1.0);
    }

    #[test]
    fn quadratic_keys_are_ordered() {
        let mut q = Qubo::new(3);
        q.add_quadratic(2, 0, 1.5);
        q.add_quadratic(0, 2, 0.5);
        assert_eq!(q.quadratic.len(), 1);
        assert_eq!(q.quadratic[&(0, 2)], 2.0);
    }

    #[test]
    fn brute_force_single_var() {
        let mut q = Qubo::new(1);
        q.add_linear(0, -2.0);
        let (label, e) = brute_force_min(&q).unwrap();
        assert_eq!(label.to_string(), "1");
        assert_eq!(e, -2.0);
        assert!(brute_force_min(&Qubo::new(21)).is_err());
    }

    // Coefficients are multiples of 1/8 so every partial sum is exact.
    fn dyadic() -> impl Strategy<Value = f64> {
        (-64i32..64).prop_map(|k| k as f64 / 8.0)
    }

    proptest! {
        #[test]
        fn ising_matches_qubo_exactly(
            lin in proptest::collection::vec(dyadic(), 4),
            quad in proptest::collection::vec(dyadic(), 6),
            offset in dyadic(),
        ) {
            let mut q = Qubo::new(4);
            q.offset = offset;
            for (i, a) in lin.into_iter().enumerate() {
                q.add_linear(i, a);
            }
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            for ((i, j), b) in pairs.into_iter().zip(quad) {
                q.add_quadratic(i, j, b);
            }
            let ising = qubo_to_ising(&q);
            for b in 0..16 {
                prop_assert_eq!(q.evaluate(b), ising.energy(b));
            }
        }
    }
}
