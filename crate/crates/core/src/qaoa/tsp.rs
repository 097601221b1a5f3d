//! One-hot TSP encoding.
//!
//! City 0 is pinned to position 0. Variable `x_{u,p}` says city `u ∈ 1..c`
//! sits at position `p ∈ 1..c`; it lives at bit `(u − 1)(c − 1) + (p − 1)`.
//! A `c`-city instance therefore needs `(c − 1)²` qubits.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::BasisLabel;

use super::qubo::Qubo;

/// Largest instance the encoder accepts (16 qubits).
pub const MAX_CITIES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspInstance {
    pub cities: usize,
    pub distances: Vec<Vec<f64>>,
    /// Accept a non-symmetric distance matrix.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub asymmetric: bool,
}

impl TspInstance {
    pub fn new(distances: Vec<Vec<f64>>) -> Result<Self> {
        let inst = Self { cities: distances.len(), distances, asymmetric: false };
        inst.validate()?;
        Ok(inst)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Self = serde_json::from_str(text).map_err(|e| Error::InvalidInstance(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.cities;
        if !(3..=MAX_CITIES).contains(&c) {
            return Err(Error::InvalidInstance(format!("cities must be in 3..={MAX_CITIES}, got {c}")));
        }
        if self.distances.len() != c {
            return Err(Error::InvalidInstance(format!(
                "distances has {} rows for {c} cities",
                self.distances.len()
            )));
        }
        for (i, row) in self.distances.iter().enumerate() {
            if row.len() != c {
                return Err(Error::InvalidInstance(format!("distances row {i} has {} entries", row.len())));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidInstance(format!("distances[{i}][{j}] = {d}")));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidInstance(format!("distances[{i}][{i}] must be 0")));
                }
                if !self.asymmetric && d != self.distances[j][i] {
                    return Err(Error::InvalidInstance(format!("distances[{i}][{j}] != distances[{j}][{i}]")));
                }
            }
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        (self.cities - 1) * (self.cities - 1)
    }

    pub fn max_distance(&self) -> f64 {
        self.distances.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Bit index of `x_{city, position}`.
    pub fn var(&self, city: usize, position: usize) -> usize {
        debug_assert!((1..self.cities).contains(&city) && (1..self.cities).contains(&position));
        (city - 1) * (self.cities - 1) + (position - 1)
    }

    /// Closed tour length for the visiting order `order` (starting at city 0).
    pub fn tour_length(&self, order: &[usize]) -> f64 {
        order
            .iter()
            .zip(order.iter().cycle().skip(1))
            .map(|(&a, &b)| self.distances[a][b])
            .sum()
    }

    /// Basis index of the tour that visits `rest` after city 0.
    pub fn encode(&self, rest: &[usize]) -> usize {
        rest.iter().enumerate().fold(0, |bits, (i, &city)| bits | 1 << self.var(city, i + 1))
    }

    /// Visiting order, starting with city 0, if `bits` is a valid permutation.
    pub fn decode(&self, bits: usize) -> Option<Vec<usize>> {
        let c = self.cities;
        let mut order = vec![0];
        for pos in 1..c {
            let mut here = (1..c).filter(|&u| bits >> self.var(u, pos) & 1 == 1);
            let city = here.next()?;
            if here.next().is_some() {
                return None;
            }
            order.push(city);
        }
        order[1..].iter().all_unique().then_some(order)
    }
}

/// Default penalty weight: `2·c·max_distance`, floored at 1.
pub fn default_penalty(instance: &TspInstance) -> f64 {
    (2.0 * instance.cities as f64 * instance.max_distance()).max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TspEncoding {
    pub qubo: Qubo,
    pub penalty: f64,
    /// Set when the penalty does not exceed the longest possible tour.
    pub warning: Option<String>,
}

/// Tour length plus `penalty` times the squared one-hot violations of every
/// city row and position column.
pub fn tsp_to_qubo(instance: &TspInstance, penalty: f64) -> Result<TspEncoding> {
    instance.validate()?;
    if !penalty.is_finite() || penalty <= 0.0 {
        return Err(Error::InvalidArgument(format!("penalty must be positive, got {penalty}")));
    }
    let c = instance.cities;
    let d = &instance.distances;
    let mut q = Qubo::new(instance.num_qubits());

    for u in 1..c {
        q.add_linear(instance.var(u, 1), d[0][u]);
        q.add_linear(instance.var(u, c - 1), d[u][0]);
    }
    for p in 1..c - 1 {
        for u in 1..c {
            for v in 1..c {
                if u != v {
                    q.add_quadratic(instance.var(u, p), instance.var(v, p + 1), d[u][v]);
                }
            }
        }
    }

    // (1 − Σ x)² = 1 − Σ x + 2 Σ_{i<j} x_i x_j on binary variables
    let mut one_hot = |vars: Vec<usize>| {
        q.offset += penalty;
        for &v in &vars {
            q.add_linear(v, -penalty);
        }
        for (a, b) in vars.iter().tuple_combinations() {
            q.add_quadratic(*a, *b, 2.0 * penalty);
        }
    };
    for u in 1..c {
        one_hot((1..c).map(|p| instance.var(u, p)).collect());
    }
    for p in 1..c {
        one_hot((1..c).map(|u| instance.var(u, p)).collect());
    }

    let bound = c as f64 * instance.max_distance();
    let warning = (penalty <= bound)
        .then(|| format!("penalty {penalty} does not exceed the tour-length bound {bound}"));
    Ok(TspEncoding { qubo: q, penalty, warning })
}

/// Every valid permutation, as basis labels in ascending index order.
pub fn feasible_labels(instance: &TspInstance) -> Result<Vec<BasisLabel>> {
    instance.validate()?;
    let width = instance.num_qubits();
    let mut out: Vec<BasisLabel> = (1..instance.cities)
        .permutations(instance.cities - 1)
        .map(|rest| BasisLabel::new(instance.encode(&rest), width))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qaoa::qubo::brute_force_min;

    fn unit3() -> TspInstance {
        TspInstance::new(vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).unwrap()
    }

    fn skewed3() -> TspInstance {
        TspInstance::new(vec![vec![0.0, 1.0, 4.0], vec![1.0, 0.0, 2.0], vec![4.0, 2.0, 0.0]]).unwrap()
    }

    #[test]
    fn three_city_layout() {
        let inst = unit3();
        assert_eq!(inst.num_qubits(), 4);
        let labels = feasible_labels(&inst).unwrap();
        let idx: Vec<_> = labels.iter().map(|l| l.index()).collect();
        assert_eq!(idx, vec![6, 9]);
    }

    #[test]
    fn feasible_counts() {
        let four = TspInstance::new(vec![vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 0.0, 4.0, 5.0], vec![2.0, 4.0, 0.0, 6.0], vec![3.0, 5.0, 6.0, 0.0]])
            .unwrap();
        assert_eq!(four.num_qubits(), 9);
        assert_eq!(feasible_labels(&four).unwrap().len(), 6);
    }

    #[test]
    fn unit_instance_feasible_values() {
        let inst = unit3();
        let enc = tsp_to_qubo(&inst, default_penalty(&inst)).unwrap();
        assert!(enc.warning.is_none());
        for l in feasible_labels(&inst).unwrap() {
            assert_eq!(enc.qubo.evaluate(l.index()), 3.0);
        }
        let (label, e) = brute_force_min(&enc.qubo).unwrap();
        assert_eq!(e, 3.0);
        assert_eq!(label.index(), 6);
    }

    #[test]
    fn skewed_instance_tours_cost_seven() {
        let inst = skewed3();
        assert_eq!(inst.tour_length(&[0, 1, 2]), 7.0);
        assert_eq!(inst.tour_length(&[0, 2, 1]), 7.0);
        let enc = tsp_to_qubo(&inst, default_penalty(&inst)).unwrap();
        for l in feasible_labels(&inst).unwrap() {
            assert_eq!(enc.qubo.evaluate(l.index()), 7.0);
        }
    }

    #[test]
    fn infeasible_strings_pay_the_penalty() {
        let inst = skewed3();
        let penalty = default_penalty(&inst);
        let enc = tsp_to_qubo(&inst, penalty).unwrap();
        let feasible: Vec<_> = feasible_labels(&inst).unwrap().iter().map(|l| l.index()).collect();
        let best = brute_force_min(&enc.qubo).unwrap().1;
        for b in 0..16 {
            if !feasible.contains(&b) {
                assert!(enc.qubo.evaluate(b) >= best + penalty - 7.0 - 1e-9, "bits {b:04b}");
                assert!(enc.qubo.evaluate(b) > best);
            }
        }
        // city 1 at both positions
        let doubled = (1 << inst.var(1, 1)) | (1 << inst.var(1, 2));
        assert!(enc.qubo.evaluate(doubled) >= penalty);
    }

    #[test]
    fn decode_round_trip() {
        let inst = skewed3();
        assert_eq!(inst.decode(inst.encode(&[2, 1])), Some(vec![0, 2, 1]));
        assert_eq!(inst.decode(0), None);
        assert_eq!(inst.decode(0b1111), None);
    }

    #[test]
    fn small_penalty_warns() {
        let inst = skewed3();
        let enc = tsp_to_qubo(&inst, 1.0).unwrap();
        assert!(enc.warning.is_some());
        assert!(tsp_to_qubo(&inst, 0.0).is_err());
    }

    #[test]
    fn rejects_malformed_instances() {
        assert!(TspInstance::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(TspInstance::new(vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0]]).is_err());
        assert!(TspInstance::new(vec![vec![1.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).is_err());
        assert!(TspInstance::new(vec![vec![0.0, 2.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).is_err());
    }
}
