#![allow(dead_code)]

use num_complex::Complex64;
use qsuppress::{Circuit, Control, GateKind, GateOp, StateVector};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_gate(rng: &mut impl Rng, q: usize) -> GateOp {
    let target = rng.gen_range(0..q);
    let kinds = [GateKind::H, GateKind::X, GateKind::Z, GateKind::Mcx, GateKind::Mcz];
    // controlled kinds need a second qubit
    let kind = kinds[rng.gen_range(0..if q > 1 { 5 } else { 3 })];
    match kind {
        GateKind::H => GateOp::h(target),
        GateKind::X => GateOp::x(target),
        GateKind::Z => GateOp::z(target),
        _ => {
            let mut others: Vec<usize> = (0..q).filter(|&c| c != target).collect();
            others.shuffle(rng);
            let take = rng.gen_range(1..=others.len());
            let controls: Vec<Control> = others[..take]
                .iter()
                .map(|&c| if rng.gen() { Control::closed(c) } else { Control::open(c) })
                .collect();
            GateOp::controlled(kind, target, &controls).unwrap()
        }
    }
}

pub fn random_circuit(rng: &mut impl Rng, q: usize, len: usize) -> Circuit {
    Circuit::from_gates(q, (0..len).map(|_| random_gate(rng, q))).unwrap()
}

pub fn random_state(rng: &mut impl Rng, q: usize) -> StateVector {
    let amps = (0..1usize << q)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(amps).unwrap()
}

/// `sin²((2k+1)·arcsin(√(m/N)))`, computed independently of the library.
pub fn textbook_success(total: usize, marked: usize, k: usize) -> f64 {
    let theta = (marked as f64 / total as f64).sqrt().asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

/// Pascal's triangle row `n`.
pub fn pascal_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}
