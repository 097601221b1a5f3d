use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

use super::spec::OracleSpec;
use super::GroverMode;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationPlan {
    /// `N = 2^n`.
    pub total_states: usize,
    /// `M`: undesired count in suppression mode, target count in classical mode.
    pub driving_count: usize,
    /// `⌈N/M⌉`, the sweep limit for suppression runs.
    pub bound: usize,
    /// `m`: states whose amplitude the rotation amplifies (`|S^∁|` in both modes).
    pub marked_count: usize,
    /// `θ = arcsin(√(m/N))`.
    pub theta: f64,
    /// `⌊π/(4θ)⌋`.
    pub optimal_k: usize,
}

pub fn plan_iterations(spec: &OracleSpec, mode: GroverMode) -> Result<IterationPlan> {
    let total = spec.total_states();
    let marked = spec.desired_count();
    let driving = match mode {
        GroverMode::Classical => marked,
        GroverMode::Suppression => spec.undesired_count(),
    };
    if driving == 0 {
        return Err(Error::InvalidSpec("the set bounding the iteration count is empty".into()));
    }
    let theta = rotation_angle(total, marked)?;
    Ok(IterationPlan {
        total_states: total,
        driving_count: driving,
        bound: total.div_ceil(driving),
        marked_count: marked,
        theta,
        optimal_k: (PI / (4.0 * theta)).floor() as usize,
    })
}

fn rotation_angle(total: usize, marked: usize) -> Result<f64> {
    if marked == 0 || marked > total {
        return Err(Error::InvalidArgument(format!("need 1 ≤ m ≤ N, got m={marked}, N={total}")));
    }
    Ok((marked as f64 / total as f64).sqrt().asin())
}

/// Textbook success probability `sin²((2k+1)·arcsin(√(m/N)))`.
pub fn closed_form_success(total: usize, marked: usize, k: usize) -> Result<f64> {
    let theta = rotation_angle(total, marked)?;
    Ok(((2 * k + 1) as f64 * theta).sin().powi(2))
}
