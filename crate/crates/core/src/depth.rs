//! Oracle gate-count growth.
//!
//! Compares the closed-form growth of a classical oracle that flags every
//! state except `|0…0⟩` and `|1…1⟩` against the suppression oracle that flags
//! only those two, and measures the circuits the builders actually emit.

use std::fmt::Write as _;

use serde::Serialize;

use crate::circuit::GateCountReport;
use crate::error::{Error, Result};
use crate::grover::{flag_gates, suppression_gates, Enumerate, OracleRealization, OracleSpec, SuppressionOptions};

pub const MIN_SWEEP_QUBITS: usize = 2;
pub const MAX_SWEEP_QUBITS: usize = 20;

pub const CSV_HEADER: &str =
    "n,classical_formula,suppression_formula,classical_measured_polarity,classical_measured_xconj,suppression_measured";

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).ok()
}

/// `(2^n − 2) + 2·Σ_{i=1}^{n} C(n, i)`, the classical growth curve.
///
/// The binomial sum is `2^n − 1`, so the value is also `3·2^n − 4`; both
/// forms are evaluated and must agree.
pub fn classical_formula(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("register size must be at least 1".into()));
    }
    if n > 62 {
        return Err(Error::Overflow(format!("classical formula at n={n}")));
    }
    let overflow = || Error::Overflow(format!("classical formula at n={n}"));
    let pow = 1u64 << n;
    let mut sum = 0u64;
    for i in 1..=n as u64 {
        sum = sum.checked_add(binomial(n as u64, i).ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    let expanded = (pow - 2).checked_add(sum.checked_mul(2).ok_or_else(overflow)?).ok_or_else(overflow)?;
    let collapsed = pow.checked_mul(3).ok_or_else(overflow)? - 4;
    assert_eq!(expanded, collapsed, "binomial identity failed at n={n}");
    Ok(collapsed)
}

/// `4 + 2n`, the suppression growth curve.
pub fn suppression_formula(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("register size must be at least 1".into()));
    }
    Ok(4 + 2 * n as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: u32,
    pub classical_formula: u64,
    pub suppression_formula: u64,
    /// Classical oracle with open controls.
    pub classical_measured_polarity: u64,
    /// Classical oracle with closed controls and X pairs.
    pub classical_measured_xconj: u64,
    /// Suppression oracle with open controls.
    pub suppression_measured_polarity: u64,
    /// Suppression oracle with closed controls and X pairs.
    pub suppression_measured_xconj: u64,
}

impl GrowthRow {
    /// One CSV line matching [`CSV_HEADER`]. The suppression column is the
    /// X-conjugation count, the realization the formulas describe.
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.classical_formula,
            self.suppression_formula,
            self.classical_measured_polarity,
            self.classical_measured_xconj,
            self.suppression_measured_xconj
        )
    }
}

fn check_range(n: usize) -> Result<()> {
    if !(MIN_SWEEP_QUBITS..=MAX_SWEEP_QUBITS).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "register size {n} outside {MIN_SWEEP_QUBITS}..={MAX_SWEEP_QUBITS}"
        )));
    }
    Ok(())
}

/// Classical oracle for all states except all-zeros and all-ones, counted
/// gate by gate as the builder emits it.
pub fn classical_oracle_count(n: usize, realization: OracleRealization) -> Result<GateCountReport> {
    check_range(n)?;
    let mut report = GateCountReport::default();
    for g in flag_gates(n, n, 1..(1usize << n) - 1, realization) {
        report.add(&g);
    }
    Ok(report)
}

/// Suppression oracle with `S = {0…0, 1…1}`.
pub fn suppression_oracle_count(n: usize, realization: OracleRealization) -> Result<GateCountReport> {
    check_range(n)?;
    let spec = OracleSpec::from_indices(n, [0, (1usize << n) - 1].into_iter().collect())?;
    let options = SuppressionOptions { enumerate: Enumerate::Undesired, trailing_x: false, realization };
    Ok(GateCountReport::tally(&suppression_gates(&spec, options)?))
}

pub fn measure_oracles(n: usize) -> Result<GrowthRow> {
    check_range(n)?;
    let nn = n as u32;
    Ok(GrowthRow {
        n: nn,
        classical_formula: classical_formula(nn)?,
        suppression_formula: suppression_formula(nn)?,
        classical_measured_polarity: classical_oracle_count(n, OracleRealization::Polarity)?.total,
        classical_measured_xconj: classical_oracle_count(n, OracleRealization::XConjugation)?.total,
        suppression_measured_polarity: suppression_oracle_count(n, OracleRealization::Polarity)?.total,
        suppression_measured_xconj: suppression_oracle_count(n, OracleRealization::XConjugation)?.total,
    })
}

pub fn sweep(n_min: usize, n_max: usize) -> Result<Vec<GrowthRow>> {
    check_range(n_min)?;
    check_range(n_max)?;
    if n_min > n_max {
        return Err(Error::InvalidArgument(format!("empty range {n_min}..={n_max}")));
    }
    (n_min..=n_max).map(measure_oracles).collect()
}

/// First register size where the classical formula exceeds the suppression one.
pub fn crossover(rows: &[GrowthRow]) -> Option<u32> {
    rows.iter().find(|r| r.classical_formula > r.suppression_formula).map(|r| r.n)
}

pub fn to_csv(rows: &[GrowthRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.csv_line());
    }
    out
}
