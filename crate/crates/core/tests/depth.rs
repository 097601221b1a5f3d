use proptest::prelude::*;
use qsuppress::depth::{
    classical_formula, crossover, measure_oracles, suppression_formula, sweep, to_csv, CSV_HEADER,
};
use qsuppress::grover::{
    build_classical_oracle_with, build_suppression_oracle_with, OracleRealization, OracleSpec, SuppressionOptions,
};
use qsuppress::label::parse_label_list;
use qsuppress::BasisLabel;

/// Gate total of the classical oracle over every state but all-zeros and
/// all-ones, counted by enumeration.
fn enumerated_classical_xconj(n: usize) -> u64 {
    (1..(1u64 << n) - 1).map(|s| 1 + 2 * (n as u64 - s.count_ones() as u64)).sum()
}

proptest! {
    #[test]
    fn formula_forms_agree(n in 1u32..=62) {
        let c = classical_formula(n).unwrap();
        prop_assert_eq!(c, 3 * (1u64 << n) - 4);
        prop_assert_eq!(suppression_formula(n).unwrap(), 4 + 2 * n as u64);
    }
}

#[test]
fn formulas_reject_overflow() {
    assert!(classical_formula(63).is_err());
    assert_eq!(classical_formula(1).unwrap(), 2);
}

#[test]
fn measured_counts_match_built_circuits() {
    for n in 2..=8usize {
        let row = measure_oracles(n).unwrap();
        let desired: Vec<BasisLabel> = (1..(1 << n) - 1).map(|i| BasisLabel::new(i, n).unwrap()).collect();
        for (realization, want) in [
            (OracleRealization::Polarity, row.classical_measured_polarity),
            (OracleRealization::XConjugation, row.classical_measured_xconj),
        ] {
            let c = build_classical_oracle_with(n, &desired, realization).unwrap();
            assert_eq!(c.count_gates().total, want, "n={n} {realization:?}");
        }
        assert_eq!(row.classical_measured_polarity, (1 << n) - 2);
        assert_eq!(row.classical_measured_xconj, enumerated_classical_xconj(n));

        let ends = format!("{},{}", "0".repeat(n), "1".repeat(n));
        let spec = OracleSpec::new(n, parse_label_list(&ends, n).unwrap()).unwrap();
        for (realization, want) in [
            (OracleRealization::Polarity, row.suppression_measured_polarity),
            (OracleRealization::XConjugation, row.suppression_measured_xconj),
        ] {
            let opts = SuppressionOptions { realization, ..Default::default() };
            let c = build_suppression_oracle_with(&spec, opts).unwrap();
            assert_eq!(c.count_gates().total, want, "n={n} {realization:?}");
        }
        assert_eq!(row.suppression_measured_polarity, 4);
        // X pairs around the all-zeros MCX: the formula's own count
        assert_eq!(row.suppression_measured_xconj, suppression_formula(n as u32).unwrap());
    }
}

#[test]
fn growth_shapes() {
    let rows = sweep(2, 20).unwrap();
    assert_eq!(rows.len(), 19);
    for w in rows.windows(2) {
        assert_eq!(w[1].suppression_measured_xconj - w[0].suppression_measured_xconj, 2);
        assert_eq!(w[1].classical_formula + 4, 2 * (w[0].classical_formula + 4));
    }
    // strictly convex, so no affine function keeps up
    for w in rows.windows(3) {
        let (a, b, c) = (w[0].classical_measured_xconj, w[1].classical_measured_xconj, w[2].classical_measured_xconj);
        assert!(c - b > b - a);
    }
    assert_eq!(crossover(&rows), Some(3));
    let last = rows.last().unwrap();
    assert_eq!((last.classical_formula, last.suppression_formula), (3145724, 44));
}

#[test]
fn csv_layout() {
    let csv = to_csv(&sweep(2, 4).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines[1..], ["2,8,8,2,6,8", "3,20,10,6,24,10", "4,44,12,14,70,12"]);
}

#[test]
fn sweep_range_is_checked() {
    assert!(sweep(5, 4).is_err());
    assert!(sweep(1, 4).is_err());
    assert!(sweep(2, 21).is_err());
    assert!(measure_oracles(21).is_err());
}
