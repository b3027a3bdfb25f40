use num_rational::Ratio;
use proptest::prelude::*;
use teleop_core::metrics::{
    compare_summaries, parse_table, render_table, summarize, BandSummary, TableRow, TorqueTrace,
};
use teleop_core::rti::RtiConfig;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn percentages_sum_to_exactly_one_hundred(trace in prop::collection::vec(-0.2f64..0.8, 1..300)) {
        let s = summarize(trace.iter().copied(), &RtiConfig::default()).unwrap();
        let [l, o, h] = s.percentages_exact();
        prop_assert_eq!(l + o + h, Ratio::from_integer(100));
        prop_assert_eq!(s.low_count + s.opt_count + s.high_count, trace.len() as u64);
        prop_assert!(s.mae >= 0.0);
    }
}

#[test]
fn constant_optimal_trace_summary() {
    let trace = TorqueTrace::from_torques(std::iter::repeat_n(0.30, 100)).unwrap();
    let s = teleop_core::metrics::band_summary(&trace, &RtiConfig::default()).unwrap();
    assert_eq!((s.low_pct(), s.opt_pct(), s.high_pct(), s.mae), (0.0, 100.0, 0.0, 0.0));
}

#[test]
fn half_low_half_high_summary() {
    let trace = TorqueTrace::from_torques([0.10, 0.50, 0.10, 0.50]).unwrap();
    let s = teleop_core::metrics::band_summary(&trace, &RtiConfig::default()).unwrap();
    assert_eq!((s.low_pct(), s.opt_pct(), s.high_pct()), (50.0, 0.0, 50.0));
    assert!((s.mae - 0.2).abs() < 1e-15);
    let table = render_table(&[TableRow::new("Lift", "Block", "Baseline", s)]);
    let row = &parse_table(&table).unwrap()[0];
    assert_eq!((row.low, row.opt, row.high, row.mae), (50.0, 0.0, 50.0, 0.2));
}

#[test]
fn table_prints_one_decimal_and_three_decimal_mae() {
    let s = BandSummary {
        low_count: 281,
        opt_count: 698,
        high_count: 21,
        sample_count: 1000,
        mae: 0.087,
    };
    let table = render_table(&[TableRow::new("Lift", "Block", "RTI-Aware", s)]);
    let line = table.lines().nth(2).unwrap();
    let cells: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(cells, ["Lift", "Block", "RTI-Aware", "28.1", "69.8", "2.1", "0.087"]);
}

#[test]
fn empty_trace_is_an_error() {
    assert!(summarize(std::iter::empty(), &RtiConfig::default()).is_err());
}

#[test]
fn improvement_is_detected() {
    let base = BandSummary { low_count: 60, opt_count: 30, high_count: 10, sample_count: 100, mae: 0.2 };
    let rti = BandSummary { low_count: 28, opt_count: 70, high_count: 2, sample_count: 100, mae: 0.087 };
    assert!(compare_summaries(&base, &rti).dominates);
    assert!(!compare_summaries(&rti, &base).dominates);
}
