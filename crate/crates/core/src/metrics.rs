//! Grasp-quality statistics over gripper torque traces.
//!
//! A trace is split into Low / Optimal / High samples with [`zone_of`]; the
//! percentages are kept as integer counts so that they always close to
//! exactly 100 %, and the MAE is measured against `t_opt`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rti::{zone_of, RtiConfig, Zone};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialLabels {
    pub task: String,
    pub object: String,
    pub method: String,
}

/// Ordered `(timestamp_us, tau)` samples of one trial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TorqueTrace {
    samples: Vec<(u64, f64)>,
    pub labels: TrialLabels,
}

impl TorqueTrace {
    pub fn new(samples: Vec<(u64, f64)>, labels: TrialLabels) -> Result<Self> {
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::config("trace", "timestamps must be strictly increasing"));
        }
        if samples.iter().any(|(_, t)| !t.is_finite()) {
            return Err(Error::NonFinite("trace sample"));
        }
        Ok(Self { samples, labels })
    }

    /// Builds a trace from bare torques at a 1 ms spacing.
    pub fn from_torques(torques: impl IntoIterator<Item = f64>) -> Result<Self> {
        let samples = torques
            .into_iter()
            .enumerate()
            .map(|(i, t)| (i as u64 * crate::DT_US, t))
            .collect();
        Self::new(samples, TrialLabels::default())
    }

    pub fn samples(&self) -> &[(u64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn torques(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|&(_, t)| t)
    }
}

/// One row of the result table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandSummary {
    pub low_count: u64,
    pub opt_count: u64,
    pub high_count: u64,
    pub sample_count: u64,
    /// Nm
    pub mae: f64,
}

impl BandSummary {
    /// Summary from printed one-decimal percentages, as a 1000-sample trace.
    pub fn from_percentages(low: f64, opt: f64, high: f64, mae: f64) -> Self {
        let count = |p: f64| (p * 10.0).round() as u64;
        Self {
            low_count: count(low),
            opt_count: count(opt),
            high_count: count(high),
            sample_count: count(low) + count(opt) + count(high),
            mae,
        }
    }

    fn ratio(&self, count: u64) -> Ratio<u64> {
        Ratio::new(count * 100, self.sample_count)
    }

    /// Exact percentages `(low, opt, high)`; they always sum to 100.
    pub fn percentages_exact(&self) -> [Ratio<u64>; 3] {
        [
            self.ratio(self.low_count),
            self.ratio(self.opt_count),
            self.ratio(self.high_count),
        ]
    }

    pub fn low_pct(&self) -> f64 {
        self.low_count as f64 * 100.0 / self.sample_count as f64
    }

    pub fn opt_pct(&self) -> f64 {
        self.opt_count as f64 * 100.0 / self.sample_count as f64
    }

    pub fn high_pct(&self) -> f64 {
        self.high_count as f64 * 100.0 / self.sample_count as f64
    }

    /// Percentage in tenths of a percent, rounded half-up in exact arithmetic.
    fn pct_tenths(&self, count: u64) -> u64 {
        (2 * count * 1000 + self.sample_count) / (2 * self.sample_count)
    }
}

/// Low/Optimal/High split and MAE of a trace.
pub fn band_summary(trace: &TorqueTrace, cfg: &RtiConfig) -> Result<BandSummary> {
    summarize(trace.torques(), cfg)
}

/// Same as [`band_summary`] over bare torque samples.
pub fn summarize(torques: impl IntoIterator<Item = f64>, cfg: &RtiConfig) -> Result<BandSummary> {
    cfg.validate()?;
    let mut counts = [0u64; 3];
    let mut deviations = Vec::new();
    for tau in torques {
        let idx = match zone_of(tau, cfg)? {
            Zone::Low => 0,
            Zone::Optimal => 1,
            Zone::High => 2,
        };
        counts[idx] += 1;
        deviations.push((tau - cfg.t_opt).abs());
    }
    if deviations.is_empty() {
        return Err(Error::EmptyTrace);
    }
    // Summing in sorted order makes the MAE independent of sample order.
    deviations.sort_by(f64::total_cmp);
    let n = deviations.len();
    let mae = deviations.iter().sum::<f64>() / n as f64;
    Ok(BandSummary {
        low_count: counts[0],
        opt_count: counts[1],
        high_count: counts[2],
        sample_count: n as u64,
        mae,
    })
}

/// Merges several trials into one summary: counts add up and the MAE is
/// weighted by sample count. `None` for an empty input.
pub fn pool<'a>(summaries: impl IntoIterator<Item = &'a BandSummary>) -> Option<BandSummary> {
    let mut pooled = BandSummary {
        low_count: 0,
        opt_count: 0,
        high_count: 0,
        sample_count: 0,
        mae: 0.0,
    };
    let mut weighted = 0.0;
    for s in summaries {
        pooled.low_count += s.low_count;
        pooled.opt_count += s.opt_count;
        pooled.high_count += s.high_count;
        pooled.sample_count += s.sample_count;
        weighted += s.mae * s.sample_count as f64;
    }
    if pooled.sample_count == 0 {
        return None;
    }
    pooled.mae = weighted / pooled.sample_count as f64;
    Some(pooled)
}

/// Field-wise change from `a` to `b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub d_low: f64,
    pub d_opt: f64,
    pub d_high: f64,
    pub d_mae: f64,
    /// `b` has more Optimal and less Low, High and MAE than `a`.
    pub dominates: bool,
}

pub fn compare_summaries(a: &BandSummary, b: &BandSummary) -> Comparison {
    let [al, ao, ah] = a.percentages_exact();
    let [bl, bo, bh] = b.percentages_exact();
    Comparison {
        d_low: b.low_pct() - a.low_pct(),
        d_opt: b.opt_pct() - a.opt_pct(),
        d_high: b.high_pct() - a.high_pct(),
        d_mae: b.mae - a.mae,
        dominates: bo > ao && bl < al && bh < ah && b.mae < a.mae,
    }
}

/// Half-up decimal rendering with `decimals` places.
pub fn format_half_up(x: f64, decimals: u32) -> String {
    let scale = 10f64.powi(decimals as i32);
    let scaled = (x * scale + 0.5 + 1e-9).floor() / scale;
    format!("{:.*}", decimals as usize, scaled)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub labels: TrialLabels,
    pub summary: BandSummary,
}

impl TableRow {
    pub fn new(task: &str, object: &str, method: &str, summary: BandSummary) -> Self {
        Self {
            labels: TrialLabels {
                task: task.into(),
                object: object.into(),
                method: method.into(),
            },
            summary,
        }
    }

    /// Flat machine-readable row.
    pub fn to_json(&self) -> serde_json::Value {
        let s = &self.summary;
        serde_json::json!({
            "task": self.labels.task,
            "object": self.labels.object,
            "method": self.labels.method,
            "low_pct": s.low_pct(),
            "opt_pct": s.opt_pct(),
            "high_pct": s.high_pct(),
            "mae": s.mae,
            "sample_count": s.sample_count,
        })
    }
}

const TABLE_HEADER: [&str; 7] = ["Task", "Obj.", "Method", "Low [%]", "Opt [%]", "High [%]", "MAE [Nm]"];
const WIDTHS: [usize; 7] = [12, 8, 10, 8, 8, 9, 9];

fn fmt_pct(tenths: u64) -> String {
    format!("{}.{}", tenths / 10, tenths % 10)
}

/// Fixed-column text table: one decimal for percentages, three for MAE.
pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let line = |cells: [&str; 7]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(WIDTHS).enumerate() {
            if i < 3 {
                s.push_str(&format!("{cell:<w$}"));
            } else {
                s.push_str(&format!("{cell:>w$}"));
            }
            if i + 1 < cells.len() {
                s.push(' ');
            }
        }
        s.trim_end().to_string()
    };
    out.push_str(&line(TABLE_HEADER));
    out.push('\n');
    out.push_str(&"-".repeat(WIDTHS.iter().sum::<usize>() + WIDTHS.len() - 1));
    out.push('\n');
    for row in rows {
        let s = &row.summary;
        let cells = [
            row.labels.task.clone(),
            row.labels.object.clone(),
            row.labels.method.clone(),
            fmt_pct(s.pct_tenths(s.low_count)),
            fmt_pct(s.pct_tenths(s.opt_count)),
            fmt_pct(s.pct_tenths(s.high_count)),
            format_half_up(s.mae, 3),
        ];
        out.push_str(&line(cells.each_ref().map(String::as_str)));
        out.push('\n');
    }
    out
}

/// A table row read back at printed precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedRow {
    pub task: String,
    pub object: String,
    pub method: String,
    pub low: f64,
    pub opt: f64,
    pub high: f64,
    pub mae: f64,
}

/// Inverse of [`render_table`]. Labels must not contain whitespace.
pub fn parse_table(text: &str) -> Result<Vec<ParsedRow>> {
    let bad = |line: usize, message: &str| Error::Schema {
        line,
        message: message.to_string(),
    };
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().skip(2) {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != 7 {
            return Err(bad(i + 1, "expected 7 columns"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 1, "bad number"));
        rows.push(ParsedRow {
            task: cells[0].into(),
            object: cells[1].into(),
            method: cells[2].into(),
            low: num(cells[3])?,
            opt: num(cells[4])?,
            high: num(cells[5])?,
            mae: num(cells[6])?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> RtiConfig {
        RtiConfig::default()
    }

    #[test]
    fn constant_optimal_trace() {
        let s = summarize(std::iter::repeat_n(0.30, 1000), &cfg()).unwrap();
        assert_eq!((s.low_count, s.opt_count, s.high_count), (0, 1000, 0));
        assert!(s.mae < 1e-15);
    }

    #[test]
    fn split_trace() {
        let taus = std::iter::repeat_n(0.10, 500).chain(std::iter::repeat_n(0.50, 500));
        let s = summarize(taus, &cfg()).unwrap();
        assert_eq!((s.low_pct(), s.opt_pct(), s.high_pct()), (50.0, 0.0, 50.0));
        assert!((s.mae - 0.2).abs() < 1e-12);
        assert_eq!(format_half_up(s.mae, 3), "0.200");
    }

    #[test]
    fn empty_trace_is_error() {
        assert!(matches!(summarize(std::iter::empty(), &cfg()), Err(Error::EmptyTrace)));
        let empty = TorqueTrace::from_torques([]).unwrap();
        assert!(matches!(band_summary(&empty, &cfg()), Err(Error::EmptyTrace)));
    }

    #[test]
    fn trace_rejects_unordered_timestamps() {
        assert!(TorqueTrace::new(vec![(5, 0.1), (5, 0.2)], TrialLabels::default()).is_err());
    }

    #[test]
    fn comparison_examples() {
        let base = BandSummary::from_percentages(39.5, 30.0, 30.5, 0.200);
        let rti = BandSummary::from_percentages(28.1, 69.8, 2.1, 0.087);
        assert!(compare_summaries(&base, &rti).dominates);
        assert!(!compare_summaries(&rti, &base).dominates);

        let same = compare_summaries(&base, &base);
        assert_eq!((same.d_low, same.d_opt, same.d_high, same.d_mae), (0.0, 0.0, 0.0, 0.0));
        assert!(!same.dominates);

        let mixed = BandSummary::from_percentages(20.0, 40.0, 40.0, 0.1);
        let c = compare_summaries(&base, &mixed);
        assert!(c.d_opt > 0.0 && c.d_high > 0.0 && !c.dominates);
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = render_table(&[]);
        assert_eq!(t.lines().count(), 2);
        assert!(t.starts_with("Task"));
        assert!(parse_table(&t).unwrap().is_empty());
    }

    #[test]
    fn half_up_display() {
        assert_eq!(format_half_up(0.0875, 3), "0.088");
        assert_eq!(format_half_up(0.0865, 3), "0.087");
        // 1/3 of 1000 samples is 33.3 %, 2/3 is 66.7 %.
        let s = BandSummary { low_count: 1, opt_count: 2, high_count: 0, sample_count: 3, mae: 0.0 };
        assert_eq!(s.pct_tenths(1), 333);
        assert_eq!(s.pct_tenths(2), 667);
        // Exact half: 1/8 = 12.5 % -> 125 tenths; 1/16 = 6.25 % -> 6.3
        let s = BandSummary { low_count: 1, opt_count: 15, high_count: 0, sample_count: 16, mae: 0.0 };
        assert_eq!(fmt_pct(s.pct_tenths(1)), "6.3");
    }

    proptest! {
        #[test]
        fn percentages_close_exactly(taus in proptest::collection::vec(-0.5f64..1.0, 1..300)) {
            let s = summarize(taus.iter().copied(), &cfg()).unwrap();
            let [l, o, h] = s.percentages_exact();
            prop_assert_eq!(l + o + h, Ratio::from_integer(100));
            prop_assert!(s.mae >= 0.0);
        }

        #[test]
        fn order_does_not_matter(mut taus in proptest::collection::vec(-0.5f64..1.0, 1..300), seed in any::<u64>()) {
            let a = summarize(taus.iter().copied(), &cfg()).unwrap();
            let k = (seed as usize) % taus.len();
            taus.rotate_left(k);
            taus.reverse();
            let b = summarize(taus.iter().copied(), &cfg()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn in_band_traces_are_all_optimal(taus in proptest::collection::vec(0.2f64..=0.4, 1..300)) {
            let c = cfg();
            let s = summarize(taus.iter().copied(), &c).unwrap();
            prop_assert_eq!(s.opt_count, s.sample_count);
            prop_assert!(s.mae <= (c.t_low - c.t_opt).abs().max((c.t_high - c.t_opt).abs()) + 1e-12);
        }

        #[test]
        fn table_roundtrips_at_printed_precision(
            low in 0u64..500, opt in 0u64..500, high in 0u64..500, mae in 0.0f64..1.0
        ) {
            prop_assume!(low + opt + high > 0);
            let s = BandSummary { low_count: low, opt_count: opt, high_count: high, sample_count: low + opt + high, mae };
            let row = TableRow::new("Lift", "Block", "Baseline", s);
            let parsed = parse_table(&render_table(std::slice::from_ref(&row))).unwrap();
            prop_assert_eq!(parsed.len(), 1);
            let p = &parsed[0];
            prop_assert_eq!((&p.task[..], &p.object[..], &p.method[..]), ("Lift", "Block", "Baseline"));
            prop_assert!((p.low - s.low_pct()).abs() <= 0.05 + 1e-9);
            prop_assert!((p.opt - s.opt_pct()).abs() <= 0.05 + 1e-9);
            prop_assert!((p.high - s.high_pct()).abs() <= 0.05 + 1e-9);
            prop_assert!((p.mae - mae).abs() <= 0.0005 + 1e-9);
        }

        #[test]
        fn per_mille_counts_print_exactly(low in 0u64..=1000, split in 0.0f64..1.0) {
            let opt = ((1000 - low) as f64 * split) as u64;
            let high = 1000 - low - opt;
            let s = BandSummary { low_count: low, opt_count: opt, high_count: high, sample_count: 1000, mae: 0.0 };
            let parsed = parse_table(&render_table(&[TableRow::new("Lift", "Block", "Baseline", s)])).unwrap();
            prop_assert_eq!(parsed[0].low, low as f64 / 10.0);
            prop_assert_eq!(parsed[0].opt, opt as f64 / 10.0);
            prop_assert_eq!(parsed[0].high, high as f64 / 10.0);
        }
    }
}
