//! Log verification: re-derives indicator outputs and trial metrics from the
//! logged follower gripper estimate and checks them against the log.

use std::path::Path;

use super::log::{read_log, LogLine, TrialWindow};
use super::{SessionConfig, WindowTracker};
use crate::error::{Error, Result};
use crate::metrics::BandSummary;
use crate::rti::render_sample;
use crate::DT_US;

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayReport {
    pub config: SessionConfig,
    pub ticks: u64,
    pub window: TrialWindow,
    pub summary: Option<BandSummary>,
    /// Set when the run ended in a simulation fault.
    pub fault: Option<(u64, String)>,
}

fn divergence(tick: u64, field: &str, logged: impl ToString, recomputed: impl ToString) -> Error {
    Error::Divergence {
        tick,
        field: field.to_string(),
        logged: logged.to_string(),
        recomputed: recomputed.to_string(),
    }
}

fn schema(line: usize, message: impl Into<String>) -> Error {
    Error::Schema {
        line,
        message: message.into(),
    }
}

pub fn replay(path: &Path) -> Result<ReplayReport> {
    verify(read_log(path)?)
}

/// Checks an already parsed log.
pub fn verify(lines: Vec<LogLine>) -> Result<ReplayReport> {
    let mut iter = lines.into_iter().enumerate();
    let config = match iter.next() {
        Some((_, LogLine::Header { config })) => config,
        Some(_) => return Err(schema(1, "first record must be the header")),
        None => return Err(schema(0, "empty log")),
    };
    config.validate()?;

    let mut tracker = WindowTracker::default();
    let mut ticks = 0u64;
    let mut trailer = None;
    for (idx, line) in iter {
        let line_no = idx + 1;
        if trailer.is_some() {
            return Err(schema(line_no, "record after trailer"));
        }
        match line {
            LogLine::Tick(r) => {
                if r.tick != ticks || r.timestamp_us != ticks * DT_US {
                    return Err(schema(line_no, format!("expected tick {ticks}, found {}", r.tick)));
                }
                let tau = r.gripper_tau();
                let again = render_sample(tau, &config.rti)
                    .map_err(|e| schema(line_no, e.to_string()))?;
                if again.fill_percent.to_bits() != r.rti.fill_percent.to_bits() {
                    return Err(divergence(r.tick, "rti.fill_percent", r.rti.fill_percent, again.fill_percent));
                }
                if again.color != r.rti.color {
                    return Err(divergence(r.tick, "rti.color", r.rti.color, again.color));
                }
                if again.zone != r.rti.zone {
                    return Err(divergence(r.tick, "rti.zone", r.rti.zone, again.zone));
                }
                tracker.observe(&r);
                ticks += 1;
            }
            LogLine::Header { .. } => return Err(schema(line_no, "duplicate header")),
            other => trailer = Some((line_no, other)),
        }
    }

    let window = tracker.window();
    match trailer {
        Some((_, LogLine::Summary { window: logged_window, summary, .. })) => {
            if logged_window != window {
                return Err(divergence(
                    window.start_tick,
                    "summary.window",
                    format!("{logged_window:?}"),
                    format!("{window:?}"),
                ));
            }
            let recomputed = tracker.summary(&config.rti)?;
            check_summary(window.start_tick, summary.as_ref(), recomputed.as_ref())?;
            Ok(ReplayReport {
                config,
                ticks,
                window,
                summary: recomputed,
                fault: None,
            })
        }
        Some((_, LogLine::Fault { tick, reason })) => Ok(ReplayReport {
            config,
            ticks,
            window,
            summary: None,
            fault: Some((tick, reason)),
        }),
        Some((line_no, _)) => Err(schema(line_no, "unexpected trailer")),
        None => Err(schema(ticks as usize + 2, "truncated log: missing summary record")),
    }
}

fn check_summary(tick: u64, logged: Option<&BandSummary>, recomputed: Option<&BandSummary>) -> Result<()> {
    match (logged, recomputed) {
        (None, None) => Ok(()),
        (Some(a), Some(b)) => {
            let pairs = [
                ("summary.low_count", a.low_count, b.low_count),
                ("summary.opt_count", a.opt_count, b.opt_count),
                ("summary.high_count", a.high_count, b.high_count),
                ("summary.sample_count", a.sample_count, b.sample_count),
            ];
            for (field, x, y) in pairs {
                if x != y {
                    return Err(divergence(tick, field, x, y));
                }
            }
            if a.mae.to_bits() != b.mae.to_bits() {
                return Err(divergence(tick, "summary.mae", a.mae, b.mae));
            }
            Ok(())
        }
        (a, b) => Err(divergence(tick, "summary", format!("{a:?}"), format!("{b:?}"))),
    }
}
