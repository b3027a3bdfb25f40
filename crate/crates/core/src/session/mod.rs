//! Session orchestration: configuration, operators, logging and replay.

pub mod config;
pub mod log;
pub mod operator;
pub mod replay;
pub mod telemetry;

use std::path::Path;

pub use config::{LinkConfig, OperatorKind, OperatorModel, Scenario, SessionConfig, TelemetryConfig};
pub use log::{LogLine, LogWriter, TrialWindow};
pub use operator::{scripted_operator, InteractiveOperator, ScriptedOperator};
pub use replay::{replay, ReplayReport};

use crate::error::{Error, Result};
use crate::joint::GRIPPER;
use crate::link::tick::{run_tick_loop, Marker, Operator, Simulation, TickRecord};
use crate::link::ChannelModel;
use crate::metrics::{summarize, BandSummary, TrialLabels};
use crate::rti::RtiConfig;

/// Collects the gripper torque and window markers while a session runs.
#[derive(Clone, Debug, Default)]
pub struct WindowTracker {
    torques: Vec<f64>,
    start: Option<u64>,
    end: Option<u64>,
}

impl WindowTracker {
    pub fn observe(&mut self, r: &TickRecord) {
        self.torques.push(r.follower.tau_hat[GRIPPER]);
        if self.start.is_none() && r.markers.iter().any(|m| m.is(Marker::GRASP_START)) {
            self.start = Some(r.tick);
        }
        if self.start.is_some()
            && self.end.is_none()
            && r.markers
                .iter()
                .any(|m| m.is(Marker::RELEASE) || m.is(Marker::GRASP_END))
        {
            self.end = Some(r.tick);
        }
    }

    /// From the first `grasp-start` up to (excluding) the following
    /// `release`/`grasp-end`; the whole trial when there are no markers.
    pub fn window(&self) -> TrialWindow {
        let n = self.torques.len() as u64;
        TrialWindow {
            start_tick: self.start.unwrap_or(0),
            end_tick: self.end.unwrap_or(n),
        }
    }

    pub fn summary(&self, rti: &RtiConfig) -> Result<Option<BandSummary>> {
        let w = self.window();
        if w.is_empty() {
            return Ok(None);
        }
        let slice = &self.torques[w.start_tick as usize..w.end_tick as usize];
        summarize(slice.iter().copied(), rti).map(Some)
    }

    pub fn torques(&self) -> &[f64] {
        &self.torques
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionOutcome {
    pub ticks: u64,
    pub window: TrialWindow,
    pub labels: TrialLabels,
    pub summary: Option<BandSummary>,
}

pub fn labels(cfg: &SessionConfig) -> TrialLabels {
    TrialLabels {
        task: cfg.scenario.label().to_string(),
        object: cfg.object.label.to_string(),
        method: cfg.operator.label().to_string(),
    }
}

/// Runs a validated session with an arbitrary operator, streaming records.
pub fn run_with(
    cfg: &SessionConfig,
    operator: &mut dyn Operator,
    mut on_record: impl FnMut(&TickRecord) -> Result<()>,
) -> Result<SessionOutcome> {
    cfg.validate()?;
    let mut sim = Simulation::new(cfg.simulation_params());
    let mut tracker = WindowTracker::default();
    let ticks = run_tick_loop(cfg.duration_s, &mut sim, operator, |r| {
        tracker.observe(&r);
        on_record(&r)
    })?;
    Ok(SessionOutcome {
        ticks,
        window: tracker.window(),
        labels: labels(cfg),
        summary: tracker.summary(&cfg.rti)?,
    })
}

fn require_scripted(cfg: &SessionConfig) -> Result<ScriptedOperator> {
    scripted_operator(cfg).ok_or_else(|| {
        Error::config("operator", "interactive sessions are run with `serve`")
    })
}

/// In-memory run of a scripted session.
pub fn simulate(cfg: &SessionConfig) -> Result<(SessionOutcome, Vec<TickRecord>)> {
    let mut op = require_scripted(cfg)?;
    let mut records = Vec::new();
    let outcome = run_with(cfg, &mut op, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((outcome, records))
}

/// In-memory run keeping only the outcome.
pub fn simulate_summary(cfg: &SessionConfig) -> Result<SessionOutcome> {
    let mut op = require_scripted(cfg)?;
    run_with(cfg, &mut op, |_| Ok(()))
}

/// Runs a scripted session and writes its JSONL log to `out`.
///
/// On a simulation fault the log ends with a `fault` line and the fault is
/// returned.
pub fn run_session(cfg: &SessionConfig, out: &Path, gzip: bool) -> Result<SessionOutcome> {
    run_session_observed(cfg, out, gzip, |_| {})
}

/// [`run_session`] with a hook called after each tick is logged.
pub fn run_session_observed(
    cfg: &SessionConfig,
    out: &Path,
    gzip: bool,
    mut observe: impl FnMut(&TickRecord),
) -> Result<SessionOutcome> {
    cfg.validate()?;
    let mut op = require_scripted(cfg)?;
    record_session(cfg, &mut op, out, gzip, |r| {
        observe(r);
        Ok(())
    })
}

/// Runs any operator and writes the JSONL log. `observe` may abort the run by
/// returning an error; the log then ends without a trailer.
pub fn record_session(
    cfg: &SessionConfig,
    operator: &mut dyn Operator,
    out: &Path,
    gzip: bool,
    mut observe: impl FnMut(&TickRecord) -> Result<()>,
) -> Result<SessionOutcome> {
    cfg.validate()?;
    let mut writer = LogWriter::create(out, gzip)?;
    writer.write(&LogLine::Header { config: *cfg })?;
    let result = run_with(cfg, operator, |r| {
        writer.write(&LogLine::Tick(r.clone()))?;
        observe(r)
    });
    match result {
        Ok(outcome) => {
            writer.write(&LogLine::Summary {
                window: outcome.window,
                labels: outcome.labels.clone(),
                summary: outcome.summary,
            })?;
            writer.finish()?;
            Ok(outcome)
        }
        Err(Error::SimulationFault { tick, reason }) => {
            writer.write(&LogLine::Fault {
                tick,
                reason: reason.clone(),
            })?;
            writer.finish()?;
            Err(Error::SimulationFault { tick, reason })
        }
        Err(other) => {
            writer.finish()?;
            Err(other)
        }
    }
}

/// RMS leader/follower angle mismatch over all joints, skipping the first
/// `skip_s` seconds.
pub fn tracking_error(records: &[TickRecord], skip_s: f64) -> f64 {
    let skip = (skip_s / crate::DT).round() as usize;
    let tail = records.get(skip..).unwrap_or(&[]);
    if tail.is_empty() {
        return 0.0;
    }
    let sum: f64 = tail
        .iter()
        .map(|r| (r.leader.angle - r.follower.angle).iter().map(|e| e * e).sum::<f64>())
        .sum();
    (sum / (tail.len() * 4) as f64).sqrt()
}

/// [`tracking_error`] divided by the RMS leader angle over the same span.
///
/// This is the latency-sensitive figure. With an open-loop operator torque,
/// link delay adds effective damping and shrinks the motion itself, so the
/// absolute mismatch alone can drop even though tracking got worse.
pub fn relative_tracking_error(records: &[TickRecord], skip_s: f64) -> f64 {
    let skip = (skip_s / crate::DT).round() as usize;
    let tail = records.get(skip..).unwrap_or(&[]);
    let motion: f64 = tail
        .iter()
        .map(|r| r.leader.angle.iter().map(|a| a * a).sum::<f64>())
        .sum();
    if motion == 0.0 {
        return 0.0;
    }
    let motion = (motion / (tail.len() * 4) as f64).sqrt();
    tracking_error(records, skip_s) / motion
}

/// Largest absolute leader/follower angle mismatch after `skip_s` seconds.
pub fn max_tracking_error(records: &[TickRecord], skip_s: f64) -> f64 {
    let skip = (skip_s / crate::DT).round() as usize;
    records
        .get(skip..)
        .unwrap_or(&[])
        .iter()
        .map(|r| (r.leader.angle - r.follower.angle).max_abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub latency_ms: f64,
    pub tracking_rms: f64,
    pub tracking_relative: f64,
    pub outcome: SessionOutcome,
}

/// Re-runs `cfg` with symmetric link latency taken from `latencies_ms`.
pub fn sweep(cfg: &SessionConfig, latencies_ms: &[f64]) -> Result<Vec<SweepRow>> {
    latencies_ms
        .iter()
        .map(|&latency_ms| {
            let mut c = *cfg;
            let with = |m: ChannelModel| ChannelModel {
                base_latency_ms: latency_ms,
                ..m
            };
            c.channel.leader_to_follower = with(c.channel.leader_to_follower);
            c.channel.follower_to_leader = with(c.channel.follower_to_leader);
            let (outcome, records) = simulate(&c)?;
            Ok(SweepRow {
                latency_ms,
                tracking_rms: tracking_error(&records, 2.0),
                tracking_relative: relative_tracking_error(&records, 2.0),
                outcome,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interactive_config_cannot_run_headless() {
        let cfg = SessionConfig {
            operator: OperatorKind::Interactive,
            ..Default::default()
        };
        assert!(matches!(simulate(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn window_defaults_to_whole_trial() {
        let cfg = SessionConfig {
            scenario: Scenario::Freeform,
            duration_s: 0.5,
            ..Default::default()
        };
        let out = simulate_summary(&cfg).unwrap();
        assert_eq!(out.window, TrialWindow { start_tick: 0, end_tick: 500 });
        assert_eq!(out.summary.unwrap().sample_count, 500);
    }
}
