//! WebAssembly front end: renders the indicator for a torque, simulates a
//! scripted trial, and samples the hue ramp for drawing the bar legend.
//!
//! The plain functions (`render`, `simulate`, `ramp`) carry the logic and are
//! what native tests exercise; the `#[wasm_bindgen]` exports only convert
//! errors into JS exceptions.

use wasm_bindgen::prelude::*;

use teleop_core::link::ChannelModel;
use teleop_core::plant::{ObjectLabel, ObjectModel};
use teleop_core::rti::{color_of, render_sample, RtiConfig};
use teleop_core::session::{simulate as run_scripted, LinkConfig, OperatorKind, Scenario, SessionConfig};
use teleop_core::{Result, GRIPPER};

/// Indicator output for one torque sample.
#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq)]
pub struct RtiView {
    pub fill: f64,
    pub r: u8,
    pub g: u8,
    pub b: u8,
    zone: String,
}

#[wasm_bindgen]
impl RtiView {
    #[wasm_bindgen(getter)]
    pub fn zone(&self) -> String {
        self.zone.clone()
    }

    /// CSS color string, e.g. `rgb(0,255,0)`.
    #[wasm_bindgen(getter)]
    pub fn css(&self) -> String {
        format!("rgb({},{},{})", self.r, self.g, self.b)
    }
}

pub fn render(tau: f64) -> Result<RtiView> {
    let out = render_sample(tau, &RtiConfig::default())?;
    Ok(RtiView {
        fill: out.fill_percent,
        r: out.color.r,
        g: out.color.g,
        b: out.color.b,
        zone: out.zone.to_string(),
    })
}

/// Result of one simulated trial.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct TrialView {
    times: Vec<f64>,
    torques: Vec<f64>,
    tracking: Vec<f64>,
    pub window_start_s: f64,
    pub window_end_s: f64,
    pub low_pct: f64,
    pub opt_pct: f64,
    pub high_pct: f64,
    pub mae: f64,
    label: String,
}

#[wasm_bindgen]
impl TrialView {
    /// Sample times (s) of the decimated traces.
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    /// Follower gripper reaction estimate (Nm).
    #[wasm_bindgen(getter)]
    pub fn torques(&self) -> Vec<f64> {
        self.torques.clone()
    }

    /// Largest leader/follower angle mismatch over all joints (rad).
    #[wasm_bindgen(getter)]
    pub fn tracking(&self) -> Vec<f64> {
        self.tracking.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn label(&self) -> String {
        self.label.clone()
    }
}

/// Keeps every `TRACE_STRIDE`-th tick in the returned traces.
pub const TRACE_STRIDE: usize = 10;

pub fn simulate(scenario: &str, object: &str, operator: &str, seed: u64, latency_ms: f64) -> Result<TrialView> {
    let object: ObjectLabel = object.parse()?;
    let cfg = SessionConfig {
        scenario: scenario.parse::<Scenario>()?,
        object: ObjectModel::preset(object),
        operator: operator.parse::<OperatorKind>()?,
        seed,
        channel: LinkConfig::symmetric(ChannelModel::with_latency_ms(latency_ms)),
        ..Default::default()
    };
    let (outcome, records) = run_scripted(&cfg)?;
    let kept = records.iter().step_by(TRACE_STRIDE);
    let s = outcome.summary.unwrap_or(teleop_core::metrics::BandSummary {
        low_count: 0,
        opt_count: 0,
        high_count: 0,
        sample_count: 0,
        mae: 0.0,
    });
    let pct = |f: fn(&teleop_core::metrics::BandSummary) -> f64| if s.sample_count == 0 { 0.0 } else { f(&s) };
    Ok(TrialView {
        times: kept.clone().map(|r| r.timestamp_us as f64 * 1e-6).collect(),
        torques: kept.clone().map(|r| r.follower.tau_hat[GRIPPER]).collect(),
        tracking: kept.map(|r| (r.leader.angle - r.follower.angle).max_abs()).collect(),
        window_start_s: outcome.window.start_tick as f64 * teleop_core::DT,
        window_end_s: outcome.window.end_tick as f64 * teleop_core::DT,
        low_pct: pct(|s| s.low_pct()),
        opt_pct: pct(|s| s.opt_pct()),
        high_pct: pct(|s| s.high_pct()),
        mae: s.mae,
        label: format!("{} / {} / {}", outcome.labels.task, outcome.labels.object, outcome.labels.method),
    })
}

/// `n` evenly spaced torques from `from` to `to`, flattened as RGB triples.
pub fn ramp(from: f64, to: f64, n: usize) -> Result<Vec<u8>> {
    let cfg = RtiConfig::default();
    let mut out = Vec::with_capacity(3 * n);
    for i in 0..n {
        let t = if n == 1 { from } else { from + (to - from) * i as f64 / (n - 1) as f64 };
        let c = color_of(t, &cfg)?;
        out.extend([c.r, c.g, c.b]);
    }
    Ok(out)
}

fn js(e: teleop_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = renderRti)]
pub fn render_rti(tau: f64) -> std::result::Result<RtiView, JsError> {
    render(tau).map_err(js)
}

#[wasm_bindgen(js_name = simulateTrial)]
pub fn simulate_trial(
    scenario: &str,
    object: &str,
    operator: &str,
    seed: u32,
    latency_ms: f64,
) -> std::result::Result<TrialView, JsError> {
    simulate(scenario, object, operator, seed as u64, latency_ms).map_err(js)
}

#[wasm_bindgen(js_name = colorRamp)]
pub fn color_ramp(from: f64, to: f64, n: usize) -> std::result::Result<Vec<u8>, JsError> {
    ramp(from, to, n).map_err(js)
}
