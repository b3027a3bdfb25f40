//! Newline-delimited JSON messages exchanged with the operator console.
//!
//! Server to console:
//!
//! ```json
//! {"type":"hello","schema_version":1,"decimation":20,"rti":{...}}
//! {"type":"telemetry","t":1.25,"tick":1250,"tau_hat_J4":0.31,"fill":51.7,
//!  "color":[0,255,0],"zone":"Optimal","angles":[0.0,0.1,0.0,0.35]}
//! ```
//!
//! Console to server:
//!
//! ```json
//! {"type":"command","command":"gripper_target_delta","delta":0.01}
//! {"type":"command","command":"joint_jog","joint":1,"delta":0.05}
//! {"type":"command","command":"marker","label":"grasp-start"}
//! ```

use serde::{Deserialize, Serialize};

use crate::joint::{JointVector, GRIPPER};
use crate::link::tick::{Marker, TickRecord};
use crate::rti::{ColorRgb, RtiConfig, Zone};

pub const TELEMETRY_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TelemetryMessage {
    /// Simulated seconds.
    pub t: f64,
    pub tick: u64,
    #[serde(rename = "tau_hat_J4")]
    pub tau_hat_j4: f64,
    pub fill: f64,
    pub color: ColorRgb,
    pub zone: Zone,
    /// Follower joint angles (rad).
    pub angles: JointVector,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub markers: Vec<Marker>,
}

impl TelemetryMessage {
    pub fn from_record(r: &TickRecord) -> Self {
        Self {
            t: r.timestamp_us as f64 * 1e-6,
            tick: r.tick,
            tau_hat_j4: r.follower.tau_hat[GRIPPER],
            fill: r.rti.fill_percent,
            color: r.rti.color,
            zone: r.rti.zone,
            angles: r.follower.angle,
            markers: r.markers.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Outbound {
    Hello {
        schema_version: u32,
        decimation: u32,
        rti: RtiConfig,
    },
    Telemetry(TelemetryMessage),
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    /// Change the operator's grip torque by `delta` Nm (positive closes).
    GripperTargetDelta { delta: f64 },
    /// Apply `delta` Nm to leader joint `joint` (0-based, J1..J3) briefly.
    JointJog { joint: usize, delta: f64 },
    Marker { label: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Inbound {
    Command(Command),
}

impl Inbound {
    pub fn parse(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}
