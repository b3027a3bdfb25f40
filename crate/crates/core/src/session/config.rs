//! Session configuration file (TOML, unknown keys rejected).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::control::{ControllerGains, RtobParams};
use crate::error::{Error, FieldError, Result};
use crate::link::tick::SimulationParams;
use crate::link::ChannelModel;
use crate::plant::{ArmParams, ObjectModel};
use crate::rti::RtiConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Lift,
    PickPlace,
    Freeform,
}

impl Scenario {
    pub fn label(self) -> &'static str {
        match self {
            Scenario::Lift => "Lift",
            Scenario::PickPlace => "Pick&Place",
            Scenario::Freeform => "Freeform",
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lift" => Ok(Scenario::Lift),
            "pick-place" | "pickplace" | "pick&place" => Ok(Scenario::PickPlace),
            "freeform" => Ok(Scenario::Freeform),
            _ => Err(Error::config("scenario", format!("unknown scenario `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    ScriptedBaseline,
    ScriptedRtiAware,
    Interactive,
}

impl OperatorKind {
    pub fn label(self) -> &'static str {
        match self {
            OperatorKind::ScriptedBaseline => "Baseline",
            OperatorKind::ScriptedRtiAware => "RTI-Aware",
            OperatorKind::Interactive => "Interactive",
        }
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "scripted-baseline" | "baseline" => Ok(OperatorKind::ScriptedBaseline),
            "scripted-rti-aware" | "rti-aware" | "rti" => Ok(OperatorKind::ScriptedRtiAware),
            "interactive" => Ok(OperatorKind::Interactive),
            _ => Err(Error::config("operator", format!("unknown operator `{s}`"))),
        }
    }
}

/// Behaviour constants of the scripted operators.
///
/// Defaults place the baseline operator at roughly a third of the hold
/// phase inside the optimal band.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OperatorModel {
    /// Spread of the baseline operator's per-trial grip target (Nm).
    pub sigma_base: f64,
    /// Diffusion of the baseline target within a trial (Nm/√s).
    pub target_drift: f64,
    /// Mean reversion rate of the baseline target (1/s).
    pub target_reversion: f64,
    /// Haptic perception noise (Nm).
    pub perception_noise: f64,
    /// Haptic perception time constant (s).
    pub perception_lag_s: f64,
    /// Baseline correction rate toward the remembered target (1/s).
    pub baseline_correction: f64,
    /// Grip random walk (Nm/√s).
    pub tremor: f64,
    /// Delay between the indicator changing and the operator reacting (s).
    pub visual_lag_s: f64,
    /// Bang-band correction speed outside the optimal band (Nm/s).
    pub rti_rate: f64,
    /// In-band pull toward the bar position of `t_opt` (1/s).
    pub rti_centering: f64,
    /// Closing torque while approaching the object (Nm).
    pub approach_torque: f64,
    /// Opening torque after release (Nm).
    pub release_torque: f64,
    /// Arm motion torque (Nm) for scripted lift and transport moves.
    pub move_torque: f64,
    /// Grip disturbance per Nm of arm motion torque.
    pub motion_coupling: f64,
    /// Amplitude of the free-motion sinusoid (Nm).
    pub sinusoid_amplitude: f64,
    /// Frequency of the free-motion sinusoid (Hz).
    pub sinusoid_hz: f64,
}

impl Default for OperatorModel {
    fn default() -> Self {
        Self {
            sigma_base: 0.18,
            target_drift: 0.05,
            target_reversion: 0.5,
            perception_noise: 0.03,
            perception_lag_s: 0.15,
            baseline_correction: 1.0,
            tremor: 0.02,
            visual_lag_s: 0.15,
            rti_rate: 0.4,
            rti_centering: 2.0,
            approach_torque: 0.08,
            release_torque: 0.1,
            move_torque: 0.05,
            motion_coupling: 1.0,
            sinusoid_amplitude: 0.03,
            sinusoid_hz: 0.5,
        }
    }
}

impl OperatorModel {
    /// All stochastic terms switched off.
    pub fn noise_free() -> Self {
        Self {
            sigma_base: 0.0,
            target_drift: 0.0,
            perception_noise: 0.0,
            tremor: 0.0,
            motion_coupling: 0.0,
            ..Self::default()
        }
    }

    pub fn check(&self, prefix: &str, errors: &mut Vec<FieldError>) {
        let fields = [
            ("sigma_base", self.sigma_base),
            ("target_drift", self.target_drift),
            ("target_reversion", self.target_reversion),
            ("perception_noise", self.perception_noise),
            ("perception_lag_s", self.perception_lag_s),
            ("baseline_correction", self.baseline_correction),
            ("tremor", self.tremor),
            ("visual_lag_s", self.visual_lag_s),
            ("rti_rate", self.rti_rate),
            ("rti_centering", self.rti_centering),
            ("approach_torque", self.approach_torque),
            ("release_torque", self.release_torque),
            ("move_torque", self.move_torque),
            ("motion_coupling", self.motion_coupling),
            ("sinusoid_amplitude", self.sinusoid_amplitude),
            ("sinusoid_hz", self.sinusoid_hz),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v >= 0.0) {
                errors.push(FieldError::new(format!("{prefix}{name}"), "must be finite and >= 0"));
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinkConfig {
    pub leader_to_follower: ChannelModel,
    pub follower_to_leader: ChannelModel,
}

impl Default for LinkConfig {
    fn default() -> Self {
        Self {
            leader_to_follower: ChannelModel::identity(),
            follower_to_leader: ChannelModel::identity(),
        }
    }
}

impl LinkConfig {
    pub fn symmetric(model: ChannelModel) -> Self {
        Self {
            leader_to_follower: model,
            follower_to_leader: model,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TelemetryConfig {
    /// Emit one telemetry message every `decimation` ticks.
    pub decimation: u32,
}

impl Default for TelemetryConfig {
    fn default() -> Self {
        Self { decimation: 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SessionConfig {
    pub scenario: Scenario,
    pub operator: OperatorKind,
    pub duration_s: f64,
    pub seed: u64,
    pub rti: RtiConfig,
    pub gains: ControllerGains,
    pub rtob: RtobParams,
    pub leader: ArmParams,
    pub follower: ArmParams,
    pub object: ObjectModel,
    pub channel: LinkConfig,
    pub operator_model: OperatorModel,
    pub telemetry: TelemetryConfig,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::Lift,
            operator: OperatorKind::ScriptedRtiAware,
            duration_s: 20.0,
            seed: 0,
            rti: RtiConfig::default(),
            gains: ControllerGains::default(),
            rtob: RtobParams::default(),
            leader: ArmParams::leader(),
            follower: ArmParams::follower(),
            object: ObjectModel::block(),
            channel: LinkConfig::default(),
            operator_model: OperatorModel::default(),
            telemetry: TelemetryConfig::default(),
        }
    }
}

impl SessionConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg = Self::from_toml_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("session config always serializes")
    }

    /// Every violated invariant, named by dotted key path.
    pub fn field_errors(&self) -> Vec<FieldError> {
        let mut errors = Vec::new();
        if !(self.duration_s.is_finite() && self.duration_s > 0.0) {
            errors.push(FieldError::new("duration_s", "must be positive"));
        }
        self.rti.check("rti.", &mut errors);
        self.gains.check("gains.", &mut errors);
        self.rtob.check("rtob.", &mut errors);
        self.leader.check("leader.", &mut errors);
        self.follower.check("follower.", &mut errors);
        self.object.check("object.", &mut errors);
        self.channel
            .leader_to_follower
            .check("channel.leader_to_follower.", &mut errors);
        self.channel
            .follower_to_leader
            .check("channel.follower_to_leader.", &mut errors);
        self.operator_model.check("operator_model.", &mut errors);
        if self.telemetry.decimation == 0 {
            errors.push(FieldError::new("telemetry.decimation", "must be >= 1"));
        }
        errors
    }

    pub fn validate(&self) -> Result<()> {
        let errors = self.field_errors();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errors))
        }
    }

    /// Channel seeds are derived from the session seed unless set explicitly.
    pub fn simulation_params(&self) -> SimulationParams {
        let seeded = |m: ChannelModel| ChannelModel {
            seed: if m.seed == 0 { self.seed } else { m.seed },
            ..m
        };
        SimulationParams {
            rti: self.rti,
            gains: self.gains,
            rtob: self.rtob,
            leader: self.leader,
            follower: self.follower,
            object: self.object,
            leader_to_follower: seeded(self.channel.leader_to_follower),
            follower_to_leader: seeded(self.channel.follower_to_leader),
        }
    }
}
