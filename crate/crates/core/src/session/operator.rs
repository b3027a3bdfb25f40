//! Operators driving the leader arm: scripted stand-ins for the human
//! participants, and an interactive operator fed by console commands.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::sync::mpsc::Receiver;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::config::{OperatorKind, OperatorModel, Scenario, SessionConfig};
use super::telemetry::Command;
use crate::joint::{JointVector, GRIPPER};
use crate::link::tick::{Marker, Observation, Operator, OperatorAction};
use crate::rti::{fill_ratio, RtiConfig, RtiOutput, Zone};
use crate::DT;

/// PRNG stream reserved for the operator.
pub const STREAM_OPERATOR: u64 = 10;

/// One scripted arm move: `+torque` for the first half, `-torque` for the
/// second half, so the joint comes back to rest after `duration_s`.
#[derive(Clone, Copy, Debug)]
struct Move {
    start_s: f64,
    duration_s: f64,
    joint: usize,
    sign: f64,
    start_marker: Option<&'static str>,
    end_marker: Option<&'static str>,
}

impl Move {
    fn torque(&self, t: f64, magnitude: f64) -> f64 {
        let local = t - self.start_s;
        if local < 0.0 || local >= self.duration_s {
            0.0
        } else if local < self.duration_s / 2.0 {
            self.sign * magnitude
        } else {
            -self.sign * magnitude
        }
    }
}

/// Timeline of one task, relative to the trial duration.
#[derive(Clone, Debug)]
pub struct ScenarioScript {
    moves: Vec<Move>,
    release_s: Option<f64>,
}

const MOVE_S: f64 = 0.8;

impl ScenarioScript {
    pub fn new(scenario: Scenario, duration_s: f64) -> Self {
        let at = |frac: f64| frac * duration_s;
        let mv = |start: f64, joint: usize, sign: f64, s: Option<&'static str>, e: Option<&'static str>| Move {
            start_s: start,
            duration_s: MOVE_S,
            joint,
            sign,
            start_marker: s,
            end_marker: e,
        };
        match scenario {
            Scenario::Lift => Self {
                moves: vec![
                    mv(at(0.30), 1, 1.0, Some(Marker::LIFT_START), Some(Marker::LIFT_END)),
                    mv(at(0.60), 1, -1.0, Some(Marker::PLACE), None),
                ],
                release_s: Some(at(0.80)),
            },
            Scenario::PickPlace => Self {
                moves: vec![
                    mv(at(0.25), 1, 1.0, Some(Marker::LIFT_START), Some(Marker::LIFT_END)),
                    mv(at(0.40), 0, 1.0, Some(Marker::MOVE_START), None),
                    mv(at(0.40), 2, -1.0, None, Some(Marker::MOVE_END)),
                    mv(at(0.60), 1, -1.0, Some(Marker::PLACE), None),
                ],
                release_s: Some(at(0.78)),
            },
            Scenario::Freeform => Self {
                moves: Vec::new(),
                release_s: None,
            },
        }
    }

    /// Arm (J1..J3) torque at time `t`, plus markers for moves starting or
    /// ending in the tick `[t, t + DT)`.
    fn arm(&self, t: f64, magnitude: f64, markers: &mut Vec<Marker>) -> JointVector {
        let mut torque = JointVector::ZERO;
        let in_tick = |x: f64| x >= t - 1e-12 && x < t + DT - 1e-12;
        for m in &self.moves {
            torque[m.joint] += m.torque(t, magnitude);
            if let Some(label) = m.start_marker.filter(|_| in_tick(m.start_s)) {
                markers.push(Marker::new(label));
            }
            if let Some(label) = m.end_marker.filter(|_| in_tick(m.start_s + m.duration_s)) {
                markers.push(Marker::new(label));
            }
        }
        torque
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GripPhase {
    Approach,
    Holding,
    Released,
}

/// Scripted operator.
///
/// Both modes share the task timeline, the grip tremor and the grip
/// disturbance caused by moving the arm. They differ only in how the grip is
/// regulated while holding:
///
/// * Baseline: the operator remembers a grip target drawn once per trial
///   around `t_opt` (dispersion `sigma_base`) that slowly drifts, and
///   corrects toward it from lagged, noisy haptic perception of the force
///   felt at the leader handle.
/// * RTI-aware: the operator watches the indicator (after `visual_lag_s`):
///   squeezes at `rti_rate` while it reads Low, relaxes while High, and
///   inside the band nudges the bar toward the `t_opt` position.
#[derive(Debug)]
pub struct ScriptedOperator {
    rti_aware: bool,
    scenario: Scenario,
    model: OperatorModel,
    rti: RtiConfig,
    script: ScenarioScript,
    rng: ChaCha8Rng,
    phase: GripPhase,
    grip: f64,
    grip_limit: f64,
    target_mean: f64,
    target: f64,
    perceived: f64,
    coupling_sign: f64,
    visual: VecDeque<RtiOutput>,
    visual_delay: usize,
    fill_opt: f64,
}

impl ScriptedOperator {
    pub fn new(cfg: &SessionConfig) -> Self {
        let rti_aware = cfg.operator == OperatorKind::ScriptedRtiAware;
        let model = cfg.operator_model;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(STREAM_OPERATOR);
        let z: f64 = StandardNormal.sample(&mut rng);
        let target_mean = (cfg.rti.t_opt + model.sigma_base * z).max(0.0);
        let coupling_sign = if rand::Rng::random::<bool>(&mut rng) { 1.0 } else { -1.0 };
        Self {
            rti_aware,
            scenario: cfg.scenario,
            model,
            rti: cfg.rti,
            script: ScenarioScript::new(cfg.scenario, cfg.duration_s),
            rng,
            phase: GripPhase::Approach,
            grip: model.approach_torque,
            grip_limit: cfg.leader.torque_limit[GRIPPER],
            target_mean,
            target: target_mean,
            perceived: 0.0,
            coupling_sign,
            visual: VecDeque::new(),
            visual_delay: (model.visual_lag_s / DT).round() as usize,
            fill_opt: fill_ratio(cfg.rti.t_opt, &cfg.rti).unwrap_or(50.0),
        }
    }

    pub fn phase(&self) -> GripPhase {
        self.phase
    }

    pub fn grip(&self) -> f64 {
        self.grip
    }

    /// The baseline operator's remembered grip target for this trial.
    pub fn target_mean(&self) -> f64 {
        self.target_mean
    }

    fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Indicator reading as the operator currently perceives it.
    fn seen_rti(&mut self, current: RtiOutput) -> RtiOutput {
        self.visual.push_back(current);
        while self.visual.len() > self.visual_delay + 1 {
            self.visual.pop_front();
        }
        self.visual[0]
    }

    fn regulate_baseline(&mut self) {
        let m = self.model;
        let drift = if m.target_drift > 0.0 { m.target_drift * DT.sqrt() * self.normal() } else { 0.0 };
        self.target += m.target_reversion * (self.target_mean - self.target) * DT + drift;
        let noise = if m.perception_noise > 0.0 { m.perception_noise * self.normal() } else { 0.0 };
        let felt = self.perceived + noise;
        self.grip += m.baseline_correction * (self.target - felt) * DT;
    }

    fn regulate_rti(&mut self, seen: RtiOutput) {
        let m = self.model;
        self.grip += match seen.zone {
            Zone::Low => m.rti_rate * DT,
            Zone::High => -m.rti_rate * DT,
            Zone::Optimal => {
                let span = self.rti.t_max - self.rti.t_min;
                m.rti_centering * (self.fill_opt - seen.fill_percent) / 100.0 * span * DT
            }
        };
    }

    fn sinusoid(&self, t: f64) -> JointVector {
        let a = self.model.sinusoid_amplitude;
        let w = 2.0 * PI * self.model.sinusoid_hz;
        JointVector::new([0, 1, 2, 3].map(|j| a * (w * t + j as f64 * PI / 4.0).sin()))
    }
}

impl Operator for ScriptedOperator {
    fn act(&mut self, obs: &Observation) -> OperatorAction {
        let t = obs.time_s;
        if self.scenario == Scenario::Freeform {
            return OperatorAction {
                torque: self.sinusoid(t),
                markers: Vec::new(),
            };
        }

        let mut markers = Vec::new();
        let arm = self.script.arm(t, self.model.move_torque, &mut markers);

        let m = self.model;
        let felt = -obs.leader_tau_hat[GRIPPER];
        let blend = if m.perception_lag_s > 0.0 { 1.0 - (-DT / m.perception_lag_s).exp() } else { 1.0 };
        self.perceived += blend * (felt - self.perceived);
        let seen = self.seen_rti(obs.remote_rti);

        match self.phase {
            GripPhase::Approach if obs.follower_in_contact => {
                self.phase = GripPhase::Holding;
                markers.push(Marker::new(Marker::GRASP_START));
            }
            GripPhase::Holding if self.script.release_s.is_some_and(|r| t >= r) => {
                self.phase = GripPhase::Released;
                markers.push(Marker::new(Marker::RELEASE));
            }
            _ => {}
        }

        let grip = match self.phase {
            GripPhase::Approach => m.approach_torque,
            GripPhase::Holding => {
                if self.rti_aware {
                    self.regulate_rti(seen);
                } else {
                    self.regulate_baseline();
                }
                if m.tremor > 0.0 {
                    self.grip += m.tremor * DT.sqrt() * self.normal();
                }
                self.grip = self.grip.clamp(0.0, self.grip_limit);
                let moving = arm.iter().take(GRIPPER).map(|v| v.abs()).sum::<f64>();
                self.grip + m.motion_coupling * self.coupling_sign * moving
            }
            GripPhase::Released => -m.release_torque,
        };

        let mut torque = arm;
        torque[GRIPPER] = grip;
        OperatorAction { torque, markers }
    }
}

/// Builds the scripted operator for `cfg`, or `None` for interactive sessions.
pub fn scripted_operator(cfg: &SessionConfig) -> Option<ScriptedOperator> {
    match cfg.operator {
        OperatorKind::ScriptedBaseline | OperatorKind::ScriptedRtiAware => Some(ScriptedOperator::new(cfg)),
        OperatorKind::Interactive => None,
    }
}

/// Ticks a `joint_jog` torque stays applied.
pub const JOG_TICKS: u32 = 20;

/// Operator driven by console commands.
#[derive(Debug)]
pub struct InteractiveOperator {
    commands: Receiver<Command>,
    grip: f64,
    grip_limit: f64,
    jog: JointVector,
    jog_left: [u32; 4],
    applied: u64,
}

impl InteractiveOperator {
    pub fn new(commands: Receiver<Command>, grip_limit: f64) -> Self {
        Self {
            commands,
            grip: 0.0,
            grip_limit,
            jog: JointVector::ZERO,
            jog_left: [0; 4],
            applied: 0,
        }
    }

    pub fn grip(&self) -> f64 {
        self.grip
    }

    /// Number of commands applied so far.
    pub fn applied(&self) -> u64 {
        self.applied
    }
}

impl Operator for InteractiveOperator {
    fn act(&mut self, _obs: &Observation) -> OperatorAction {
        let mut markers = Vec::new();
        while let Ok(cmd) = self.commands.try_recv() {
            self.applied += 1;
            match cmd {
                Command::GripperTargetDelta { delta } => {
                    self.grip = (self.grip + delta).clamp(-self.grip_limit, self.grip_limit);
                }
                Command::JointJog { joint, delta } => {
                    if joint < GRIPPER {
                        self.jog[joint] = delta;
                        self.jog_left[joint] = JOG_TICKS;
                    }
                }
                Command::Marker { label } => markers.push(Marker::new(label)),
            }
        }
        let mut torque = JointVector::gripper(self.grip);
        for j in 0..GRIPPER {
            if self.jog_left[j] > 0 {
                torque[j] = self.jog[j];
                self.jog_left[j] -= 1;
            }
        }
        OperatorAction { torque, markers }
    }
}
