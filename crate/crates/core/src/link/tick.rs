//! The 1 kHz simulated-time loop tying both arms together over the link.

use serde::{Deserialize, Serialize};

use super::channel::{Channel, ChannelModel, SendOutcome};
use super::frame::{decode_frame, encode_frame, Frame, Source};
use crate::control::{bilateral_torque, rtob_update, ControllerGains, RtobParams, TorqueEstimate};
use crate::error::{Error, Result};
use crate::joint::{JointVector, GRIPPER};
use crate::plant::{contact_torque, saturate, step, ArmParams, ObjectModel, PlantState};
use crate::rti::{render_sample, RtiConfig, RtiOutput};
use crate::{DT, DT_US};

/// Scenario marker label (`grasp-start`, `release`, ...).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marker(pub String);

impl Marker {
    pub const GRASP_START: &'static str = "grasp-start";
    pub const LIFT_START: &'static str = "lift-start";
    pub const LIFT_END: &'static str = "lift-end";
    pub const MOVE_START: &'static str = "move-start";
    pub const MOVE_END: &'static str = "move-end";
    pub const PLACE: &'static str = "place";
    pub const RELEASE: &'static str = "release";
    pub const GRASP_END: &'static str = "grasp-end";

    pub fn new(label: impl Into<String>) -> Self {
        Self(label.into())
    }

    pub fn is(&self, label: &str) -> bool {
        self.0 == label
    }
}

/// What the operator sees and feels at the start of a tick.
#[derive(Clone, Copy, Debug)]
pub struct Observation {
    pub tick: u64,
    pub time_s: f64,
    pub leader: PlantState,
    /// The leader's own reaction estimate: what the operator's hand feels.
    pub leader_tau_hat: JointVector,
    /// Ground truth contact flag, available to scenario scripts only.
    pub follower_in_contact: bool,
    /// Follower gripper reaction estimate as last received over the link.
    pub remote_gripper_tau: f64,
    /// Indicator rendered from `remote_gripper_tau`.
    pub remote_rti: RtiOutput,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OperatorAction {
    /// Torque the operator's hand applies to the leader joints (Nm).
    pub torque: JointVector,
    pub markers: Vec<Marker>,
}

pub trait Operator {
    fn act(&mut self, obs: &Observation) -> OperatorAction;
}

impl<F: FnMut(&Observation) -> OperatorAction> Operator for F {
    fn act(&mut self, obs: &Observation) -> OperatorAction {
        self(obs)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ArmSample {
    pub angle: JointVector,
    pub velocity: JointVector,
    pub motor_torque: JointVector,
    pub tau_hat: JointVector,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkEvents {
    pub sent: u32,
    pub dropped: u32,
    pub delivered: u32,
}

/// One logged tick.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TickRecord {
    pub tick: u64,
    pub timestamp_us: u64,
    pub leader: ArmSample,
    pub follower: ArmSample,
    pub operator_torque: JointVector,
    /// Indicator rendered from the follower gripper estimate.
    pub rti: RtiOutput,
    pub l2f: LinkEvents,
    pub f2l: LinkEvents,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub markers: Vec<Marker>,
}

impl TickRecord {
    pub fn gripper_tau(&self) -> f64 {
        self.follower.tau_hat[GRIPPER]
    }
}

/// Everything the loop needs besides the operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimulationParams {
    pub rti: RtiConfig,
    pub gains: ControllerGains,
    pub rtob: RtobParams,
    pub leader: ArmParams,
    pub follower: ArmParams,
    pub object: ObjectModel,
    pub leader_to_follower: ChannelModel,
    pub follower_to_leader: ChannelModel,
}

impl Default for SimulationParams {
    fn default() -> Self {
        Self {
            rti: RtiConfig::default(),
            gains: ControllerGains::default(),
            rtob: RtobParams::default(),
            leader: ArmParams::leader(),
            follower: ArmParams::follower(),
            object: ObjectModel::block(),
            leader_to_follower: ChannelModel::identity(),
            follower_to_leader: ChannelModel::identity(),
        }
    }
}

/// Latest peer state held by one side (zero-order hold between frames).
#[derive(Clone, Copy, Debug, Default)]
struct PeerView {
    angle: JointVector,
    velocity: JointVector,
    tau_hat: JointVector,
    last_seq: Option<u32>,
}

impl PeerView {
    fn apply(&mut self, frame: &Frame) {
        if self.last_seq.is_some_and(|s| frame.seq <= s) {
            return;
        }
        self.last_seq = Some(frame.seq);
        self.angle = frame.angle;
        self.velocity = frame.velocity;
        self.tau_hat = frame.tau_hat;
    }
}

#[derive(Clone, Debug)]
struct ArmSide {
    source: Source,
    state: PlantState,
    estimate: TorqueEstimate,
    peer: PeerView,
    next_seq: u32,
}

impl ArmSide {
    fn new(source: Source, rtob: &RtobParams) -> Self {
        let state = PlantState::default();
        Self {
            source,
            estimate: TorqueEstimate::at_rest(state.velocity, rtob, DT),
            state,
            peer: PeerView::default(),
            next_seq: 0,
        }
    }

    fn frame(&mut self, now_us: u64) -> Frame {
        let seq = self.next_seq;
        self.next_seq = self.next_seq.wrapping_add(1);
        Frame {
            seq,
            timestamp_us: now_us,
            source: self.source,
            angle: self.state.angle,
            velocity: self.state.velocity,
            tau_hat: self.estimate.tau_hat,
        }
    }
}

/// Both arms, their observers and the two link directions.
#[derive(Debug)]
pub struct Simulation {
    params: SimulationParams,
    leader: ArmSide,
    follower: ArmSide,
    l2f: Channel<Vec<u8>>,
    f2l: Channel<Vec<u8>>,
    tick: u64,
    rejected_frames: u64,
}

/// PRNG stream ids for the two link directions.
pub const STREAM_L2F: u64 = 1;
pub const STREAM_F2L: u64 = 2;

impl Simulation {
    pub fn new(params: SimulationParams) -> Self {
        Self {
            leader: ArmSide::new(Source::Leader, &params.rtob),
            follower: ArmSide::new(Source::Follower, &params.rtob),
            l2f: Channel::new(params.leader_to_follower, STREAM_L2F),
            f2l: Channel::new(params.follower_to_leader, STREAM_F2L),
            params,
            tick: 0,
            rejected_frames: 0,
        }
    }

    pub fn params(&self) -> &SimulationParams {
        &self.params
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn now_us(&self) -> u64 {
        self.tick * DT_US
    }

    pub fn leader_state(&self) -> &PlantState {
        &self.leader.state
    }

    pub fn follower_state(&self) -> &PlantState {
        &self.follower.state
    }

    pub fn rejected_frames(&self) -> u64 {
        self.rejected_frames
    }

    fn receive(&mut self, now_us: u64) -> (LinkEvents, LinkEvents) {
        let mut l2f = LinkEvents::default();
        let mut f2l = LinkEvents::default();
        for bytes in self.l2f.poll(now_us) {
            l2f.delivered += 1;
            match decode_frame(&bytes) {
                Ok(frame) => self.follower.peer.apply(&frame),
                Err(_) => self.rejected_frames += 1,
            }
        }
        for bytes in self.f2l.poll(now_us) {
            f2l.delivered += 1;
            match decode_frame(&bytes) {
                Ok(frame) => self.leader.peer.apply(&frame),
                Err(_) => self.rejected_frames += 1,
            }
        }
        (l2f, f2l)
    }

    fn observe(&self) -> Result<Observation> {
        let remote = self.leader.peer.tau_hat[GRIPPER];
        Ok(Observation {
            tick: self.tick,
            time_s: self.tick as f64 * DT,
            leader: self.leader.state,
            leader_tau_hat: self.leader.estimate.tau_hat,
            follower_in_contact: self.follower.state.in_contact,
            remote_gripper_tau: remote,
            remote_rti: render_sample(remote, &self.params.rti).map_err(|e| self.fault(e))?,
        })
    }

    fn fault(&self, err: Error) -> Error {
        match err {
            Error::SimulationFault { .. } => err,
            other => Error::SimulationFault {
                tick: self.tick,
                reason: other.to_string(),
            },
        }
    }

    /// Advances one tick: poll, control, plant, observer, indicator, send.
    pub fn advance(&mut self, operator: &mut dyn Operator) -> Result<TickRecord> {
        let now_us = self.now_us();
        let (mut l2f, mut f2l) = self.receive(now_us);

        let obs = self.observe()?;
        let action = operator.act(&obs);
        if !action.torque.is_finite() {
            return Err(self.fault(Error::NonFinite("operator torque")));
        }

        let p = self.params;
        let cmd_l = bilateral_torque(
            &self.leader.state,
            self.leader.peer.angle,
            self.leader.peer.velocity,
            self.leader.estimate.tau_hat,
            self.leader.peer.tau_hat,
            &p.gains,
        );
        let cmd_f = bilateral_torque(
            &self.follower.state,
            self.follower.peer.angle,
            self.follower.peer.velocity,
            self.follower.estimate.tau_hat,
            self.follower.peer.tau_hat,
            &p.gains,
        );
        let u_l = saturate(cmd_l, &p.leader);
        let u_f = saturate(cmd_f, &p.follower);

        let fs = &self.follower.state;
        let contact = contact_torque(fs.angle[GRIPPER], fs.velocity[GRIPPER], &p.object);
        let ext_f = JointVector::gripper(contact);

        let next_l = step(&self.leader.state, u_l, action.torque, &p.leader, None, DT)
            .map_err(|e| self.fault(e))?;
        let next_f = step(&self.follower.state, u_f, ext_f, &p.follower, Some(&p.object), DT)
            .map_err(|e| self.fault(e))?;
        self.leader.state = next_l;
        self.follower.state = next_f;

        self.leader.estimate = rtob_update(u_l, next_l.velocity, &p.rtob, &self.leader.estimate, DT);
        self.follower.estimate = rtob_update(u_f, next_f.velocity, &p.rtob, &self.follower.estimate, DT);
        if !self.leader.estimate.tau_hat.is_finite() || !self.follower.estimate.tau_hat.is_finite() {
            return Err(self.fault(Error::NonFinite("reaction estimate")));
        }

        let rti = render_sample(self.follower.estimate.tau_hat[GRIPPER], &p.rti)
            .map_err(|e| self.fault(e))?;

        let frame_l = self.leader.frame(now_us);
        l2f.sent += 1;
        if self.l2f.send(encode_frame(&frame_l).to_vec(), now_us) == SendOutcome::Dropped {
            l2f.dropped += 1;
        }
        let frame_f = self.follower.frame(now_us);
        f2l.sent += 1;
        if self.f2l.send(encode_frame(&frame_f).to_vec(), now_us) == SendOutcome::Dropped {
            f2l.dropped += 1;
        }

        let record = TickRecord {
            tick: self.tick,
            timestamp_us: now_us,
            leader: ArmSample {
                angle: next_l.angle,
                velocity: next_l.velocity,
                motor_torque: u_l,
                tau_hat: self.leader.estimate.tau_hat,
            },
            follower: ArmSample {
                angle: next_f.angle,
                velocity: next_f.velocity,
                motor_torque: u_f,
                tau_hat: self.follower.estimate.tau_hat,
            },
            operator_torque: action.torque,
            rti,
            l2f,
            f2l,
            markers: action.markers,
        };
        self.tick += 1;
        Ok(record)
    }
}

/// Number of 1 ms ticks in `duration_s`.
pub fn tick_count(duration_s: f64) -> u64 {
    (duration_s / DT).round() as u64
}

/// Runs `duration_s` of simulated time, handing every record to `sink`.
///
/// Returns the number of ticks executed. Stops at the first plant fault or
/// sink error.
pub fn run_tick_loop(
    duration_s: f64,
    sim: &mut Simulation,
    operator: &mut dyn Operator,
    mut sink: impl FnMut(TickRecord) -> Result<()>,
) -> Result<u64> {
    if !(duration_s > 0.0 && duration_s.is_finite()) {
        return Err(Error::config("duration_s", "must be positive"));
    }
    let n = tick_count(duration_s);
    for _ in 0..n {
        let record = sim.advance(operator)?;
        sink(record)?;
    }
    Ok(n)
}

/// Convenience wrapper collecting the whole trace in memory.
pub fn collect_trace(
    duration_s: f64,
    sim: &mut Simulation,
    operator: &mut dyn Operator,
) -> Result<Vec<TickRecord>> {
    let mut out = Vec::with_capacity(tick_count(duration_s) as usize);
    run_tick_loop(duration_s, sim, operator, |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}
