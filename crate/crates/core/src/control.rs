//! 4-channel bilateral control and the reaction torque observer (RTOB).
//!
//! Sign convention: a positive reaction estimate means the environment
//! resists the joint's positive direction. For the follower gripper that is
//! the object pushing the fingers open; for the leader gripper the operator
//! squeezing the handle shows up as a negative estimate.

use serde::{Deserialize, Serialize};

use crate::error::FieldError;
use crate::joint::JointVector;
use crate::plant::PlantState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ControllerGains {
    /// Nm/rad
    pub kp: f64,
    /// Nm·s/rad
    pub kd: f64,
    /// Force-channel gain (dimensionless).
    pub kf: f64,
}

impl Default for ControllerGains {
    fn default() -> Self {
        Self {
            kp: 4.0,
            kd: 0.1,
            kf: 1.0,
        }
    }
}

impl ControllerGains {
    pub fn check(&self, prefix: &str, errors: &mut Vec<FieldError>) {
        if !(self.kp.is_finite() && self.kp > 0.0) {
            errors.push(FieldError::new(format!("{prefix}kp"), "must be positive"));
        }
        if !(self.kd.is_finite() && self.kd >= 0.0) {
            errors.push(FieldError::new(format!("{prefix}kd"), "must be non-negative"));
        }
        if !(self.kf.is_finite() && self.kf >= 0.0) {
            errors.push(FieldError::new(format!("{prefix}kf"), "must be non-negative"));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RtobParams {
    /// Observer low-pass cutoff (rad/s).
    pub cutoff: f64,
    /// kg·m²
    pub nominal_inertia: JointVector,
    /// Nm·s/rad
    pub nominal_damping: JointVector,
}

impl Default for RtobParams {
    fn default() -> Self {
        Self {
            cutoff: 100.0,
            nominal_inertia: JointVector::splat(0.01),
            nominal_damping: JointVector::splat(0.05),
        }
    }
}

impl RtobParams {
    pub fn check(&self, prefix: &str, errors: &mut Vec<FieldError>) {
        if !(self.cutoff.is_finite() && self.cutoff > 0.0) {
            errors.push(FieldError::new(format!("{prefix}cutoff"), "must be positive"));
        }
        if self.nominal_inertia.iter().any(|&j| !(j.is_finite() && j > 0.0)) {
            errors.push(FieldError::new(
                format!("{prefix}nominal_inertia"),
                "must be positive",
            ));
        }
        if !self.nominal_damping.is_finite() {
            errors.push(FieldError::new(
                format!("{prefix}nominal_damping"),
                "must be finite",
            ));
        }
    }

    /// Filter blend factor for one step of length `dt`.
    pub fn blend(&self, dt: f64) -> f64 {
        1.0 - (-self.cutoff * dt).exp()
    }

    /// Velocity feedthrough gain for a step of length `dt`.
    ///
    /// `(e^{g·dt} - 1) / dt` rather than plain `g`: with the sampled filter
    /// this weights the per-step velocity change exactly like the other
    /// disturbance terms, so a constant external torque is recovered without
    /// a gain error. It tends to `g` as `dt -> 0`.
    pub fn feedthrough_gain(&self, dt: f64) -> f64 {
        (self.cutoff * dt).exp_m1() / dt
    }
}

/// Observer output plus its filter memory.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TorqueEstimate {
    /// Estimated reaction torque per joint (Nm).
    pub tau_hat: JointVector,
    /// Low-pass memory of `tau_motor - bn*v + k*Jn*v`.
    pub filter: JointVector,
}

impl TorqueEstimate {
    /// Settled observer for an arm moving at `velocity` with no disturbance.
    pub fn at_rest(velocity: JointVector, params: &RtobParams, dt: f64) -> Self {
        let feedthrough = params.nominal_inertia * velocity * params.feedthrough_gain(dt);
        let filter = feedthrough - params.nominal_damping * velocity;
        Self {
            tau_hat: filter - feedthrough,
            filter,
        }
    }
}

/// One observer step.
///
/// Acceleration is never differentiated: the `k*Jn*v` feedthrough term is
/// added before the low-pass filter and removed after it, which realises
/// `LPF(Jn * dv/dt)` without forming `dv/dt`. `velocity` is the velocity
/// reached after applying `motor_torque` for `dt`.
pub fn rtob_update(
    motor_torque: JointVector,
    velocity: JointVector,
    params: &RtobParams,
    state: &TorqueEstimate,
    dt: f64,
) -> TorqueEstimate {
    let a = params.blend(dt);
    let feedthrough = params.nominal_inertia * velocity * params.feedthrough_gain(dt);
    let target = motor_torque - params.nominal_damping * velocity + feedthrough;
    let filter = state.filter + (target - state.filter) * a;
    TorqueEstimate {
        tau_hat: filter - feedthrough,
        filter,
    }
}

/// Symmetric 4-channel bilateral law for one arm.
///
/// Position and velocity channels pull the arm toward its peer; the force
/// channel drives the sum of both reaction estimates toward zero. Output is
/// unsaturated; the plant clamps it.
pub fn bilateral_torque(
    self_state: &PlantState,
    peer_angle: JointVector,
    peer_velocity: JointVector,
    tau_self: JointVector,
    tau_peer: JointVector,
    gains: &ControllerGains,
) -> JointVector {
    let position = (peer_angle - self_state.angle) * gains.kp;
    let velocity = (peer_velocity - self_state.velocity) * gains.kd;
    let force = (tau_self + tau_peer) * (0.5 * gains.kf);
    position + velocity - force
}
