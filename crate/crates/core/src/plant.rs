//! Lumped per-joint arm dynamics and the grasp contact model.
//!
//! Each joint is an independent rotor: inertia, viscous damping, optional
//! quadratic hydrodynamic drag (follower only) and a saturated motor. The
//! gripper joint additionally meets a spring-damper object once it closes
//! past the object's contact angle. Integration is semi-implicit Euler.

use serde::{Deserialize, Serialize};

use crate::error::{Error, FieldError, Result};
use crate::joint::{JointVector, GRIPPER};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArmParams {
    /// kg·m²
    pub inertia: JointVector,
    /// Nm·s/rad
    pub viscous_damping: JointVector,
    /// Nm·s²/rad²
    pub drag_quadratic: JointVector,
    /// Nm
    pub torque_limit: JointVector,
}

impl Default for ArmParams {
    fn default() -> Self {
        Self::leader()
    }
}

impl ArmParams {
    pub fn leader() -> Self {
        Self {
            inertia: JointVector::splat(0.01),
            viscous_damping: JointVector::splat(0.05),
            drag_quadratic: JointVector::ZERO,
            torque_limit: JointVector::splat(1.0),
        }
    }

    pub fn follower() -> Self {
        Self {
            drag_quadratic: JointVector::splat(0.2),
            ..Self::leader()
        }
    }

    pub fn check(&self, prefix: &str, errors: &mut Vec<FieldError>) {
        let rules: [(&str, &JointVector, fn(f64) -> bool, &str); 4] = [
            ("inertia", &self.inertia, |v| v > 0.0, "must be positive"),
            ("viscous_damping", &self.viscous_damping, |v| v >= 0.0, "must be non-negative"),
            ("drag_quadratic", &self.drag_quadratic, |v| v >= 0.0, "must be non-negative"),
            ("torque_limit", &self.torque_limit, |v| v > 0.0, "must be positive"),
        ];
        for (name, values, ok, msg) in rules {
            if values.iter().any(|&v| !v.is_finite() || !ok(v)) {
                errors.push(FieldError::new(format!("{prefix}{name}"), msg));
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjectLabel {
    Block,
    Sponge,
    None,
}

impl std::fmt::Display for ObjectLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ObjectLabel::Block => "Block",
            ObjectLabel::Sponge => "Sponge",
            ObjectLabel::None => "None",
        })
    }
}

impl std::str::FromStr for ObjectLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "block" => Ok(ObjectLabel::Block),
            "sponge" => Ok(ObjectLabel::Sponge),
            "none" => Ok(ObjectLabel::None),
            _ => Err(Error::config("object", format!("unknown object `{s}`"))),
        }
    }
}

/// Spring-damper object squeezed by the follower gripper.
///
/// When read from a config file, omitted fields fall back to the preset of
/// the given `label` (Block by default).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "ObjectFields")]
pub struct ObjectModel {
    /// Nm/rad of gripper closure past contact.
    pub stiffness: f64,
    /// Nm·s/rad
    pub contact_damping: f64,
    /// Gripper angle (rad) at which the fingers touch the object.
    pub contact_angle: f64,
    pub label: ObjectLabel,
}

impl Default for ObjectModel {
    fn default() -> Self {
        Self::block()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectFields {
    label: Option<ObjectLabel>,
    stiffness: Option<f64>,
    contact_damping: Option<f64>,
    contact_angle: Option<f64>,
}

impl From<ObjectFields> for ObjectModel {
    fn from(fields: ObjectFields) -> Self {
        let base = ObjectModel::preset(fields.label.unwrap_or(ObjectLabel::Block));
        Self {
            stiffness: fields.stiffness.unwrap_or(base.stiffness),
            contact_damping: fields.contact_damping.unwrap_or(base.contact_damping),
            contact_angle: fields.contact_angle.unwrap_or(base.contact_angle),
            label: base.label,
        }
    }
}

impl ObjectModel {
    pub fn preset(label: ObjectLabel) -> Self {
        match label {
            ObjectLabel::Block => Self::block(),
            ObjectLabel::Sponge => Self::sponge(),
            ObjectLabel::None => Self::none(),
        }
    }

    pub const DEFAULT_CONTACT_ANGLE: f64 = 0.3;

    /// Rigid block.
    pub fn block() -> Self {
        Self {
            stiffness: 6.0,
            contact_damping: 0.05,
            contact_angle: Self::DEFAULT_CONTACT_ANGLE,
            label: ObjectLabel::Block,
        }
    }

    /// Compliant sponge.
    pub fn sponge() -> Self {
        Self {
            stiffness: 1.5,
            label: ObjectLabel::Sponge,
            ..Self::block()
        }
    }

    pub fn none() -> Self {
        Self {
            stiffness: 0.0,
            label: ObjectLabel::None,
            ..Self::block()
        }
    }

    pub fn check(&self, prefix: &str, errors: &mut Vec<FieldError>) {
        if !(self.stiffness.is_finite() && self.stiffness >= 0.0) {
            errors.push(FieldError::new(format!("{prefix}stiffness"), "must be non-negative"));
        }
        if self.label != ObjectLabel::None && self.stiffness <= 0.0 {
            errors.push(FieldError::new(
                format!("{prefix}stiffness"),
                "must be positive for a physical object",
            ));
        }
        if !(self.contact_damping.is_finite() && self.contact_damping >= 0.0) {
            errors.push(FieldError::new(
                format!("{prefix}contact_damping"),
                "must be non-negative",
            ));
        }
        if !self.contact_angle.is_finite() {
            errors.push(FieldError::new(format!("{prefix}contact_angle"), "must be finite"));
        }
    }

    pub fn touches(&self, gripper_angle: f64) -> bool {
        self.label != ObjectLabel::None && gripper_angle > self.contact_angle
    }
}

/// Contact torque on the gripper. Never positive: the object only resists closing.
pub fn contact_torque(gripper_angle: f64, gripper_velocity: f64, obj: &ObjectModel) -> f64 {
    if !obj.touches(gripper_angle) {
        return 0.0;
    }
    let penetration = gripper_angle - obj.contact_angle;
    let raw = -obj.stiffness * penetration - obj.contact_damping * gripper_velocity;
    raw.min(0.0)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlantState {
    /// rad; for the gripper, larger means more closed.
    pub angle: JointVector,
    /// rad/s
    pub velocity: JointVector,
    pub in_contact: bool,
}

impl PlantState {
    pub fn kinetic_energy(&self, params: &ArmParams) -> f64 {
        (0..4)
            .map(|i| 0.5 * params.inertia[i] * self.velocity[i] * self.velocity[i])
            .sum()
    }
}

pub fn saturate(torque: JointVector, params: &ArmParams) -> JointVector {
    torque.zip_with(params.torque_limit, |t, lim| t.clamp(-lim, lim))
}

/// Advances one arm by `dt` seconds.
///
/// `external_torque` is everything not produced by the motor (operator hand,
/// object contact). `object` is only consulted to refresh `in_contact`.
pub fn step(
    state: &PlantState,
    motor_torque: JointVector,
    external_torque: JointVector,
    params: &ArmParams,
    object: Option<&ObjectModel>,
    dt: f64,
) -> Result<PlantState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::NonFinite("dt"));
    }
    if !motor_torque.is_finite() {
        return Err(Error::NonFinite("motor torque"));
    }
    if !external_torque.is_finite() {
        return Err(Error::NonFinite("external torque"));
    }
    if !state.angle.is_finite() || !state.velocity.is_finite() {
        return Err(Error::NonFinite("plant state"));
    }
    let motor = saturate(motor_torque, params);
    let mut next = *state;
    for i in 0..4 {
        let v = state.velocity[i];
        let dissipative = params.viscous_damping[i] * v + params.drag_quadratic[i] * v * v.abs();
        let accel = (motor[i] + external_torque[i] - dissipative) / params.inertia[i];
        let v_next = v + dt * accel;
        next.velocity[i] = v_next;
        next.angle[i] = state.angle[i] + dt * v_next;
    }
    next.in_contact = object.is_some_and(|o| o.touches(next.angle[GRIPPER]));
    if !next.angle.is_finite() || !next.velocity.is_finite() {
        return Err(Error::NonFinite("plant state after step"));
    }
    Ok(next)
}
