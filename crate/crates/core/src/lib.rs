//! Deterministic leader-follower bilateral teleoperation simulator.
//!
//! The crate is organised bottom-up:
//!
//! * [`rti`]: the reaction torque indicator (bar fill, zone and hybrid hue).
//! * [`plant`]: per-joint arm dynamics and the grasp contact model.
//! * [`control`]: the 4-channel bilateral law and the reaction torque observer.
//! * [`link`]: the 116-byte wire frame, the impaired channel model and the
//!   fixed-rate tick loop that drives a whole session in simulated time.
//! * [`metrics`]: Low/Optimal/High/MAE band statistics and result tables.
//! * [`session`]: configuration, scripted operators, JSONL logs and replay.

pub mod control;
pub mod error;
pub mod joint;
pub mod link;
pub mod metrics;
pub mod plant;
pub mod rti;
pub mod session;

pub use error::{Error, Result};
pub use joint::{JointVector, GRIPPER};

/// Control period in seconds (1 kHz).
pub const DT: f64 = 1e-3;
/// Control period in simulated microseconds.
pub const DT_US: u64 = 1_000;
