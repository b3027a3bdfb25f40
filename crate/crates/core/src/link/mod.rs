//! Leader/follower transport and the fixed-rate session scheduler.

pub mod channel;
pub mod frame;
pub mod tick;

pub use channel::{Channel, ChannelModel, SendOutcome};
pub use frame::{decode_frame, encode_frame, Frame, FrameError, Source, FRAME_LEN};
pub use tick::{run_tick_loop, Marker, Observation, Operator, OperatorAction, Simulation, TickRecord};
