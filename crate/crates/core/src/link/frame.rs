//! Fixed 116-byte little-endian control frame.
//!
//! ```text
//! offset  size  field
//!      0     2  magic 0x4255 ("UB" on the wire)
//!      2     1  version
//!      3     1  source (0 = leader, 1 = follower)
//!      4     4  seq (u32)
//!      8     8  timestamp_us (u64)
//!     16    32  angle[4]    (f64)
//!     48    32  velocity[4] (f64)
//!     80    32  tau_hat[4]  (f64)
//!    112     4  CRC-32 (IEEE) of bytes 0..112
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::joint::JointVector;

pub const FRAME_MAGIC: u16 = 0x4255;
pub const FRAME_VERSION: u8 = 1;
pub const FRAME_LEN: usize = 116;
const CRC_OFFSET: usize = FRAME_LEN - 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    Leader,
    Follower,
}

impl Source {
    fn to_byte(self) -> u8 {
        match self {
            Source::Leader => 0,
            Source::Follower => 1,
        }
    }

    fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(Source::Leader),
            1 => Some(Source::Follower),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub seq: u32,
    pub timestamp_us: u64,
    pub source: Source,
    pub angle: JointVector,
    pub velocity: JointVector,
    pub tau_hat: JointVector,
}

impl Frame {
    pub fn zero(source: Source) -> Self {
        Self {
            seq: 0,
            timestamp_us: 0,
            source,
            angle: JointVector::ZERO,
            velocity: JointVector::ZERO,
            tau_hat: JointVector::ZERO,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("bad frame length: expected {FRAME_LEN} bytes, got {0}")]
    BadLength(usize),
    #[error("bad magic 0x{0:04x}")]
    BadMagic(u16),
    #[error("unsupported frame version {0}")]
    BadVersion(u8),
    #[error("unknown frame source {0}")]
    BadSource(u8),
    #[error("checksum mismatch: stored 0x{stored:08x}, computed 0x{computed:08x}")]
    BadChecksum { stored: u32, computed: u32 },
}

pub fn encode_frame(f: &Frame) -> [u8; FRAME_LEN] {
    let mut out = [0u8; FRAME_LEN];
    out[0..2].copy_from_slice(&FRAME_MAGIC.to_le_bytes());
    out[2] = FRAME_VERSION;
    out[3] = f.source.to_byte();
    out[4..8].copy_from_slice(&f.seq.to_le_bytes());
    out[8..16].copy_from_slice(&f.timestamp_us.to_le_bytes());
    let fields = f.angle.iter().chain(f.velocity.iter()).chain(f.tau_hat.iter());
    for (i, v) in fields.enumerate() {
        let at = 16 + 8 * i;
        out[at..at + 8].copy_from_slice(&v.to_le_bytes());
    }
    let crc = crc32fast::hash(&out[..CRC_OFFSET]);
    out[CRC_OFFSET..].copy_from_slice(&crc.to_le_bytes());
    out
}

/// Checks run in order: length, checksum, magic, version, source. Any
/// single corrupted byte therefore surfaces as [`FrameError::BadChecksum`].
pub fn decode_frame(bytes: &[u8]) -> Result<Frame, FrameError> {
    if bytes.len() != FRAME_LEN {
        return Err(FrameError::BadLength(bytes.len()));
    }
    let stored = u32::from_le_bytes(bytes[CRC_OFFSET..].try_into().unwrap());
    let computed = crc32fast::hash(&bytes[..CRC_OFFSET]);
    if stored != computed {
        return Err(FrameError::BadChecksum { stored, computed });
    }
    let magic = u16::from_le_bytes([bytes[0], bytes[1]]);
    if magic != FRAME_MAGIC {
        return Err(FrameError::BadMagic(magic));
    }
    if bytes[2] != FRAME_VERSION {
        return Err(FrameError::BadVersion(bytes[2]));
    }
    let source = Source::from_byte(bytes[3]).ok_or(FrameError::BadSource(bytes[3]))?;
    let f64_at = |i: usize| {
        let at = 16 + 8 * i;
        f64::from_le_bytes(bytes[at..at + 8].try_into().unwrap())
    };
    let vector = |base: usize| JointVector::new([f64_at(base), f64_at(base + 1), f64_at(base + 2), f64_at(base + 3)]);
    Ok(Frame {
        seq: u32::from_le_bytes(bytes[4..8].try_into().unwrap()),
        timestamp_us: u64::from_le_bytes(bytes[8..16].try_into().unwrap()),
        source,
        angle: vector(0),
        velocity: vector(4),
        tau_hat: vector(8),
    })
}
