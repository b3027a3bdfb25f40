//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use teleop_core::link::tick::TickRecord;
use teleop_core::metrics::{pool, BandSummary};
use teleop_core::plant::ObjectModel;
use teleop_core::session::{simulate, simulate_summary, OperatorKind, Scenario, SessionConfig};
use teleop_core::GRIPPER;

/// Straight transcription of the indicator formulas with the shipped
/// constants written out as literals, kept apart from the library code on
/// purpose.
pub mod oracle {
    pub const T_MIN: f64 = 0.0;
    pub const T_MAX: f64 = 0.6;
    pub const T_LOW: f64 = 0.20;
    pub const T_HIGH: f64 = 0.40;
    pub const M_TRA: f64 = 0.05;
    pub const BLUE: [f64; 3] = [0.0, 0.0, 255.0];
    pub const GREEN: [f64; 3] = [0.0, 255.0, 0.0];
    pub const RED: [f64; 3] = [255.0, 0.0, 0.0];

    pub fn fill(tau: f64) -> f64 {
        let t = if tau < T_MIN {
            T_MIN
        } else if tau > T_MAX {
            T_MAX
        } else {
            tau
        };
        100.0 * (t - T_MIN) / (T_MAX - T_MIN)
    }

    /// 0 = Low, 1 = Optimal, 2 = High.
    pub fn zone(tau: f64) -> u8 {
        if tau < T_LOW {
            0
        } else if tau <= T_HIGH {
            1
        } else {
            2
        }
    }

    fn mix(a: [f64; 3], b: [f64; 3], alpha: f64) -> [f64; 3] {
        [
            (1.0 - alpha) * a[0] + alpha * b[0],
            (1.0 - alpha) * a[1] + alpha * b[1],
            (1.0 - alpha) * a[2] + alpha * b[2],
        ]
    }

    pub fn color(tau: f64) -> [f64; 3] {
        if tau <= T_LOW - M_TRA {
            BLUE
        } else if tau < T_LOW + M_TRA {
            mix(BLUE, GREEN, (tau - (T_LOW - M_TRA)) / (2.0 * M_TRA))
        } else if tau <= T_HIGH - M_TRA {
            GREEN
        } else if tau < T_HIGH + M_TRA {
            mix(GREEN, RED, (tau - (T_HIGH - M_TRA)) / (2.0 * M_TRA))
        } else {
            RED
        }
    }
}

/// Hand-derived indicator colors at the blending-window edges.
pub const BOUNDARY_COLORS: [(f64, [u8; 3]); 7] = [
    (0.15, [0, 0, 255]),
    (0.20, [0, 128, 128]),
    (0.25, [0, 255, 0]),
    (0.35, [0, 255, 0]),
    (0.40, [128, 128, 0]),
    (0.42, [179, 77, 0]),
    (0.45, [255, 0, 0]),
];

/// Number of evenly spaced points on the oracle grid.
pub const GRID_POINTS: usize = 1_000_000;

pub fn grid_point(k: usize) -> f64 {
    -0.1 + 0.8 * k as f64 / (GRID_POINTS - 1) as f64
}

/// Worst pre-rounding disagreement between library and oracle on the grid,
/// plus the number of zone mismatches.
pub fn oracle_grid_deviation() -> (f64, usize) {
    let cfg = teleop_core::rti::RtiConfig::default();
    let mut worst = 0.0f64;
    let mut zone_mismatches = 0;
    for k in 0..GRID_POINTS {
        let tau = grid_point(k);
        let fill = teleop_core::rti::fill_ratio(tau, &cfg).unwrap();
        worst = worst.max((fill - oracle::fill(tau)).abs());
        let got = teleop_core::rti::color_unquantized(tau, &cfg).unwrap();
        let want = oracle::color(tau);
        for c in 0..3 {
            worst = worst.max((got[c] - want[c]).abs());
        }
        let zone = teleop_core::rti::zone_of(tau, &cfg).unwrap() as u8;
        if zone != oracle::zone(tau) {
            zone_mismatches += 1;
        }
    }
    (worst, zone_mismatches)
}

/// Frame with every field set to a distinctive value.
pub fn golden_frame() -> teleop_core::link::Frame {
    use teleop_core::link::{Frame, Source};
    use teleop_core::JointVector;
    Frame {
        seq: 0x0102_0304,
        timestamp_us: 1_000_000,
        source: Source::Follower,
        angle: JointVector::new([0.1, -0.2, 0.3, 0.35]),
        velocity: JointVector::new([0.0, 1.5, -0.25, 0.0]),
        tau_hat: JointVector::new([0.0, 0.0, 0.0, 0.3]),
    }
}

/// Encoding of [`golden_frame`], produced independently with Python's
/// `struct.pack('<HBBIQ12d', ...)` and `zlib.crc32`.
pub const GOLDEN_BYTES_HEX: &str = concat!(
    "554201010403020140420f0000000000",
    "9a9999999999b93f9a9999999999c9bf",
    "333333333333d33f666666666666d63f",
    "0000000000000000000000000000f83f",
    "000000000000d0bf0000000000000000",
    "00000000000000000000000000000000",
    "0000000000000000333333333333d33f",
    "c87479cc",
);

pub fn golden_bytes() -> Vec<u8> {
    (0..GOLDEN_BYTES_HEX.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&GOLDEN_BYTES_HEX[i..i + 2], 16).unwrap())
        .collect()
}

/// Zero-delay free-motion sinusoid without an object.
pub fn free_motion_config() -> SessionConfig {
    SessionConfig {
        scenario: Scenario::Freeform,
        object: ObjectModel::none(),
        duration_s: 10.0,
        ..Default::default()
    }
}

/// Time-averaged `|tau_hat_l + tau_hat_f|` at the gripper over the grasp
/// window of a scripted Block lift.
pub fn block_hold_residual(seed: u64) -> f64 {
    let cfg = SessionConfig {
        seed,
        ..Default::default()
    };
    let (out, records) = simulate(&cfg).unwrap();
    let w = out.window;
    let hold: &[TickRecord] = &records[w.start_tick as usize..w.end_tick as usize];
    hold.iter()
        .map(|r| (r.leader.tau_hat[GRIPPER] + r.follower.tau_hat[GRIPPER]).abs())
        .sum::<f64>()
        / hold.len() as f64
}

/// Pools the trial summaries of one task × object × method cell.
pub fn pooled_cell(scenario: Scenario, object: ObjectModel, operator: OperatorKind, seeds: u64) -> BandSummary {
    let trials: Vec<BandSummary> = (0..seeds)
        .map(|seed| {
            let cfg = SessionConfig {
                scenario,
                object,
                operator,
                seed,
                ..Default::default()
            };
            simulate_summary(&cfg).unwrap().summary.expect("grasp window is never empty")
        })
        .collect();
    pool(&trials).unwrap()
}
