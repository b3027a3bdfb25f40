mod common;

use common::{golden_bytes, golden_frame};
use proptest::prelude::*;
use teleop_core::link::{decode_frame, encode_frame, Channel, ChannelModel, Frame, FrameError, SendOutcome, Source, FRAME_LEN};
use teleop_core::JointVector;

#[test]
fn golden_frame_is_bit_exact() {
    let bytes = encode_frame(&golden_frame());
    assert_eq!(bytes.len(), FRAME_LEN);
    assert_eq!(bytes.to_vec(), golden_bytes());
    assert_eq!(decode_frame(&golden_bytes()).unwrap(), golden_frame());
}

#[test]
fn every_single_byte_corruption_is_rejected() {
    let clean = golden_bytes();
    for at in 0..FRAME_LEN {
        for flip in 1..=255u8 {
            let mut bad = clean.clone();
            bad[at] ^= flip;
            match decode_frame(&bad) {
                Err(FrameError::BadChecksum { .. }) => {}
                other => panic!("byte {at} ^ {flip:#04x}: {other:?}"),
            }
        }
    }
}

#[test]
fn wrong_length_is_rejected() {
    let bytes = golden_bytes();
    assert_eq!(decode_frame(&bytes[..115]), Err(FrameError::BadLength(115)));
    let mut long = bytes.clone();
    long.push(0);
    assert_eq!(decode_frame(&long), Err(FrameError::BadLength(117)));
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6f64..1e6,
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(f64::MAX),
    ]
}

fn joints() -> impl Strategy<Value = JointVector> {
    prop::array::uniform4(finite()).prop_map(JointVector::new)
}

fn frames() -> impl Strategy<Value = Frame> {
    (any::<u32>(), any::<u64>(), any::<bool>(), joints(), joints(), joints()).prop_map(
        |(seq, timestamp_us, follower, angle, velocity, tau_hat)| Frame {
            seq,
            timestamp_us,
            source: if follower { Source::Follower } else { Source::Leader },
            angle,
            velocity,
            tau_hat,
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn encode_decode_roundtrip(frame in frames()) {
        let decoded = decode_frame(&encode_frame(&frame)).unwrap();
        for (a, b) in decoded.angle.iter().chain(decoded.velocity.iter()).chain(decoded.tau_hat.iter())
            .zip(frame.angle.iter().chain(frame.velocity.iter()).chain(frame.tau_hat.iter()))
        {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(decoded, frame);
    }
}

#[test]
fn five_ms_latency_never_delivers_early() {
    let mut ch = Channel::new(ChannelModel::with_latency_ms(5.0), 1);
    let mut seen = Vec::new();
    for now_ms in 0..100u64 {
        for sent_ms in ch.poll(now_ms * 1000) {
            assert!(now_ms >= sent_ms + 5, "sent at {sent_ms} ms, seen at {now_ms} ms");
            seen.push((sent_ms, now_ms));
        }
        if now_ms < 50 {
            ch.send(now_ms, now_ms * 1000);
        }
    }
    assert_eq!(seen.len(), 50);
    assert!(seen.iter().all(|&(s, n)| n == s + 5));
}

#[test]
fn jittered_delivery_respects_causality() {
    let model = ChannelModel {
        base_latency_ms: 3.0,
        jitter_ms: 4.0,
        drop_probability: 0.0,
        seed: 11,
    };
    let mut ch = Channel::new(model, 2);
    for k in 0..2000u64 {
        if let SendOutcome::Scheduled { deliver_at_us } = ch.send(k * 1000, k * 1000) {
            assert!(deliver_at_us >= k * 1000 + 3000);
            assert!(deliver_at_us <= k * 1000 + 7000);
        }
    }
}

#[test]
fn sequence_gaps_account_for_every_drop() {
    let model = ChannelModel {
        base_latency_ms: 2.0,
        jitter_ms: 0.0,
        drop_probability: 0.2,
        seed: 99,
    };
    let mut ch = Channel::new(model, 1);
    let mut received = Vec::new();
    for k in 0..5000u32 {
        let mut f = Frame::zero(Source::Leader);
        f.seq = k;
        f.timestamp_us = k as u64 * 1000;
        ch.send(encode_frame(&f).to_vec(), f.timestamp_us);
        for bytes in ch.poll(k as u64 * 1000) {
            received.push(decode_frame(&bytes).unwrap().seq);
        }
    }
    for bytes in ch.poll(u64::MAX) {
        received.push(decode_frame(&bytes).unwrap().seq);
    }
    assert!(received.windows(2).all(|w| w[0] < w[1]), "FIFO violated");
    let mut gaps = received[0] as u64;
    gaps += received.windows(2).map(|w| (w[1] - w[0] - 1) as u64).sum::<u64>();
    gaps += 4999 - *received.last().unwrap() as u64;
    assert_eq!(gaps, ch.dropped());
    assert!(ch.dropped() > 800 && ch.dropped() < 1200, "dropped {}", ch.dropped());
}
