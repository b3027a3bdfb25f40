//! In-process channel with seeded latency, jitter and loss.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelModel {
    pub base_latency_ms: f64,
    /// Width of the uniform extra delay.
    pub jitter_ms: f64,
    /// In [0, 1).
    pub drop_probability: f64,
    pub seed: u64,
}

impl Default for ChannelModel {
    fn default() -> Self {
        Self::identity()
    }
}

impl ChannelModel {
    /// No latency, no jitter, no loss: delivery on the next poll.
    pub const fn identity() -> Self {
        Self {
            base_latency_ms: 0.0,
            jitter_ms: 0.0,
            drop_probability: 0.0,
            seed: 0,
        }
    }

    pub fn with_latency_ms(latency: f64) -> Self {
        Self {
            base_latency_ms: latency,
            ..Self::identity()
        }
    }

    pub fn check(&self, prefix: &str, errors: &mut Vec<FieldError>) {
        if !(self.base_latency_ms.is_finite() && self.base_latency_ms >= 0.0) {
            errors.push(FieldError::new(format!("{prefix}base_latency_ms"), "must be >= 0"));
        }
        if !(self.jitter_ms.is_finite() && self.jitter_ms >= 0.0) {
            errors.push(FieldError::new(format!("{prefix}jitter_ms"), "must be >= 0"));
        }
        if !(self.drop_probability >= 0.0 && self.drop_probability < 1.0) {
            errors.push(FieldError::new(
                format!("{prefix}drop_probability"),
                "must lie in [0, 1)",
            ));
        }
    }

    pub fn base_latency_us(&self) -> u64 {
        (self.base_latency_ms * 1000.0).round() as u64
    }

    pub fn jitter_us(&self) -> f64 {
        self.jitter_ms * 1000.0
    }

    /// PRNG for this channel. `stream` separates channels sharing a seed.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SendOutcome {
    Dropped,
    Scheduled { deliver_at_us: u64 },
}

#[derive(Debug)]
struct InFlight<T> {
    deliver_at_us: u64,
    order: u64,
    payload: T,
}

impl<T> PartialEq for InFlight<T> {
    fn eq(&self, other: &Self) -> bool {
        (self.deliver_at_us, self.order) == (other.deliver_at_us, other.order)
    }
}

impl<T> Eq for InFlight<T> {}

impl<T> PartialOrd for InFlight<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> Ord for InFlight<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.deliver_at_us, self.order).cmp(&(other.deliver_at_us, other.order))
    }
}

/// One direction of the link.
///
/// Every `send` draws one uniform sample for the loss decision; frames that
/// survive draw a second sample for jitter when `jitter_ms > 0`. Frames due
/// at the same instant are released in send order.
#[derive(Debug)]
pub struct Channel<T> {
    model: ChannelModel,
    rng: ChaCha8Rng,
    queue: BinaryHeap<Reverse<InFlight<T>>>,
    sent: u64,
    dropped: u64,
    delivered: u64,
    last_now_us: u64,
}

impl<T> Channel<T> {
    pub fn new(model: ChannelModel, stream: u64) -> Self {
        Self {
            rng: model.rng(stream),
            model,
            queue: BinaryHeap::new(),
            sent: 0,
            dropped: 0,
            delivered: 0,
            last_now_us: 0,
        }
    }

    pub fn model(&self) -> &ChannelModel {
        &self.model
    }

    pub fn send(&mut self, payload: T, now_us: u64) -> SendOutcome {
        debug_assert!(now_us >= self.last_now_us, "channel time went backwards");
        self.last_now_us = now_us;
        self.sent += 1;
        let u: f64 = self.rng.random();
        if u < self.model.drop_probability {
            self.dropped += 1;
            return SendOutcome::Dropped;
        }
        let mut deliver_at_us = now_us + self.model.base_latency_us();
        if self.model.jitter_ms > 0.0 {
            let j: f64 = self.rng.random();
            deliver_at_us += (j * self.model.jitter_us()).round() as u64;
        }
        self.queue.push(Reverse(InFlight {
            deliver_at_us,
            order: self.sent,
            payload,
        }));
        SendOutcome::Scheduled { deliver_at_us }
    }

    /// Everything due at or before `now_us`, in delivery order.
    pub fn poll(&mut self, now_us: u64) -> Vec<T> {
        debug_assert!(now_us >= self.last_now_us, "channel time went backwards");
        self.last_now_us = now_us;
        let mut out = Vec::new();
        while self
            .queue
            .peek()
            .is_some_and(|Reverse(f)| f.deliver_at_us <= now_us)
        {
            let Reverse(f) = self.queue.pop().unwrap();
            out.push(f.payload);
        }
        self.delivered += out.len() as u64;
        out
    }

    pub fn in_flight(&self) -> usize {
        self.queue.len()
    }

    pub fn sent(&self) -> u64 {
        self.sent
    }

    pub fn dropped(&self) -> u64 {
        self.dropped
    }

    pub fn delivered(&self) -> u64 {
        self.delivered
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_channel_delivers_next_poll_in_order() {
        let mut ch = Channel::new(ChannelModel::identity(), 0);
        for i in 0..5u32 {
            ch.send(i, 1000);
        }
        assert_eq!(ch.poll(2000), vec![0, 1, 2, 3, 4]);
        assert!(ch.poll(3000).is_empty());
    }

    #[test]
    fn latency_is_never_early() {
        let mut ch = Channel::new(ChannelModel::with_latency_ms(5.0), 0);
        ch.send("x", 0);
        for t in (0..5000).step_by(1000) {
            assert!(ch.poll(t).is_empty(), "delivered early at {t}");
        }
        assert_eq!(ch.poll(5000), vec!["x"]);
    }

    #[test]
    fn drop_count_replays_seeded_sequence() {
        let model = ChannelModel {
            drop_probability: 1.0 - 1e-3,
            seed: 42,
            ..ChannelModel::identity()
        };
        let mut ch = Channel::new(model, 3);
        let n = 200_000;
        for i in 0..n {
            ch.send(i, i as u64);
        }
        let delivered = ch.poll(n as u64).len() as u64;

        let mut rng = model.rng(3);
        let expected = (0..n)
            .filter(|_| rng.random::<f64>() >= model.drop_probability)
            .count() as u64;
        assert_eq!(delivered, expected);
        assert!(expected > 0);
    }

    #[test]
    fn jitter_stays_within_window() {
        let model = ChannelModel {
            base_latency_ms: 2.0,
            jitter_ms: 3.0,
            seed: 9,
            ..ChannelModel::identity()
        };
        let mut ch = Channel::new(model, 0);
        for i in 0..1000u64 {
            match ch.send(i, i * 1000) {
                SendOutcome::Scheduled { deliver_at_us } => {
                    let delay = deliver_at_us - i * 1000;
                    assert!((2000..=5000).contains(&delay));
                }
                SendOutcome::Dropped => panic!("no loss configured"),
            }
        }
    }

    #[test]
    fn streams_differ() {
        let m = ChannelModel { seed: 1, ..ChannelModel::identity() };
        let a: f64 = m.rng(0).random();
        let b: f64 = m.rng(1).random();
        assert_ne!(a, b);
    }
}
