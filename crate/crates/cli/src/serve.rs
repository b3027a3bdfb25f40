//! Paced session with the console endpoint.
//!
//! One console connects over TCP to 127.0.0.1. The simulation thread runs
//! the 1 kHz tick loop against wall-clock time. A writer thread sends the
//! `hello` greeting and then every `decimation`-th tick as a telemetry line,
//! and a reader thread forwards `command` lines to the operator. The two
//! directions are bounded queues: when the console reads too slowly the
//! oldest pending telemetry is discarded, while commands are never dropped
//! (a full command queue blocks the reader, and so the socket).

use std::collections::VecDeque;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc::{sync_channel, SyncSender};
use std::sync::{Arc, Condvar, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use serde_json::json;

use teleop_core::link::{Marker, Observation, Operator, OperatorAction, TickRecord};
use teleop_core::session::telemetry::{Command, Inbound, Outbound, TelemetryMessage, TELEMETRY_SCHEMA_VERSION};
use teleop_core::session::{record_session, run_with, scripted_operator, InteractiveOperator, SessionConfig};
use teleop_core::{Error, Result, DT, GRIPPER};

/// Pending outbound telemetry lines before the oldest is discarded.
pub const SNAPSHOT_QUEUE: usize = 64;
/// Pending inbound commands before the reader blocks.
pub const COMMAND_QUEUE: usize = 256;

#[derive(Default)]
struct QueueState {
    items: VecDeque<Outbound>,
    closed: bool,
    discarded: u64,
}

/// Bounded outbound queue that evicts the oldest telemetry when full.
/// Greeting and error messages are never evicted.
#[derive(Default)]
pub struct SnapshotQueue {
    state: Mutex<QueueState>,
    ready: Condvar,
}

impl SnapshotQueue {
    pub fn push(&self, msg: Outbound) {
        let mut st = self.state.lock().unwrap();
        let telemetry = |m: &Outbound| matches!(m, Outbound::Telemetry(_));
        if st.items.iter().filter(|m| telemetry(m)).count() >= SNAPSHOT_QUEUE {
            if let Some(i) = st.items.iter().position(telemetry) {
                st.items.remove(i);
                st.discarded += 1;
            }
        }
        st.items.push_back(msg);
        self.ready.notify_one();
    }

    /// Next message, or `None` once closed and drained.
    pub fn pop(&self) -> Option<Outbound> {
        let mut st = self.state.lock().unwrap();
        loop {
            if let Some(m) = st.items.pop_front() {
                return Some(m);
            }
            if st.closed {
                return None;
            }
            st = self.ready.wait(st).unwrap();
        }
    }

    pub fn close(&self) {
        self.state.lock().unwrap().closed = true;
        self.ready.notify_all();
    }

    pub fn discarded(&self) -> u64 {
        self.state.lock().unwrap().discarded
    }
}

fn writer_loop(stream: TcpStream, queue: Arc<SnapshotQueue>, gone: Arc<AtomicBool>) {
    let mut out = BufWriter::new(stream);
    while let Some(msg) = queue.pop() {
        let ok = serde_json::to_writer(&mut out, &msg).is_ok()
            && out.write_all(b"\n").is_ok()
            && out.flush().is_ok();
        if !ok {
            gone.store(true, Ordering::SeqCst);
            return;
        }
    }
}

fn reader_loop(
    stream: TcpStream,
    commands: SyncSender<Command>,
    queue: Arc<SnapshotQueue>,
    gone: Arc<AtomicBool>,
    received: Arc<AtomicU64>,
) {
    for line in BufReader::new(stream).lines() {
        let Ok(line) = line else { break };
        if line.trim().is_empty() {
            continue;
        }
        match Inbound::parse(&line) {
            Ok(Inbound::Command(cmd)) => {
                received.fetch_add(1, Ordering::SeqCst);
                if commands.send(cmd).is_err() {
                    break;
                }
            }
            Err(e) => queue.push(Outbound::Error {
                message: format!("bad command: {e}"),
            }),
        }
    }
    gone.store(true, Ordering::SeqCst);
}

/// Scripted operators ignore console commands except markers.
struct ScriptedWithMarkers<O> {
    inner: O,
    commands: std::sync::mpsc::Receiver<Command>,
}

impl<O: Operator> Operator for ScriptedWithMarkers<O> {
    fn act(&mut self, obs: &Observation) -> OperatorAction {
        let mut action = self.inner.act(obs);
        while let Ok(cmd) = self.commands.try_recv() {
            if let Command::Marker { label } = cmd {
                action.markers.push(Marker::new(label));
            }
        }
        action
    }
}

/// Stops the session loop once the console has gone away.
fn disconnected() -> Error {
    Error::Io(std::io::Error::new(std::io::ErrorKind::ConnectionAborted, "console disconnected"))
}

/// Binds, announces the address on `out`, waits for one console, then runs
/// the session paced at wall-clock speed until `duration_s` elapses or the
/// console disconnects.
pub fn serve(cfg: &SessionConfig, port: u16, log: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    cfg.validate()?;
    let listener = TcpListener::bind(SocketAddr::from(([127, 0, 0, 1], port)))?;
    let addr = listener.local_addr()?;
    writeln!(out, "{}", json!({ "listening": addr.to_string() }))?;
    out.flush()?;

    let (stream, peer) = listener.accept()?;
    stream.set_nodelay(true)?;
    let queue = Arc::new(SnapshotQueue::default());
    let gone = Arc::new(AtomicBool::new(false));
    let received = Arc::new(AtomicU64::new(0));
    let (cmd_tx, cmd_rx) = sync_channel(COMMAND_QUEUE);

    queue.push(Outbound::Hello {
        schema_version: TELEMETRY_SCHEMA_VERSION,
        decimation: cfg.telemetry.decimation,
        rti: cfg.rti,
    });
    let writer = {
        let (s, q, g) = (stream.try_clone()?, queue.clone(), gone.clone());
        thread::spawn(move || writer_loop(s, q, g))
    };
    {
        let (s, q, g, r) = (stream.try_clone()?, queue.clone(), gone.clone(), received.clone());
        thread::spawn(move || reader_loop(s, cmd_tx, q, g, r));
    }

    let mut operator: Box<dyn Operator> = match scripted_operator(cfg) {
        Some(op) => Box::new(ScriptedWithMarkers {
            inner: op,
            commands: cmd_rx,
        }),
        None => Box::new(InteractiveOperator::new(cmd_rx, cfg.leader.torque_limit[GRIPPER])),
    };

    let decimation = cfg.telemetry.decimation as u64;
    let start = Instant::now();
    let mut pending_markers: Vec<Marker> = Vec::new();
    let mut sent = 0u64;
    let mut ticks = 0u64;
    let mut on_tick = |r: &TickRecord| -> Result<()> {
        ticks = r.tick + 1;
        pending_markers.extend(r.markers.iter().cloned());
        if (r.tick + 1) % decimation == 0 {
            let mut msg = TelemetryMessage::from_record(r);
            msg.markers = std::mem::take(&mut pending_markers);
            queue.push(Outbound::Telemetry(msg));
            sent += 1;
        }
        if gone.load(Ordering::SeqCst) {
            return Err(disconnected());
        }
        let due = Duration::from_secs_f64((r.tick + 1) as f64 * DT);
        if let Some(wait) = due.checked_sub(start.elapsed()) {
            thread::sleep(wait);
        }
        Ok(())
    };
    let result = match log {
        Some(path) => record_session(cfg, operator.as_mut(), path, false, &mut on_tick),
        None => run_with(cfg, operator.as_mut(), &mut on_tick),
    };

    let (summary, ended_by) = match result {
        Ok(outcome) => (outcome.summary, "duration"),
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::ConnectionAborted => (None, "disconnect"),
        Err(e) => {
            queue.push(Outbound::Error { message: e.to_string() });
            queue.close();
            let _ = writer.join();
            return Err(e);
        }
    };
    queue.close();
    let _ = writer.join();
    let _ = stream.shutdown(std::net::Shutdown::Both);

    writeln!(
        out,
        "{}",
        json!({
            "ok": true,
            "peer": peer.to_string(),
            "ended_by": ended_by,
            "ticks": ticks,
            "telemetry_sent": sent,
            "telemetry_discarded": queue.discarded(),
            "commands_received": received.load(Ordering::SeqCst),
            "summary": summary.map(|s| json!({
                "low_pct": s.low_pct(), "opt_pct": s.opt_pct(), "high_pct": s.high_pct(), "mae": s.mae
            })),
        })
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use teleop_core::link::tick::TickRecord;

    fn telemetry(tick: u64) -> Outbound {
        let mut r: TickRecord = serde_json::from_value(json!({
            "tick": tick, "timestamp_us": tick * 1000,
            "leader": {"angle": [0.0,0.0,0.0,0.0], "velocity": [0.0,0.0,0.0,0.0], "motor_torque": [0.0,0.0,0.0,0.0], "tau_hat": [0.0,0.0,0.0,0.0]},
            "follower": {"angle": [0.0,0.0,0.0,0.0], "velocity": [0.0,0.0,0.0,0.0], "motor_torque": [0.0,0.0,0.0,0.0], "tau_hat": [0.0,0.0,0.0,0.0]},
            "operator_torque": [0.0,0.0,0.0,0.0],
            "rti": {"fill_percent": 0.0, "color": [0,0,255], "zone": "Low"},
            "l2f": {"sent": 1, "dropped": 0, "delivered": 1},
            "f2l": {"sent": 1, "dropped": 0, "delivered": 1}
        }))
        .unwrap();
        r.tick = tick;
        Outbound::Telemetry(TelemetryMessage::from_record(&r))
    }

    fn tick_of(m: &Outbound) -> Option<u64> {
        match m {
            Outbound::Telemetry(t) => Some(t.tick),
            _ => None,
        }
    }

    #[test]
    fn full_queue_drops_oldest_telemetry_only() {
        let q = SnapshotQueue::default();
        q.push(Outbound::Error { message: "keep".into() });
        for k in 0..(SNAPSHOT_QUEUE as u64 + 10) {
            q.push(telemetry(k));
        }
        assert_eq!(q.discarded(), 10);
        q.close();
        assert!(matches!(q.pop(), Some(Outbound::Error { .. })));
        let ticks: Vec<u64> = std::iter::from_fn(|| q.pop()).filter_map(|m| tick_of(&m)).collect();
        assert_eq!(ticks.len(), SNAPSHOT_QUEUE);
        assert_eq!(ticks[0], 10);
        assert!(ticks.windows(2).all(|w| w[0] + 1 == w[1]));
    }

    #[test]
    fn pop_waits_for_producer() {
        let q = Arc::new(SnapshotQueue::default());
        let q2 = q.clone();
        let h = thread::spawn(move || q2.pop().and_then(|m| tick_of(&m)));
        thread::sleep(Duration::from_millis(20));
        q.push(telemetry(5));
        assert_eq!(h.join().unwrap(), Some(5));
        q.close();
        assert!(q.pop().is_none());
    }
}
