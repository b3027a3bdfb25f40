use std::fs;
use std::path::Path;

use teleop_core::link::ChannelModel;
use teleop_core::plant::ObjectModel;
use teleop_core::session::log::read_log;
use teleop_core::session::replay::verify;
use teleop_core::session::{replay, run_session, LinkConfig, LogLine, OperatorKind, Scenario, SessionConfig};
use teleop_core::Error;

fn lossy() -> LinkConfig {
    LinkConfig::symmetric(ChannelModel {
        base_latency_ms: 3.0,
        jitter_ms: 2.0,
        drop_probability: 0.05,
        seed: 0,
    })
}

#[test]
fn twenty_second_lift_logs_every_tick() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lift.jsonl");
    let cfg = SessionConfig {
        seed: 7,
        ..Default::default()
    };
    let outcome = run_session(&cfg, &out, false).unwrap();
    assert_eq!(outcome.ticks, 20_000);
    let lines = read_log(&out).unwrap();
    assert_eq!(lines.len(), 20_002);
    assert!(matches!(lines[0], LogLine::Header { .. }));
    assert_eq!(lines.iter().filter(|l| matches!(l, LogLine::Tick(_))).count(), 20_000);
    assert!(matches!(lines.last(), Some(LogLine::Summary { .. })));
}

#[test]
fn identical_config_and_seed_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SessionConfig {
        scenario: Scenario::PickPlace,
        operator: OperatorKind::ScriptedBaseline,
        duration_s: 5.0,
        seed: 3,
        channel: lossy(),
        ..Default::default()
    };
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    run_session(&cfg, &a, false).unwrap();
    run_session(&cfg, &b, false).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let c = dir.path().join("c.jsonl");
    run_session(&SessionConfig { seed: 4, ..cfg }, &c, false).unwrap();
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn replay_closes_on_fresh_logs() {
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        SessionConfig::default(),
        SessionConfig {
            scenario: Scenario::PickPlace,
            object: ObjectModel::sponge(),
            operator: OperatorKind::ScriptedBaseline,
            seed: 12,
            channel: lossy(),
            ..Default::default()
        },
        SessionConfig {
            scenario: Scenario::Freeform,
            object: ObjectModel::none(),
            duration_s: 3.0,
            ..Default::default()
        },
    ];
    for (i, cfg) in configs.iter().enumerate() {
        for gzip in [false, true] {
            let out = dir.path().join(format!("{i}-{gzip}.jsonl"));
            let outcome = run_session(cfg, &out, gzip).unwrap();
            let report = replay(&out).unwrap();
            assert_eq!(report.config, *cfg);
            assert_eq!(report.ticks, outcome.ticks);
            assert_eq!(report.window, outcome.window);
            assert_eq!(report.summary, outcome.summary);
            assert!(report.fault.is_none());
        }
    }
}

#[test]
fn gzip_log_starts_with_magic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z.jsonl.gz");
    run_session(&SessionConfig { duration_s: 1.0, ..Default::default() }, &out, true).unwrap();
    assert_eq!(&fs::read(&out).unwrap()[..2], &[0x1f, 0x8b]);
}

fn short_log(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("short.jsonl");
    run_session(&SessionConfig { duration_s: 2.0, ..Default::default() }, &out, false).unwrap();
    out
}

#[test]
fn tampered_color_is_reported_with_tick() {
    let dir = tempfile::tempdir().unwrap();
    let out = short_log(dir.path());
    let text = fs::read_to_string(&out).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    // Line index 101 holds tick 100.
    let mut v: serde_json::Value = serde_json::from_str(&lines[101]).unwrap();
    assert_eq!(v["tick"], 100);
    let orig = v["rti"]["color"][0].as_u64().unwrap();
    v["rti"]["color"][0] = serde_json::json!((orig + 1) % 256);
    lines[101] = serde_json::to_string(&v).unwrap();
    fs::write(&out, lines.join("\n") + "\n").unwrap();
    match replay(&out) {
        Err(Error::Divergence { tick, field, .. }) => {
            assert_eq!(tick, 100);
            assert_eq!(field, "rti.color");
        }
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn tampered_summary_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = short_log(dir.path());
    let mut lines = read_log(&out).unwrap();
    if let Some(LogLine::Summary { summary: Some(s), .. }) = lines.last_mut() {
        s.opt_count += 1;
    } else {
        panic!("missing summary");
    }
    match verify(lines) {
        Err(Error::Divergence { field, .. }) => assert_eq!(field, "summary.opt_count"),
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn truncated_logs_are_schema_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = short_log(dir.path());
    let text = fs::read_to_string(&out).unwrap();

    let without_trailer: Vec<&str> = text.lines().take(1500).collect();
    fs::write(&out, without_trailer.join("\n") + "\n").unwrap();
    assert!(matches!(replay(&out), Err(Error::Schema { .. })));

    let cut = &text[..text.len() / 2];
    fs::write(&out, cut).unwrap();
    assert!(matches!(replay(&out), Err(Error::Schema { .. })));
}

#[test]
fn missing_tick_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = short_log(dir.path());
    let mut lines = read_log(&out).unwrap();
    lines.remove(50);
    assert!(matches!(verify(lines), Err(Error::Schema { line: 51, .. })));
}

#[test]
fn config_errors_name_the_field() {
    let cfg = SessionConfig::from_toml_str("[rti]\nt_low = 0.5\n").unwrap();
    match cfg.validate() {
        Err(Error::Config(fields)) => assert!(fields.iter().any(|f| f.field.starts_with("rti.")), "{fields:?}"),
        other => panic!("expected config error, got {other:?}"),
    }
    let cfg = SessionConfig::from_toml_str("[channel.leader_to_follower]\ndrop_probability = 1.5\n").unwrap();
    let fields = cfg.field_errors();
    assert_eq!(fields[0].field, "channel.leader_to_follower.drop_probability");
    assert!(matches!(
        SessionConfig::from_toml_str("bogus_key = 1\n"),
        Err(Error::ConfigParse(msg)) if msg.contains("bogus_key")
    ));
}

#[test]
fn config_survives_toml_roundtrip() {
    let cfg = SessionConfig {
        scenario: Scenario::PickPlace,
        object: ObjectModel::sponge(),
        channel: lossy(),
        seed: 99,
        ..Default::default()
    };
    assert_eq!(SessionConfig::from_toml_str(&cfg.to_toml_string()).unwrap(), cfg);
}

#[test]
fn object_preset_by_label() {
    let cfg = SessionConfig::from_toml_str("[object]\nlabel = \"Sponge\"\n").unwrap();
    assert_eq!(cfg.object, ObjectModel::sponge());
}
