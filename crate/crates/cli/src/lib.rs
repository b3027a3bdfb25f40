//! `teleop` command-line interface.
//!
//! Every subcommand prints one JSON object per result line on stdout. On
//! failure a single JSON diagnostic goes to stderr and the process exits with
//! status 2 (usage or configuration error) or 1 (anything else).

pub mod serve;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use teleop_core::metrics::{pool, render_table, BandSummary, TableRow, TrialLabels};
use teleop_core::plant::{ObjectLabel, ObjectModel};
use teleop_core::session::{
    labels, replay, run_session_observed, simulate_summary, sweep, OperatorKind, Scenario, SessionConfig,
};
use teleop_core::{Error, Result, DT};

#[derive(Debug, Parser)]
#[command(name = "teleop", version, about = "Bilateral teleoperation simulator with a reaction torque indicator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scripted session and write its JSONL log.
    Run {
        #[command(flatten)]
        session: SessionArgs,
        /// Log file to write.
        #[arg(long, default_value = "session.jsonl")]
        out: PathBuf,
        /// Gzip-compress the log.
        #[arg(long)]
        gzip: bool,
        /// Pace the simulation at wall-clock speed.
        #[arg(long)]
        realtime: bool,
    },
    /// Re-derive indicator outputs and metrics from a log and check them.
    Replay {
        log: PathBuf,
    },
    /// Print the Low/Opt/High/MAE table, either from logs or from a fresh
    /// scripted grid (both tasks × both objects × both scripted operators).
    Report {
        /// Logs to tabulate. Without any, the scripted grid is simulated.
        logs: Vec<PathBuf>,
        #[command(flatten)]
        session: SessionArgs,
        /// Seeds per grid cell.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        /// Also write one JSON object per table row to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a session over a grid of symmetric link latencies.
    Sweep {
        #[command(flatten)]
        session: SessionArgs,
        /// Latencies in milliseconds, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0,5,10,20,40")]
        latencies: Vec<f64>,
        /// Also write one JSON object per latency to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a paced session and expose the console endpoint on a local socket.
    ///
    /// The operator is interactive unless `--operator` names a scripted one.
    Serve {
        #[command(flatten)]
        session: SessionArgs,
        /// TCP port on 127.0.0.1 (0 picks a free one).
        #[arg(long, default_value_t = 7878)]
        port: u16,
        /// Record the served session to this log.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Flags shared by every subcommand that builds a session.
#[derive(Debug, Clone, Default, Args)]
pub struct SessionArgs {
    /// TOML session config; omitted keys take their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// lift | pick-place | freeform
    #[arg(long)]
    pub scenario: Option<Scenario>,
    /// scripted-baseline | scripted-rti-aware | interactive
    #[arg(long)]
    pub operator: Option<OperatorKind>,
    /// block | sponge | none
    #[arg(long)]
    pub object: Option<ObjectLabel>,
    /// Session length in seconds.
    #[arg(long)]
    pub duration: Option<f64>,
}

impl SessionArgs {
    /// Config file (or defaults) with command-line overrides applied.
    pub fn resolve(&self) -> Result<SessionConfig> {
        let mut cfg = match &self.config {
            Some(path) => SessionConfig::from_toml_str(&std::fs::read_to_string(path)?)?,
            None => SessionConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(s) = self.scenario {
            cfg.scenario = s;
        }
        if let Some(o) = self.operator {
            cfg.operator = o;
        }
        if let Some(label) = self.object {
            cfg.object = ObjectModel::preset(label);
        }
        if let Some(d) = self.duration {
            cfg.duration_s = d;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Exit status for an error: 2 for usage/config problems, 1 otherwise.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::ConfigParse(_) => 2,
        _ => 1,
    }
}

/// Machine-readable description of an error.
pub fn diagnostic(err: &Error) -> Value {
    let kind = match err {
        Error::Config(_) => "config",
        Error::ConfigParse(_) => "config-parse",
        Error::NonFinite(_) => "non-finite",
        Error::SimulationFault { .. } => "simulation-fault",
        Error::EmptyTrace => "empty-trace",
        Error::Frame(_) => "frame",
        Error::Schema { .. } => "schema",
        Error::Divergence { .. } => "divergence",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    };
    let mut d = json!({ "ok": false, "error": kind, "message": err.to_string() });
    match err {
        Error::Config(fields) => {
            d["fields"] = fields
                .iter()
                .map(|f| json!({ "field": f.field, "message": f.message }))
                .collect();
        }
        Error::SimulationFault { tick, .. } => d["tick"] = json!(tick),
        Error::Schema { line, .. } => d["line"] = json!(line),
        Error::Divergence {
            tick,
            field,
            logged,
            recomputed,
        } => {
            d["tick"] = json!(tick);
            d["field"] = json!(field);
            d["logged"] = json!(logged);
            d["recomputed"] = json!(recomputed);
        }
        _ => {}
    }
    d
}

fn summary_json(s: &Option<BandSummary>) -> Value {
    match s {
        Some(s) => json!({
            "low_pct": s.low_pct(),
            "opt_pct": s.opt_pct(),
            "high_pct": s.high_pct(),
            "mae": s.mae,
            "samples": s.sample_count,
        }),
        None => Value::Null,
    }
}

fn print_line(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn write_rows(path: &Path, rows: &[Value]) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    for row in rows {
        writeln!(f, "{row}")?;
    }
    f.flush()?;
    Ok(())
}

fn cmd_run(session: &SessionArgs, out_path: &Path, gzip: bool, realtime: bool, out: &mut dyn Write) -> Result<()> {
    let cfg = session.resolve()?;
    let start = Instant::now();
    let outcome = run_session_observed(&cfg, out_path, gzip, |r| {
        if realtime {
            let due = Duration::from_secs_f64((r.tick + 1) as f64 * DT);
            if let Some(wait) = due.checked_sub(start.elapsed()) {
                std::thread::sleep(wait);
            }
        }
    })?;
    print_line(
        out,
        &json!({
            "ok": true,
            "log": out_path,
            "ticks": outcome.ticks,
            "window": outcome.window,
            "labels": outcome.labels,
            "summary": summary_json(&outcome.summary),
        }),
    )
}

fn cmd_replay(log: &Path, out: &mut dyn Write) -> Result<()> {
    let report = replay(log)?;
    if let Some((tick, reason)) = &report.fault {
        return Err(Error::SimulationFault {
            tick: *tick,
            reason: format!("recorded run ended in a fault: {reason}"),
        });
    }
    print_line(
        out,
        &json!({
            "ok": true,
            "log": log,
            "ticks": report.ticks,
            "window": report.window,
            "labels": labels(&report.config),
            "summary": summary_json(&report.summary),
            "divergences": 0,
        }),
    )
}

/// Groups summaries by their labels, keeping first-seen order.
fn group(trials: Vec<(TrialLabels, BandSummary)>) -> Vec<TableRow> {
    let mut keys: Vec<TrialLabels> = Vec::new();
    let mut buckets: Vec<Vec<BandSummary>> = Vec::new();
    for (labels, s) in trials {
        match keys.iter().position(|k| *k == labels) {
            Some(i) => buckets[i].push(s),
            None => {
                keys.push(labels);
                buckets.push(vec![s]);
            }
        }
    }
    keys.into_iter()
        .zip(buckets)
        .filter_map(|(l, b)| {
            pool(&b).map(|summary| TableRow {
                labels: l,
                summary,
            })
        })
        .collect()
}

/// Runs the scripted comparison grid starting from `base`.
pub fn scripted_grid(base: &SessionConfig, seeds: u64) -> Result<Vec<TableRow>> {
    let mut trials = Vec::new();
    for scenario in [Scenario::Lift, Scenario::PickPlace] {
        for object in [ObjectModel::block(), ObjectModel::sponge()] {
            for operator in [OperatorKind::ScriptedBaseline, OperatorKind::ScriptedRtiAware] {
                for seed in 0..seeds {
                    let cfg = SessionConfig {
                        scenario,
                        object,
                        operator,
                        seed: base.seed + seed,
                        ..*base
                    };
                    let outcome = simulate_summary(&cfg)?;
                    if let Some(s) = outcome.summary {
                        trials.push((outcome.labels, s));
                    }
                }
            }
        }
    }
    Ok(group(trials))
}

fn cmd_report(logs: &[PathBuf], session: &SessionArgs, seeds: u64, json_out: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let rows = if logs.is_empty() {
        if seeds == 0 {
            return Err(Error::config("--seeds", "must be >= 1"));
        }
        scripted_grid(&session.resolve()?, seeds)?
    } else {
        let mut trials = Vec::new();
        for log in logs {
            let report = replay(log)?;
            if let Some(s) = report.summary {
                trials.push((labels(&report.config), s));
            }
        }
        group(trials)
    };
    write!(out, "{}", render_table(&rows))?;
    if let Some(path) = json_out {
        write_rows(path, &rows.iter().map(TableRow::to_json).collect::<Vec<_>>())?;
    }
    Ok(())
}

fn cmd_sweep(session: &SessionArgs, latencies: &[f64], json_out: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let cfg = session.resolve()?;
    let rows: Vec<Value> = sweep(&cfg, latencies)?
        .into_iter()
        .map(|r| {
            json!({
                "latency_ms": r.latency_ms,
                "tracking_rms": r.tracking_rms,
                "tracking_relative": r.tracking_relative,
                "labels": r.outcome.labels,
                "summary": summary_json(&r.outcome.summary),
            })
        })
        .collect();
    for row in &rows {
        print_line(out, row)?;
    }
    if let Some(path) = json_out {
        write_rows(path, &rows)?;
    }
    Ok(())
}

/// Executes a parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Run {
            session,
            out: path,
            gzip,
            realtime,
        } => cmd_run(session, path, *gzip, *realtime, out),
        Command::Replay { log } => cmd_replay(log, out),
        Command::Report {
            logs,
            session,
            seeds,
            out: json_out,
        } => cmd_report(logs, session, *seeds, json_out.as_deref(), out),
        Command::Sweep {
            session,
            latencies,
            out: json_out,
        } => cmd_sweep(session, latencies, json_out.as_deref(), out),
        Command::Serve {
            session,
            port,
            out: log,
        } => {
            let mut cfg = session.resolve()?;
            if session.operator.is_none() {
                cfg.operator = OperatorKind::Interactive;
            }
            serve::serve(&cfg, *port, log.as_deref(), out)
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let d = json!({ "ok": false, "error": "usage", "message": e.to_string().trim_end() });
            eprintln!("{d}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
