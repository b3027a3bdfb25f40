//! JSON-lines session logs.
//!
//! Every line is an object carrying `"v"` (schema version) and `"kind"`:
//!
//! | kind      | when                | payload                                   |
//! |-----------|---------------------|-------------------------------------------|
//! | `header`  | first line          | `config` (full [`SessionConfig`])         |
//! | `tick`    | one per 1 ms tick   | [`TickRecord`] fields                     |
//! | `summary` | last line on success| `window`, `labels`, `summary`             |
//! | `fault`   | last line on fault  | `tick`, `reason`                          |
//!
//! Tick fields: `tick`, `timestamp_us`, `leader` / `follower` (each with
//! `angle`, `velocity`, `motor_torque`, `tau_hat` as 4-element arrays),
//! `operator_torque`, `rti` (`fill_percent`, `color` as `[r,g,b]`, `zone`),
//! `l2f` / `f2l` link events (`sent`, `dropped`, `delivered`) and optional
//! `markers`. Files whose first two bytes are the gzip magic are
//! decompressed transparently.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};

use super::config::SessionConfig;
use crate::error::{Error, Result};
use crate::link::tick::TickRecord;
use crate::metrics::{BandSummary, TrialLabels};

pub const LOG_SCHEMA_VERSION: u32 = 1;

/// Tick range `[start_tick, end_tick)` the trial metrics are computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialWindow {
    pub start_tick: u64,
    pub end_tick: u64,
}

impl TrialWindow {
    pub fn len(&self) -> u64 {
        self.end_tick.saturating_sub(self.start_tick)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, tick: u64) -> bool {
        (self.start_tick..self.end_tick).contains(&tick)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LogLine {
    Header {
        config: SessionConfig,
    },
    Tick(TickRecord),
    Summary {
        window: TrialWindow,
        labels: TrialLabels,
        summary: Option<BandSummary>,
    },
    Fault {
        tick: u64,
        reason: String,
    },
}

#[derive(Serialize, Deserialize)]
struct Entry {
    v: u32,
    #[serde(flatten)]
    line: LogLine,
}

#[derive(Serialize)]
struct EntryRef<'a> {
    v: u32,
    #[serde(flatten)]
    line: &'a LogLine,
}

enum Sink {
    Plain(BufWriter<File>),
    Gzip(GzEncoder<BufWriter<File>>),
    Other(Box<dyn Write>),
}

impl Sink {
    fn writer(&mut self) -> &mut dyn Write {
        match self {
            Sink::Plain(w) => w,
            Sink::Gzip(w) => w,
            Sink::Other(w) => w,
        }
    }
}

pub struct LogWriter {
    sink: Sink,
}

impl LogWriter {
    pub fn create(path: &Path, gzip: bool) -> Result<Self> {
        let file = BufWriter::new(File::create(path)?);
        let sink = if gzip {
            Sink::Gzip(GzEncoder::new(file, Compression::default()))
        } else {
            Sink::Plain(file)
        };
        Ok(Self { sink })
    }

    /// Writes into an arbitrary sink.
    pub fn from_writer(out: Box<dyn Write>) -> Self {
        Self {
            sink: Sink::Other(out),
        }
    }

    pub fn write(&mut self, line: &LogLine) -> Result<()> {
        let out = self.sink.writer();
        serde_json::to_writer(
            &mut *out,
            &EntryRef {
                v: LOG_SCHEMA_VERSION,
                line,
            },
        )?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// Flushes buffered output and writes the gzip trailer if compressing.
    pub fn finish(self) -> Result<()> {
        match self.sink {
            Sink::Plain(mut w) => w.flush()?,
            Sink::Gzip(w) => w.finish()?.flush()?,
            Sink::Other(mut w) => w.flush()?,
        }
        Ok(())
    }
}

pub fn parse_line(text: &str, line_no: usize) -> Result<LogLine> {
    let entry: Entry = serde_json::from_str(text).map_err(|e| Error::Schema {
        line: line_no,
        message: e.to_string(),
    })?;
    if entry.v != LOG_SCHEMA_VERSION {
        return Err(Error::Schema {
            line: line_no,
            message: format!("unsupported schema version {}", entry.v),
        });
    }
    Ok(entry.line)
}

pub fn open_log(path: &Path) -> Result<Box<dyn BufRead>> {
    let mut file = File::open(path)?;
    let mut magic = [0u8; 2];
    let n = file.read(&mut magic)?;
    let file = File::open(path)?;
    if n == 2 && magic == [0x1f, 0x8b] {
        Ok(Box::new(BufReader::new(GzDecoder::new(file))))
    } else {
        Ok(Box::new(BufReader::new(file)))
    }
}

/// Reads and parses every line of a log file.
pub fn read_log(path: &Path) -> Result<Vec<LogLine>> {
    read_lines(open_log(path)?)
}

pub fn read_lines(reader: impl BufRead) -> Result<Vec<LogLine>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        out.push(parse_line(&line, i + 1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_carry_version_and_kind() {
        let mut buf = Vec::new();
        {
            let line = LogLine::Fault {
                tick: 3,
                reason: "boom".into(),
            };
            serde_json::to_writer(&mut buf, &EntryRef { v: 1, line: &line }).unwrap();
        }
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, r#"{"v":1,"kind":"fault","tick":3,"reason":"boom"}"#);
        assert_eq!(
            parse_line(&text, 1).unwrap(),
            LogLine::Fault { tick: 3, reason: "boom".into() }
        );
    }

    #[test]
    fn version_mismatch_is_schema_error() {
        let err = parse_line(r#"{"v":2,"kind":"fault","tick":3,"reason":"x"}"#, 4).unwrap_err();
        assert!(matches!(err, Error::Schema { line: 4, .. }));
    }

    #[test]
    fn garbage_is_schema_error() {
        assert!(matches!(parse_line("{\"v\":1,\"kind\":\"ti", 9), Err(Error::Schema { line: 9, .. })));
    }
}
