//! Uniform command reports and exit codes.

use std::fmt::Display;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Item {
    pub check: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

/// Failures that end a command early. The report built so far is still printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Resource(m) | CliError::Invariant(m) => m,
        }
    }
}

pub type CmdResult = Result<(), CliError>;

pub fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub items: Vec<Item>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Kept apart from the items so that everything above is reproducible.
    pub timing: Timing,
    #[serde(skip)]
    pub lines: Vec<String>,
    #[serde(skip)]
    started: Option<Instant>,
}

#[derive(Debug, Default, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            status: Status::Pass,
            items: Vec::new(),
            data: Value::Null,
            error: None,
            timing: Timing::default(),
            lines: Vec::new(),
            started: Some(Instant::now()),
        }
    }

    pub fn check(&mut self, check: impl Into<String>, expected: impl Display, got: impl Display) -> bool {
        let (expected, got) = (expected.to_string(), got.to_string());
        let ok = expected == got;
        self.items.push(Item { check: check.into(), expected, got, ok });
        ok
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Settles the status and timing; returns the process exit code.
    pub fn finish(&mut self, outcome: CmdResult) -> i32 {
        if let Some(t) = self.started.take() {
            self.timing.elapsed_ms = t.elapsed().as_secs_f64() * 1e3;
        }
        match outcome {
            Err(e) => {
                self.status = Status::Error;
                self.error = Some(e.message().to_string());
                e.exit_code()
            }
            Ok(()) if self.items.iter().all(|i| i.ok) => {
                self.status = Status::Pass;
                0
            }
            Ok(()) => {
                self.status = Status::Fail;
                1
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_plain(&self) -> String {
        let mut out = format!("command: {}\nstatus: {}\n", self.command, serde_json::to_value(self.status).expect("enum")
            .as_str()
            .unwrap_or("?"));
        if let Some(e) = &self.error {
            out += &format!("error: {e}\n");
        }
        for i in &self.items {
            let mark = if i.ok { "ok  " } else { "FAIL" };
            if i.ok {
                out += &format!("[{mark}] {}: {}\n", i.check, i.got);
            } else {
                out += &format!("[{mark}] {}: expected {}, got {}\n", i.check, i.expected, i.got);
            }
        }
        for l in &self.lines {
            out += l;
            out.push('\n');
        }
        out += &format!("time: {:.1} ms\n", self.timing.elapsed_ms);
        out
    }
}

/// Ceiling from the environment, falling back to `default`.
pub fn ceiling(var: &str, default: usize) -> usize {
    std::env::var(var).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

pub fn check_ceiling(what: &str, var: &str, default: usize, requested: usize) -> CmdResult {
    let limit = ceiling(var, default);
    if requested > limit {
        Err(CliError::Resource(format!("{what} = {requested} exceeds the ceiling {limit} (set {var} to raise it)")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_items() {
        let mut r = Report::new("x".into());
        r.check("a", 1, 1);
        assert_eq!(r.finish(Ok(())), 0);
        let mut r = Report::new("x".into());
        r.check("a", 1, 2);
        assert_eq!(r.finish(Ok(())), 1);
        assert_eq!(r.status, Status::Fail);
        let mut r = Report::new("x".into());
        assert_eq!(r.finish(Err(CliError::Resource("n".into()))), 3);
        assert!(r.to_json().contains("\"status\": \"error\""));
    }
}
