//! Front end for the frobforge engine: the declaration language, session
//! configuration, a persistent result cache, single-file commands and the
//! corpus runner. Reports are JSON with a versioned schema and integer values
//! only.

pub mod cache;
pub mod commands;
pub mod config;
pub mod corpus;
pub mod dsl;
pub mod resolve;

use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA: &str = "frobforge-report/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Dsl(#[from] dsl::DslError),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error(transparent)]
    Engine(#[from] frobforge_core::Error),
}

/// Outcome class, ordered by precedence when several entries fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Ok,
    Usage,
    Resource,
    Verification,
}

impl Severity {
    pub fn of(e: &frobforge_core::Error) -> Self {
        use frobforge_core::Error as E;
        match e {
            E::Verification(_) => Severity::Verification,
            E::Resource(_) | E::Overflow(_) => Severity::Resource,
            _ => Severity::Usage,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Severity::Ok => 0,
            Severity::Verification => 1,
            Severity::Usage => 2,
            Severity::Resource => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Severity::Ok => "ok",
            Severity::Usage => "usage-error",
            Severity::Resource => "resource-error",
            Severity::Verification => "verification-failure",
        }
    }
}

impl CliError {
    pub fn severity(&self) -> Severity {
        match self {
            CliError::Engine(e) => Severity::of(e),
            _ => Severity::Usage,
        }
    }
}

/// The report envelope shared by every command.
pub fn envelope(command: &str, input: &str, status: Severity, body: Value) -> Value {
    let mut v = json!({"schema": SCHEMA, "command": command, "input": input, "status": status.label()});
    match status {
        Severity::Ok => v["result"] = body,
        _ => v["error"] = body,
    }
    v
}

/// Flattens a report into `path: value` lines.
pub fn render_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    walk(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
                }
            }
            Value::Array(a) if !a.is_empty() && a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            other => out.push(format!("{prefix}: {other}")),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out.join("\n") + "\n"
}
