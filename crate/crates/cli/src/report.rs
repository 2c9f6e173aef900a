use std::collections::BTreeMap;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "lierine-report/1";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Output {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Usage,
    Io,
    Parse,
    Definition,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ErrorInfo {
    pub kind: ErrorKind,
    pub message: String,
}

/// Everything except `timing` is a function of the inputs.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub unix_ms: u128,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: Vec<Output>,
    pub assertions: Vec<Assertion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub passed: bool,
    pub timing: Timing,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let unix_ms = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            assertions: Vec::new(),
            error: None,
            passed: true,
            timing: Timing { unix_ms, wall_ms: 0 },
            started: Some(Instant::now()),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn output(&mut self, label: impl Into<String>, value: impl Into<String>) {
        self.outputs.push(Output { label: label.into(), value: value.into() });
    }

    pub fn assert(&mut self, name: impl Into<String>, passed: bool, cases: Option<usize>, witness: Option<String>) {
        let witness = if passed { None } else { witness.or_else(|| Some("failed".into())) };
        self.assertions.push(Assertion { name: name.into(), passed, cases, witness });
    }

    pub fn fail(&mut self, kind: ErrorKind, message: impl Into<String>) {
        self.error = Some(ErrorInfo { kind, message: message.into() });
    }

    pub fn finish(mut self) -> Self {
        self.passed = self.error.is_none() && self.assertions.iter().all(|a| a.passed);
        if let Some(t) = self.started.take() {
            self.timing.wall_ms = t.elapsed().as_millis();
        }
        self
    }

    /// 0 when every assertion holds, 1 on a failed assertion, 2 on usage,
    /// I/O or parse errors.
    pub fn exit_code(&self) -> i32 {
        match (&self.error, self.passed) {
            (Some(_), _) => 2,
            (None, true) => 0,
            (None, false) => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outputs {
            out.push_str(&format!("{}: {}\n", o.label, o.value));
        }
        for a in &self.assertions {
            let status = if a.passed { "PASS" } else { "FAIL" };
            let cases = a.cases.map(|c| format!(" ({c} cases)")).unwrap_or_default();
            let witness = a.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default();
            out.push_str(&format!("{status} {}{cases}{witness}\n", a.name));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {}\n", e.message));
        }
        out
    }
}
