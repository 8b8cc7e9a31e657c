use kgraph::sample::{Check, SuiteReport};
use serde_json::{Map, Value};

use crate::document::pretty;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A search hit its work limit; reported, but not a failure.
    Inconclusive,
    Error,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Inconclusive => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

/// The result of one command. `result` holds the command-specific fields.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub verdict: Verdict,
    pub result: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, args: &[String], seed: Option<u64>) -> Self {
        Report { command: command.into(), args: args.to_vec(), seed, verdict: Verdict::Pass, result: Map::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.into(), value.into());
    }

    /// Appends named checks under `checks`; any failure fails the report.
    pub fn add_checks(&mut self, checks: impl IntoIterator<Item = Value>) {
        let list = self.result.entry("checks").or_insert_with(|| Value::Array(Vec::new()));
        let list = list.as_array_mut().expect("checks is an array");
        for c in checks {
            if c["passed"] == Value::Bool(false) && self.verdict == Verdict::Pass {
                self.verdict = Verdict::Fail;
            }
            list.push(c);
        }
    }

    pub fn add_suite(&mut self, suite: &SuiteReport) {
        self.add_checks(suite.checks.iter().map(|c| check_value(&c.name, c.checked, c.witness.clone().map(Value::String))));
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::from(self.command.clone()));
        map.insert("args".into(), Value::from(self.args.clone()));
        map.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        map.insert("verdict".into(), Value::from(self.verdict.name()));
        map.insert("result".into(), Value::Object(self.result.clone()));
        Value::Object(map)
    }

    /// Structured output carries no timing so that it is byte-stable; text output appends it.
    pub fn emit(&self, format: Format, elapsed_ms: Option<u128>) -> String {
        match format {
            Format::Json => pretty(&self.to_value()),
            Format::Text => {
                let mut out = format!("kgraph {}\n", self.command);
                out.push_str(&format!("seed: {}\n", self.seed.map_or("-".to_string(), |s| s.to_string())));
                out.push_str(&format!("verdict: {}\n", self.verdict.name()));
                for (key, value) in &self.result {
                    match value {
                        Value::Array(items) if key == "checks" => {
                            out.push_str("checks:\n");
                            for c in items {
                                let mark = if c["passed"] == Value::Bool(true) { "ok  " } else { "FAIL" };
                                out.push_str(&format!(
                                    "  {mark} {} ({} checked)",
                                    c["name"].as_str().unwrap_or(""),
                                    c["checked"]
                                ));
                                if !c["witness"].is_null() {
                                    out.push_str(&format!(" witness: {}", c["witness"]));
                                }
                                out.push('\n');
                            }
                        }
                        _ => out.push_str(&format!("{key}: {value}\n")),
                    }
                }
                if let Some(ms) = elapsed_ms {
                    out.push_str(&format!("elapsed: {ms} ms\n"));
                }
                out
            }
        }
    }
}

pub fn check_value(name: &str, checked: usize, witness: Option<Value>) -> Value {
    let mut map = Map::new();
    map.insert("name".into(), Value::from(name));
    map.insert("checked".into(), Value::from(checked));
    map.insert("passed".into(), Value::Bool(witness.is_none()));
    map.insert("witness".into(), witness.unwrap_or(Value::Null));
    Value::Object(map)
}

pub fn from_check<W>(name: &str, check: Check<W>, render: impl FnOnce(W) -> Value) -> Value {
    check_value(name, check.checked, check.witness.map(render))
}
