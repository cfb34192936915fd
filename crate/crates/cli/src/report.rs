use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use stein_core::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Errors that map to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Budget and malformed-input errors abort the run; everything else is a
/// failed check.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Budget(_)
            | Error::NotPrime(_)
            | Error::InvalidParameter(_)
            | Error::InvalidTable(_)
            | Error::UnknownGroup(_)
            | Error::Shape(_)
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
    pub runtime_ms: u64,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip)]
    pub series: Vec<SeriesRow>,
    pub status: Status,
}

/// One row of the flat series export.
#[derive(Clone, Debug)]
pub struct SeriesRow {
    pub table: String,
    pub key: String,
    pub coeffs: Vec<u64>,
}

impl Report {
    pub fn new(suite: &str, params: BTreeMap<String, Value>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            params,
            checks: Vec::new(),
            data: None,
            series: Vec::new(),
            status: Status::Pass,
        }
    }

    /// Runs `f`, which returns `(actual, passed)`. Input errors propagate.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        inputs: Value,
        expected: Value,
        f: impl FnOnce() -> stein_core::Result<(Value, bool)>,
    ) -> Result<bool, InputError> {
        let start = Instant::now();
        let (actual, passed) = match f() {
            Ok(x) => x,
            Err(e) if is_input_error(&e) => return Err(InputError(e.to_string())),
            Err(e) => (Value::String(format!("error: {e}")), false),
        };
        let runtime_ms = start.elapsed().as_millis() as u64;
        if !passed {
            self.status = Status::Fail;
        }
        self.checks.push(Check { name: name.into(), inputs, expected, actual, passed, runtime_ms });
        Ok(passed)
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Series rows when present, otherwise one row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.series.is_empty() {
            out.push_str("check,passed\n");
            for c in &self.checks {
                let _ = writeln!(out, "{},{}", csv_field(&c.name), c.passed);
            }
            return out;
        }
        out.push_str("table,key,degree,value\n");
        for row in &self.series {
            for (d, v) in row.coeffs.iter().enumerate() {
                let _ = writeln!(out, "{},{},{d},{v}", csv_field(&row.table), csv_field(&row.key));
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
