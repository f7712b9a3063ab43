//! Machine-readable check reports. Every integer is stored as a decimal
//! string so exact values survive JSON consumers with 64-bit numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::{Degree, Rational, RationalPoly};
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for open questions; never counts as a failure.
    Observed,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Conversion into a report value with integers rendered as strings.
pub trait ToReportValue {
    fn to_report_value(&self) -> Value;
}

macro_rules! integer_values {
    ($($t:ty),*) => {$(
        impl ToReportValue for $t {
            fn to_report_value(&self) -> Value {
                Value::String(self.to_string())
            }
        }
    )*};
}

integer_values!(u32, u64, usize, i32, i64, BigInt, Rational, RationalPoly, Degree, Partition);

impl ToReportValue for bool {
    fn to_report_value(&self) -> Value {
        Value::Bool(*self)
    }
}

impl ToReportValue for str {
    fn to_report_value(&self) -> Value {
        Value::String(self.to_owned())
    }
}

impl ToReportValue for String {
    fn to_report_value(&self) -> Value {
        Value::String(self.clone())
    }
}

impl<T: ToReportValue> ToReportValue for [T] {
    fn to_report_value(&self) -> Value {
        Value::Array(self.iter().map(ToReportValue::to_report_value).collect())
    }
}

impl<T: ToReportValue> ToReportValue for Vec<T> {
    fn to_report_value(&self) -> Value {
        self.as_slice().to_report_value()
    }
}

impl<T: ToReportValue> ToReportValue for Option<T> {
    fn to_report_value(&self) -> Value {
        self.as_ref().map_or(Value::Null, ToReportValue::to_report_value)
    }
}

impl<T: ToReportValue + ?Sized> ToReportValue for &T {
    fn to_report_value(&self) -> Value {
        (**self).to_report_value()
    }
}

impl ToReportValue for Value {
    fn to_report_value(&self) -> Value {
        self.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    /// The statement being checked, in words.
    pub anchor: String,
    pub status: Status,
    pub values: BTreeMap<String, Value>,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, status: Status) -> Self {
        Self { name: name.into(), anchor: anchor.into(), status, values: BTreeMap::new() }
    }

    pub fn check(name: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        Self::new(name, anchor, Status::from_bool(ok))
    }

    pub fn observed(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self::new(name, anchor, Status::Observed)
    }

    pub fn with(mut self, key: &str, value: impl ToReportValue) -> Self {
        self.values.insert(key.to_owned(), value.to_report_value());
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: BTreeMap<String, Value>,
    pub records: Vec<Record>,
    /// Wall-clock milliseconds per record; absent unless timing was requested
    /// so that reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, String>>,
}

impl Report {
    pub fn new(tool: impl Into<String>, version: impl Into<String>) -> Self {
        Self {
            tool: tool.into(),
            version: version.into(),
            config: BTreeMap::new(),
            records: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn configure(mut self, key: &str, value: impl ToReportValue) -> Self {
        self.config.insert(key.to_owned(), value.to_report_value());
        self
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = Record>) {
        self.records.extend(records);
    }

    pub fn passed(&self) -> bool {
        !self.records.iter().any(Record::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.failed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
