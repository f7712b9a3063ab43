use plovkit_core::report::{Record, Report, Status};
use serde_json::Value;

use crate::commands::{Output, Table};
use crate::Format;

pub fn format(out: &Output, format: Format) -> String {
    match format {
        Format::Json => out.report.to_json(),
        Format::Csv => match &out.table {
            Some(t) => table_csv(t),
            None => records_csv(&out.report),
        },
        Format::Text => {
            let mut s = out.text.clone();
            if out.detail || out.report.failures().next().is_some() {
                s.push_str(&records_text(&out.report));
            }
            s
        }
    }
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Observed => "OBS ",
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Observed => "observed",
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn record_line(r: &Record) -> String {
    let values: Vec<String> =
        r.values.iter().filter(|(_, v)| !v.is_null()).map(|(k, v)| format!("{k}={}", value_text(v))).collect();
    let mut line = format!("{} {}: {}", status_label(r.status), r.name, r.anchor);
    if !values.is_empty() {
        line.push_str(&format!(" [{}]", values.join(", ")));
    }
    line
}

fn records_text(report: &Report) -> String {
    let mut s = String::new();
    for r in &report.records {
        s.push_str(&record_line(r));
        s.push('\n');
    }
    if let Some(times) = &report.timing_ms {
        for (name, ms) in times {
            s.push_str(&format!("time {name}: {ms} ms\n"));
        }
    }
    let failed = report.failures().count();
    s.push_str(&format!("{} records, {} failed\n", report.records.len(), failed));
    s
}

fn to_csv(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

fn table_csv(t: &Table) -> String {
    to_csv(&t.header, t.rows.iter().cloned())
}

fn records_csv(report: &Report) -> String {
    let header: Vec<String> = ["name", "status", "anchor", "values"].map(String::from).to_vec();
    to_csv(
        &header,
        report.records.iter().map(|r| {
            vec![
                r.name.clone(),
                status_name(r.status).to_owned(),
                r.anchor.clone(),
                serde_json::to_string(&r.values).expect("values serialize"),
            ]
        }),
    )
}
