use std::fmt::Write as _;

use crate::{Format, SuiteReport};

pub fn render(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => csv(report),
        Format::Text => text(report),
    }
}

/// Pretty JSON with a trailing newline. Maps are ordered, so the bytes depend
/// only on the report contents.
pub fn json(report: &SuiteReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn csv(report: &SuiteReport) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "check", "sector", "verdict", "cases", "details", "counterexample"]).expect("in-memory write");
    for r in &report.records {
        let rep = &r.report;
        let details = if rep.details.is_empty() { String::new() } else { serde_json::to_string(&rep.details).expect("json") };
        w.write_record([
            r.suite.as_str(),
            rep.check.as_str(),
            rep.sector.as_str(),
            &rep.verdict.to_string(),
            &rep.cases.to_string(),
            &details,
            rep.counterexample.as_deref().unwrap_or(""),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn text(report: &SuiteReport) -> String {
    let mut s = String::new();
    let c = &report.config;
    let _ = writeln!(s, "monodromy {} | D={} metric={} | {}", report.tool_version, c.dim, c.metric, c.command);
    for r in &report.records {
        let _ = writeln!(s, "{}", r.report);
        for (k, v) in &r.report.details {
            let _ = writeln!(s, "    {k}: {v}");
        }
    }
    let m = &report.summary;
    let _ = writeln!(s, "pass={} fail={} info={} error={}", m.pass, m.fail, m.info, m.error);
    s
}
