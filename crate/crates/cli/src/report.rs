//! Human and machine renderings of check reports.
//!
//! The machine form is one record per line, fields separated by a tab:
//!
//! ```text
//! schema  liftspace-report  1
//! check   <name>  pass|fail|skip  <witness>
//! summary <pass>  <fail>  <skip>
//! ```
//!
//! Tabs, newlines and backslashes in witnesses are escaped as `\t`, `\n`
//! and `\\`.

use std::fmt::Write as _;

use liftspace::borel::{CheckEntry, Report, Status};

pub const SCHEMA: &str = "liftspace-report";
pub const SCHEMA_VERSION: u32 = 1;

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

fn unescape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

pub fn render_human(report: &Report, title: &str) -> String {
    let mut out = format!("{title}\n");
    let width = report.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
    for e in &report.entries {
        let tag = match e.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let _ = writeln!(out, "{tag}  {:width$}  {}", e.name, e.witness.replace('\n', " "));
    }
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skip)
    );
    out
}

pub fn render_machine(report: &Report) -> String {
    let mut out = format!("schema\t{SCHEMA}\t{SCHEMA_VERSION}\n");
    for e in &report.entries {
        let _ = writeln!(out, "check\t{}\t{}\t{}", escape(&e.name), e.status.as_str(), escape(&e.witness));
    }
    let _ = writeln!(
        out,
        "summary\t{}\t{}\t{}",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skip)
    );
    out
}

/// Reads the machine form back. Returns `None` on a schema mismatch or a
/// malformed record, or when the summary disagrees with the entries.
pub fn parse_machine(text: &str) -> Option<Report> {
    let mut lines = text.lines();
    if lines.next()? != format!("schema\t{SCHEMA}\t{SCHEMA_VERSION}") {
        return None;
    }
    let mut report = Report::default();
    let mut summary = None;
    for line in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[..] {
            ["check", name, status, witness] => {
                let status = match status {
                    "pass" => Status::Pass,
                    "fail" => Status::Fail,
                    "skip" => Status::Skip,
                    _ => return None,
                };
                report.entries.push(CheckEntry { name: unescape(name), status, witness: unescape(witness) });
            }
            ["summary", p, f, s] if summary.is_none() => {
                summary = Some((p.parse::<usize>().ok()?, f.parse::<usize>().ok()?, s.parse::<usize>().ok()?));
            }
            _ => return None,
        }
    }
    let counts = (report.count(Status::Pass), report.count(Status::Fail), report.count(Status::Skip));
    (summary? == counts).then_some(report)
}
