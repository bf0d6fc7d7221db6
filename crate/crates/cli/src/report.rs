use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// One structured result: what was checked on which structure, and the
/// witness or detail.
#[derive(Debug, Clone, Serialize)]
pub struct Line {
    pub subject: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub header: Vec<String>,
    pub summary: Vec<String>,
    pub lines: Vec<Line>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, subject: &str, check: &str, status: Status, detail: impl Into<String>) {
        self.lines.push(Line {
            subject: subject.to_string(),
            check: check.to_string(),
            status,
            detail: detail.into(),
        });
    }

    pub fn info(&mut self, subject: &str, check: &str, detail: impl Into<String>) {
        self.push(subject, check, Status::Info, detail);
    }

    /// Pass when `witness` is `None`, otherwise fail with the witness.
    pub fn check(&mut self, subject: &str, check: &str, witness: Option<String>, ok_detail: impl Into<String>) -> bool {
        match witness {
            None => {
                self.push(subject, check, Status::Pass, ok_detail);
                true
            }
            Some(w) => {
                self.push(subject, check, Status::Fail, w);
                false
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            crate::EXIT_OK
        } else {
            crate::EXIT_VIOLATION
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            let _ = writeln!(out, "# {h}");
        }
        for s in &self.summary {
            let _ = writeln!(out, "{s}");
        }
        for l in &self.lines {
            let tag = match l.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            if l.detail.is_empty() {
                let _ = writeln!(out, "  [{tag}] {}: {}", l.subject, l.check);
            } else {
                let _ = writeln!(out, "  [{tag}] {}: {}: {}", l.subject, l.check, l.detail);
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            report: &'a Report,
            passed: bool,
        }
        serde_json::to_string_pretty(&Out {
            report: self,
            passed: self.passed(),
        })
        .expect("report serializes")
    }
}
