//! Command reports: pass/fail records, a machine payload and a text table.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undecided => "UNDECIDED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub item: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
    pub payload: Value,
    /// Lines printed above the records in text mode.
    pub table: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            records: Vec::new(),
            payload: Value::Null,
            table: Vec::new(),
        }
    }

    pub fn record(&mut self, item: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.records.push(Record {
            item: item.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn check(&mut self, item: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.record(item, Status::from_bool(ok), detail);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.table.push(s.into());
    }

    pub fn status(&self) -> Status {
        if self.records.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else if self.records.iter().any(|r| r.status == Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 3,
        }
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "status": self.status(),
            "records": self.records,
            "payload": self.payload,
        });
        serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("$ jordeg {}\n", self.command);
        for l in &self.table {
            out.push_str(l);
            out.push('\n');
        }
        if !self.table.is_empty() && !self.records.is_empty() {
            out.push('\n');
        }
        for r in &self.records {
            if r.detail.is_empty() {
                out.push_str(&format!("{:<9} {}\n", r.status.tag(), r.item));
            } else {
                out.push_str(&format!("{:<9} {}: {}\n", r.status.tag(), r.item, r.detail));
            }
        }
        let (pass, fail, und) = self.records.iter().fold((0, 0, 0), |(p, f, u), r| match r.status {
            Status::Pass => (p + 1, f, u),
            Status::Fail => (p, f + 1, u),
            Status::Undecided => (p, f, u + 1),
        });
        out.push_str(&format!("{} passed, {} failed, {} undecided\n", pass, fail, und));
        out
    }
}
