use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Exhausted,
    InputError,
    /// Informational; never affects the exit status.
    Notice,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Exhausted => "EXHAUSTED",
            Status::InputError => "INPUT-ERROR",
            Status::Notice => "NOTICE",
        }
    }
}

/// One check. `anchor` names the published statement being checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    #[serde(rename = "check-id")]
    pub check_id: String,
    pub anchor: String,
    pub verdict: Status,
    pub witness: String,
}

impl Record {
    pub fn new(check_id: impl Into<String>, anchor: impl Into<String>, verdict: Status, witness: impl Into<String>) -> Self {
        Record {
            check_id: check_id.into(),
            anchor: anchor.into(),
            verdict,
            witness: witness.into(),
        }
    }

    pub fn check(check_id: impl Into<String>, anchor: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Self::new(check_id, anchor, if ok { Status::Pass } else { Status::Fail }, witness)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
    /// Free-form output such as a polynomial or a certificate.
    pub body: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
        if !other.body.is_empty() {
            if !self.body.is_empty() {
                self.body.push('\n');
            }
            self.body.push_str(&other.body);
        }
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.verdict == s).count()
    }

    pub fn find(&self, check_id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.check_id == check_id)
    }

    /// 3 on any input error, else 2 on any exhaustion, else 1 on any
    /// failure, else 0.
    pub fn exit_code(&self) -> u8 {
        if self.count(Status::InputError) > 0 {
            3
        } else if self.count(Status::Exhausted) > 0 {
            2
        } else if self.count(Status::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = String::new();
                for r in &self.records {
                    let _ = writeln!(s, "{:<11} {}  {}", r.verdict.label(), r.check_id, r.witness);
                }
                if !self.body.is_empty() {
                    s.push('\n');
                    s.push_str(&self.body);
                    if !self.body.ends_with('\n') {
                        s.push('\n');
                    }
                }
                let _ = writeln!(
                    s,
                    "\n{}: {} pass, {} fail, {} exhausted, {} input errors",
                    self.command,
                    self.count(Status::Pass),
                    self.count(Status::Fail),
                    self.count(Status::Exhausted),
                    self.count(Status::InputError),
                );
                s
            }
            Format::Structured => {
                let mut s = String::new();
                for r in &self.records {
                    s.push_str(&serde_json::to_string(r).expect("records serialize"));
                    s.push('\n');
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_records() {
        let mut r = Report::new("t");
        assert_eq!(r.exit_code(), 0);
        r.push(Record::new("a", "", Status::Notice, ""));
        assert_eq!(r.exit_code(), 0);
        r.push(Record::check("b", "", false, ""));
        assert_eq!(r.exit_code(), 1);
        r.push(Record::new("c", "", Status::Exhausted, ""));
        assert_eq!(r.exit_code(), 2);
        r.push(Record::new("d", "", Status::InputError, ""));
        assert_eq!(r.exit_code(), 3);
        let line = r.render(Format::Structured).lines().next().unwrap().to_string();
        assert_eq!(line, r#"{"check-id":"a","anchor":"","verdict":"notice","witness":""}"#);
    }
}
