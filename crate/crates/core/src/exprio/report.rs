use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

/// Outcome of one suite run. Checks keep insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub level: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: &str, level: impl ToString) -> Self {
        Report {
            suite: suite.to_string(),
            level: level.to_string(),
            checks: vec![],
            elapsed_ms: None,
        }
    }

    /// Records a check; a repeated id gets a numeric suffix.
    pub fn check(&mut self, id: &str, ok: bool, lhs: impl ToString, rhs: impl ToString, detail: impl ToString) {
        let mut id = id.to_string();
        if self.checks.iter().any(|c| c.id == id) {
            let mut i = 2;
            while self.checks.iter().any(|c| c.id == format!("{id}#{i}")) {
                i += 1;
            }
            id = format!("{id}#{i}");
        }
        self.checks.push(Check {
            id,
            status: if ok { Status::Pass } else { Status::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            detail: detail.to_string(),
        });
    }

    pub fn skip(&mut self, id: &str, detail: impl ToString) {
        self.checks.push(Check {
            id: id.to_string(),
            status: Status::Skipped,
            lhs: String::new(),
            rhs: String::new(),
            detail: detail.to_string(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            let id = format!("{}/{}", other.suite, c.id);
            self.checks.push(Check { id, ..c });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Deterministic JSON rendering.
pub fn emit_report(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn read_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_roundtrip() {
        let r = Report::new("empty", "1");
        let t = emit_report(&r);
        assert!(t.contains("\"checks\": []"));
        assert_eq!(read_report(&t).unwrap(), r);

        let mut r = Report::new("s", "-5/4");
        r.check("a", false, "1/2", "3", "why");
        r.check("a", true, "", "", "");
        assert_eq!(r.checks[1].id, "a#2");
        let t = emit_report(&r);
        assert!(t.contains("\"status\": \"fail\""));
        assert!(t.contains("\"lhs\": \"1/2\""));
        assert_eq!(read_report(&t).unwrap(), r);
        assert!(!r.passed());
    }
}
