use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one verb: named checks, an optional JSON payload, and extra
/// lines for the human-readable rendering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub verb: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(verb: impl Into<String>) -> Self {
        Self { verb: verb.into(), passed: true, checks: Vec::new(), data: None, lines: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn with_data(mut self, v: Value) -> Self {
        self.data = Some(v);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{tag}  {}\n", c.name));
            } else {
                out.push_str(&format!("{tag}  {}  ({})\n", c.name, c.detail));
            }
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            out.push_str(&format!("{}: {} checks, {failed} failed\n", self.verb, self.checks.len()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_failure_fails_the_report() {
        let mut r = Report::new("verify x");
        r.check("a", true, "");
        r.check("b", false, "bad");
        assert!(!r.passed);
        let text = r.to_text();
        assert!(text.contains("PASS  a\n"));
        assert!(text.contains("FAIL  b  (bad)"));
        assert!(!r.to_json().contains("lines"));
    }
}
