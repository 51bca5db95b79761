use serde::Serialize;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but do not affect the exit code.
    pub asserted: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<CheckOutcome>,
    /// Key/value facts in insertion order.
    pub facts: Vec<(String, String)>,
    pub outputs: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            ..RunReport::default()
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed,
            asserted: true,
            detail: detail.into(),
        });
        passed
    }

    pub fn note(&mut self, name: impl Into<String>, value: bool, detail: impl Into<String>) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed: value,
            asserted: false,
            detail: detail.into(),
        });
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push((key.into(), value.to_string()));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.asserted)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.asserted && !c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("maltcat {}\n", self.command);
        for (k, v) in &self.facts {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for c in &self.checks {
            let label = match (c.asserted, c.passed) {
                (true, true) => "PASS",
                (true, false) => "FAIL",
                (false, true) => "yes ",
                (false, false) => "no  ",
            };
            out.push_str(&format!("{label} {}", c.name));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        for o in &self.outputs {
            out.push_str(&format!("wrote {o}\n"));
        }
        out.push_str(&format!("status: {}\n", self.exit_code()));
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct WithStatus<'a> {
            #[serde(flatten)]
            report: &'a RunReport,
            status: i32,
        }
        let mut s = serde_json::to_string_pretty(&WithStatus {
            report: self,
            status: self.exit_code(),
        })
        .expect("report serializes");
        s.push('\n');
        s
    }
}
