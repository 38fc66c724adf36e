//! Machine-readable pass/fail reports shared by all verification suites.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckItem {
    pub fn new(name: String, pass: bool, detail: String) -> Self {
        CheckItem { name, pass, detail }
    }

    pub fn pass(name: String) -> Self {
        CheckItem::new(name, true, String::new())
    }

    pub fn fail(name: &str, detail: String) -> Self {
        CheckItem::new(name.to_string(), false, detail)
    }

    /// An exact-zero check with the number of surviving terms recorded.
    pub fn residual(name: String, is_zero: bool, residual_terms: usize) -> Self {
        CheckItem::new(
            name,
            is_zero,
            if is_zero {
                String::new()
            } else {
                format!("{residual_terms} residual terms")
            },
        )
    }

    /// Exact-zero check that renders the residual (truncated) on failure.
    /// The preview closure only runs when the check fails.
    pub fn exact_zero(name: String, is_zero: bool, preview: impl FnOnce() -> String) -> Self {
        CheckItem::new(
            name,
            is_zero,
            if is_zero {
                String::new()
            } else {
                let mut s = preview();
                const MAX: usize = 160;
                if s.len() > MAX {
                    let cut = s
                        .char_indices()
                        .take_while(|&(idx, _)| idx <= MAX)
                        .last()
                        .map(|(idx, _)| idx)
                        .unwrap_or(0);
                    s.truncate(cut);
                    s.push_str(" ...");
                }
                s
            },
        )
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<CheckItem>,
    /// JSON key under which the items are listed; the pairwise
    /// commutativity documents use "pairs".
    item_key: &'static str,
}

impl CheckReport {
    pub fn new(suite: &str, n: usize) -> Self {
        CheckReport {
            suite: suite.to_string(),
            n,
            checks: Vec::new(),
            item_key: "checks",
        }
    }

    pub fn pairs(suite: &str, n: usize) -> Self {
        CheckReport {
            suite: suite.to_string(),
            n,
            checks: Vec::new(),
            item_key: "pairs",
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.checks.push(item);
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), json!(c.name));
                m.insert("status".into(), json!(if c.pass { "pass" } else { "fail" }));
                if !c.detail.is_empty() {
                    m.insert("detail".into(), json!(c.detail));
                }
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite));
        m.insert("n".into(), json!(self.n));
        m.insert(self.item_key.into(), Value::Array(items));
        m.insert(
            "status".into(),
            json!(if self.passed() { "pass" } else { "fail" }),
        );
        Value::Object(m)
    }

    /// One line per check, for terminal output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}{}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", c.detail)
                }
            ));
        }
        out.push_str(&format!(
            "suite {} at n={}: {}\n",
            self.suite,
            self.n,
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}
