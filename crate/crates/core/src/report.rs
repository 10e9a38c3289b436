//! Uniform pass/fail reports shared by every checker and the CLI.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// Human-readable, 1-based rendering of the first failure.
    pub witness: Option<String>,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, passed: bool, witness: Option<String>) -> Self {
        CheckItem {
            name: name.into(),
            passed,
            witness,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        CheckItem::new(name, true, None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub subject: String,
    pub items: Vec<CheckItem>,
    /// Non-gating facts shown alongside the checks (dimensions, computed values).
    pub info: Vec<(String, String)>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            items: Vec::new(),
            info: Vec::new(),
        }
    }

    pub fn with_items(subject: impl Into<String>, items: Vec<CheckItem>) -> Self {
        CheckReport {
            items,
            ..CheckReport::new(subject)
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = CheckItem>) {
        self.items.extend(items);
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.info.push((key.into(), value.into()));
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "subject: {}", self.subject);
        for item in &self.items {
            let mark = if item.passed { "PASS" } else { "FAIL" };
            match &item.witness {
                Some(w) => {
                    let _ = writeln!(s, "  {mark} {}  witness: {w}", item.name);
                }
                None => {
                    let _ = writeln!(s, "  {mark} {}", item.name);
                }
            }
        }
        for (k, v) in &self.info {
            let _ = writeln!(s, "  info {k}: {v}");
        }
        let _ = writeln!(s, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// `(e1, e3)` style rendering of 0-based basis indices.
pub fn basis_tuple(prefix: &str, indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| format!("{prefix}{}", i + 1)).collect();
    format!("({})", parts.join(", "))
}

/// `ε1∧ε3` style rendering of a basis monomial; `1` in degree zero.
pub fn monomial(indices: &[usize]) -> String {
    if indices.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> = indices.iter().map(|i| format!("ε{}", i + 1)).collect();
    parts.join("∧")
}
