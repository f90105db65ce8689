//! Pass/fail reports for the identity-verification suites.

use serde_json::json;
use std::fmt;

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport { items: Vec::new() }
    }

    pub fn add(&mut self, name: impl Into<String>, pass: bool) {
        self.items.push(CheckItem {
            name: name.into(),
            pass,
            detail: None,
        });
    }

    pub fn add_detail(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            pass,
            detail: Some(detail.into()),
        });
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    /// Items in deterministic (name-sorted) order.
    pub fn items(&self) -> Vec<&CheckItem> {
        let mut v: Vec<&CheckItem> = self.items.iter().collect();
        v.sort_by(|a, b| a.name.cmp(&b.name));
        v
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items().into_iter().filter(|i| !i.pass).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "total": self.len(),
            "passed": self.items.iter().filter(|i| i.pass).count(),
            "all_pass": self.all_pass(),
            "checks": self.items().iter().map(|i| json!({
                "name": i.name,
                "pass": i.pass,
                "detail": i.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in self.items() {
            writeln!(
                f,
                "{} {}{}",
                if item.pass { "PASS" } else { "FAIL" },
                item.name,
                item.detail
                    .as_deref()
                    .map(|d| format!(" ({d})"))
                    .unwrap_or_default()
            )?;
        }
        write!(
            f,
            "{}/{} checks passed",
            self.items.iter().filter(|i| i.pass).count(),
            self.len()
        )
    }
}
