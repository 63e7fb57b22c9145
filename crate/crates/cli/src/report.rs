//! Command reports: human text and the JSON form described by
//! `report.schema.json`.

use psicalc::ExactScalar;
use serde::Serialize;
use std::fmt::Write;

pub const SCHEMA: &str = include_str!("../report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Value {
    pub name: String,
    pub exact: String,
    pub decimal: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    /// Stable key of the identity being checked.
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleComparison {
    pub quantity: String,
    pub exact: String,
    pub numeric: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub values: Vec<Value>,
    pub assertions: Vec<Assertion>,
    pub oracle: Vec<OracleComparison>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, values: vec![], assertions: vec![], oracle: vec![], notes: vec![] }
    }

    pub fn value(&mut self, name: impl Into<String>, v: &ExactScalar, digits: u32) {
        self.values.push(Value { name: name.into(), exact: v.to_string(), decimal: v.to_decimal(digits) });
    }

    /// A value with no exact decimal, e.g. a symbol or a class name.
    pub fn text(&mut self, name: impl Into<String>, v: impl ToString) {
        self.values.push(Value { name: name.into(), exact: v.to_string(), decimal: String::new() });
    }

    pub fn assert_eq(&mut self, identity: &str, lhs: &ExactScalar, rhs: &ExactScalar) {
        self.assertions.push(Assertion {
            identity: identity.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            passed: lhs == rhs,
        });
    }

    pub fn assert_that(&mut self, identity: &str, lhs: impl ToString, rhs: impl ToString, passed: bool) {
        self.assertions.push(Assertion { identity: identity.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), passed });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed) && self.oracle.iter().all(|o| o.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command.join(" ")).unwrap();
        for v in &self.values {
            if v.decimal.is_empty() {
                writeln!(out, "{} = {}", v.name, v.exact).unwrap();
            } else {
                writeln!(out, "{} = {}", v.name, v.exact).unwrap();
                writeln!(out, "{:width$}~ {}", "", v.decimal, width = v.name.len() + 1).unwrap();
            }
        }
        for a in &self.assertions {
            let tag = if a.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{} {}: {} == {}", tag, a.identity, a.lhs, a.rhs).unwrap();
        }
        for o in &self.oracle {
            let tag = if o.passed { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{} oracle {}: exact {} numeric {} residual {:.1e} (tolerance {:.1e})",
                tag, o.quantity, o.exact, o.numeric, o.residual, o.tolerance
            )
            .unwrap();
        }
        for n in &self.notes {
            writeln!(out, "note: {}", n).unwrap();
        }
        let total = self.assertions.len() + self.oracle.len();
        let failed = self.assertions.iter().filter(|a| !a.passed).count() + self.oracle.iter().filter(|o| !o.passed).count();
        if total == 0 {
            out.push_str("no assertions\n");
        } else {
            writeln!(out, "{} of {} assertions passed", total - failed, total).unwrap();
        }
        out
    }
}
