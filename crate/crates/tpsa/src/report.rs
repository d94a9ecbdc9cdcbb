//! Outcome records for theorem checks and counterexample searches.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and serialized, but no mathematical claim asserted.
    Reported,
    Error,
}

/// One sub-check line inside a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Outcome of a theorem check or counterexample search.  Fail and reported
/// statuses always carry at least one witness or computed object.  The
/// serialized form is a pure function of (fixture, check, params, seed);
/// wall-clock timing is kept out of it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub fixture: String,
    pub check_id: String,
    pub status: Status,
    pub items: Vec<CheckItem>,
    pub witnesses: Vec<serde_json::Value>,
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn new(fixture: &str, check_id: &str) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            fixture: fixture.to_string(),
            check_id: check_id.to_string(),
            status: Status::Pass,
            items: Vec::new(),
            witnesses: Vec::new(),
            params: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push_item(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.to_string(), status, detail: detail.into() });
        if status == Status::Fail {
            self.status = Status::Fail;
        } else if status == Status::Reported && self.status == Status::Pass {
            self.status = Status::Reported;
        }
    }

    pub fn pass(&mut self, name: &str, detail: impl Into<String>) {
        self.push_item(name, Status::Pass, detail);
    }

    pub fn fail(&mut self, name: &str, detail: impl Into<String>, witness: serde_json::Value) {
        self.push_item(name, Status::Fail, detail);
        self.witnesses.push(witness);
    }

    pub fn reported(&mut self, name: &str, detail: impl Into<String>, witness: serde_json::Value) {
        self.push_item(name, Status::Reported, detail);
        self.witnesses.push(witness);
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
