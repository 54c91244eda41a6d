//! Deterministic check records and suite reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::{Error, Result};

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct DimStat {
    pub total: usize,
    pub max: usize,
}

/// One named check aggregated over its instances.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The statement being checked.
    pub claim: String,
    pub instances: usize,
    pub failures: usize,
    pub passed: bool,
    pub dims: BTreeMap<String, DimStat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl CheckRecord {
    pub fn new(name: &str, claim: &str) -> Self {
        CheckRecord {
            name: name.into(),
            claim: claim.into(),
            instances: 0,
            failures: 0,
            passed: true,
            dims: BTreeMap::new(),
            witness: None,
            counterexample: None,
        }
    }

    /// Records one instance. The closure describes the instance and is only
    /// called for the first pass (as witness) and the first failure.
    pub fn record(&mut self, ok: bool, dims: &[(&str, usize)], describe: impl FnOnce() -> Value) {
        self.instances += 1;
        for &(k, v) in dims {
            let s = self.dims.entry(k.to_string()).or_default();
            s.total += v;
            s.max = s.max.max(v);
        }
        if ok {
            if self.witness.is_none() {
                self.witness = Some(describe());
            }
        } else {
            self.failures += 1;
            self.passed = false;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    /// Records the outcome of a computation that may fail. Verification and
    /// internal errors count as failures; input and precondition errors abort.
    pub fn record_result(
        &mut self,
        outcome: Result<(bool, Vec<(&'static str, usize)>)>,
        describe: impl FnOnce() -> Value,
    ) -> Result<()> {
        match outcome {
            Ok((ok, dims)) => {
                self.record(ok, &dims, describe);
                Ok(())
            }
            Err(e @ (Error::Input(_) | Error::Precondition(_) | Error::Io(_))) => Err(e),
            Err(e) => {
                let msg = e.to_string();
                self.record(false, &[], move || {
                    let mut v = describe();
                    if let Value::Object(m) = &mut v {
                        m.insert("error".into(), Value::String(msg));
                    }
                    v
                });
                Ok(())
            }
        }
    }

    /// A check that passes vacuously with no instances.
    pub fn is_vacuous(&self) -> bool {
        self.instances == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub algebra: String,
    pub field_char: u32,
    pub seed: u64,
    pub corpus_size: usize,
    pub gldim_cap: usize,
    pub subcategory: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} on {} (p = {}, seed {}, corpus {}, subcategory {})\n",
            self.suite, self.algebra, self.field_char, self.seed, self.corpus_size, self.subcategory
        );
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "  {status} {:<36} {:>4} instances, {} failures: {}\n",
                c.name, c.instances, c.failures, c.claim
            ));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("       counterexample: {ce}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(if self.passed { "result: pass\n" } else { "result: FAIL\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn records_first_failure_only() {
        let mut c = CheckRecord::new("c", "claim");
        c.record(true, &[("a", 2)], || json!({"i": 0}));
        c.record(false, &[("a", 5)], || json!({"i": 1}));
        c.record(false, &[("a", 1)], || json!({"i": 2}));
        assert_eq!((c.instances, c.failures, c.passed), (3, 2, false));
        assert_eq!(c.counterexample, Some(json!({"i": 1})));
        assert_eq!(c.dims["a"], DimStat { total: 8, max: 5 });
    }

    #[test]
    fn internal_errors_become_failures() {
        let mut c = CheckRecord::new("c", "claim");
        c.record_result(Err(Error::Singular), || json!({"i": 0})).unwrap();
        assert!(!c.passed);
        assert_eq!(c.counterexample.as_ref().unwrap()["error"], json!("matrix is singular"));
        assert!(c.record_result(Err(Error::Precondition("x".into())), || json!({})).is_err());
    }
}
