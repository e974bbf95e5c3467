use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::Value;

/// Outcome of one named check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Failed,
    SkippedBudget,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Verified
        } else {
            Verdict::Failed
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Failed => "failed",
            Verdict::SkippedBudget => "skipped(budget)",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Machine-readable report; keys are sorted so the JSON is byte-stable.
#[derive(Clone, Debug, Serialize)]
pub struct KunzReport {
    pub schema_version: u32,
    pub input: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub timings_ms: BTreeMap<String, u64>,
    #[serde(skip)]
    record_timings: bool,
}

pub const SCHEMA_VERSION: u32 = 1;

impl KunzReport {
    pub fn new(record_timings: bool) -> Self {
        KunzReport {
            schema_version: SCHEMA_VERSION,
            input: BTreeMap::new(),
            results: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
            record_timings,
        }
    }

    pub fn input<V: Serialize>(&mut self, key: &str, value: V) {
        self.input.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn result<V: Serialize>(&mut self, key: &str, value: V) {
        self.results.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn verdict(&mut self, key: &str, ok: bool) {
        self.verdicts.insert(key.into(), Verdict::from_bool(ok));
    }

    pub fn skipped(&mut self, key: &str) {
        self.verdicts.insert(key.into(), Verdict::SkippedBudget);
    }

    /// Records the time since `start` when timings are enabled; off by default so that
    /// reports stay byte-identical between runs.
    pub fn time(&mut self, key: &str, start: Instant) {
        if self.record_timings {
            self.timings_ms.insert(key.into(), start.elapsed().as_millis() as u64);
        }
    }

    /// Merges another report's results, verdicts and timings under `prefix.`.
    pub fn merge(&mut self, prefix: &str, other: KunzReport) {
        for (k, v) in other.results {
            self.results.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.verdicts {
            self.verdicts.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.timings_ms {
            self.timings_ms.insert(format!("{prefix}.{k}"), v);
        }
    }

    pub fn all_verified(&self) -> bool {
        self.verdicts.values().all(|v| *v == Verdict::Verified)
    }

    pub fn any_failed(&self) -> bool {
        self.verdicts.values().any(|v| *v == Verdict::Failed)
    }

    pub fn any_skipped(&self) -> bool {
        self.verdicts.values().any(|v| *v == Verdict::SkippedBudget)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
