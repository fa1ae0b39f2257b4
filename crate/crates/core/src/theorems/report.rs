use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Nothing to compare; never counted as a pass.
    Vacuous,
    /// Recorded observation that does not gate the verdict.
    Info,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Vacuous => "vacuous",
            CheckStatus::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub check: String,
    pub status: CheckStatus,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
}

impl Evidence {
    pub fn new(check: impl Into<String>, status: CheckStatus) -> Self {
        Evidence {
            check: check.into(),
            status,
            details: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

/// Outcome of one theorem check; `pass` is the conjunction of the gating evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub input_digest: String,
    pub seed: u64,
    pub seeds: Vec<u64>,
    pub pass: bool,
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl VerificationReport {
    pub fn new(theorem: &str, input_digest: String, seed: u64) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            input_digest,
            seed,
            seeds: Vec::new(),
            pass: true,
            evidence: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn push(&mut self, e: Evidence) {
        if e.status == CheckStatus::Fail {
            self.pass = false;
        }
        self.evidence.push(e);
    }

    pub fn time(&mut self, key: &str, ms: u64) {
        self.timings_ms
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), ms);
    }

    pub fn evidence(&self, check: &str) -> Option<&Evidence> {
        self.evidence.iter().find(|e| e.check == check)
    }

    /// True when `pass` agrees with the recorded evidence.
    pub fn is_consistent(&self) -> bool {
        self.pass == self.evidence.iter().all(|e| e.status != CheckStatus::Fail)
    }

    /// Stable `key=value` lines.
    pub fn to_key_value(&self) -> String {
        let mut out = vec![
            format!("theorem={}", self.theorem),
            format!("input_digest={}", self.input_digest),
            format!("seed={}", self.seed),
            format!(
                "seeds={}",
                self.seeds
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            format!("pass={}", self.pass),
        ];
        for e in &self.evidence {
            out.push(format!("{}.status={}", e.check, e.status.as_str()));
            for (k, v) in &e.details {
                out.push(format!("{}.{}={}", e.check, k, v));
            }
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                out.push(format!("timing.{k}_ms={v}"));
            }
        }
        out.join("\n")
    }
}
