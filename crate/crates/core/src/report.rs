//! Structured verification reports, serialized as JSON.

use serde::{Deserialize, Serialize};

use crate::arith::{QRatFn, ZPoly};

pub const SCHEMA_VERSION: u32 = 1;

/// `Pass`/`Fail` are assertions; `Zero`/`Nonzero` are measurements of
/// relations that are only conjectured or whose reading is uncertain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Zero,
    Nonzero,
}

impl Status {
    pub fn asserted(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn measured(zero: bool) -> Self {
        if zero {
            Status::Zero
        } else {
            Status::Nonzero
        }
    }

    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub lemma: String,
    pub h: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub status: Status,
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn new(lemma: impl Into<String>, h: usize, n: Option<usize>, status: Status, residual: String) -> Self {
        CheckReport {
            lemma: lemma.into(),
            h,
            n,
            status,
            residual,
            detail: None,
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub schema: u32,
    pub reports: Vec<CheckReport>,
}

impl ReportSet {
    pub fn new(reports: Vec<CheckReport>) -> Self {
        ReportSet {
            schema: SCHEMA_VERSION,
            reports,
        }
    }

    pub fn any_failure(&self) -> bool {
        self.reports.iter().any(|r| r.status.is_failure())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

const MAX_RESIDUAL_CHARS: usize = 400;

fn clip(s: String) -> String {
    if s.chars().count() <= MAX_RESIDUAL_CHARS {
        s
    } else {
        let head: String = s.chars().take(MAX_RESIDUAL_CHARS).collect();
        format!("{head}...")
    }
}

/// Factoring large residuals costs far more than computing them, so only
/// small ones are printed in factored form.
const FACTOR_DEGREE_LIMIT: usize = 24;

pub fn residual_ratfn(r: &QRatFn) -> String {
    let deg = r.num().degree().unwrap_or(0) + r.den().degree().unwrap_or(0);
    if deg <= FACTOR_DEGREE_LIMIT {
        clip(r.factored())
    } else {
        clip(r.to_string())
    }
}

pub fn residual_zpoly(r: &ZPoly) -> String {
    clip(r.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let set = ReportSet::new(vec![CheckReport::new("q_lemma_i", 3, None, Status::Pass, "0".into())]);
        let v: serde_json::Value = serde_json::from_str(&set.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["reports"][0]["status"], "pass");
        assert!(v["reports"][0].get("n").is_none());
        assert!(!set.any_failure());
    }
}
