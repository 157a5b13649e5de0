use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::condition::RelaxationSpec;
use crate::metric::SpaceTag;
use crate::ring::{serialize_biguint, Rational};

use super::certificate::CaseCertificate;
use super::Example;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Subject {
    Claim1,
    Claim2,
    Lemma1,
    Lemma2,
    Theorem,
    Scan,
    Classify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(u64),
    Text(String),
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(v as u64)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Text(v) => f.write_str(v),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// A pair of exponents `(m, n)`; for lemma grids these are `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub m: u64,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub max_exp: u64,
    pub pairs: u64,
    /// `None` when some pair had an infinite ratio, or for lemma grids.
    pub sup_ratio_sq: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_biguint")]
    pub min_value_sq: Option<BigUint>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub infinite: bool,
    pub witness: Option<Witness>,
}

fn opt_biguint<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_biguint(v, s),
        None => s.serialize_none(),
    }
}

/// One row of a grid scan, used for CSV output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRow {
    pub m: u64,
    pub n: u64,
    pub lhs_sq: BigUint,
    pub rhs_sq: BigUint,
    pub argmax: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub m: Option<u64>,
    pub n: Option<u64>,
    #[serde(serialize_with = "opt_biguint")]
    pub lhs_sq: Option<BigUint>,
    #[serde(serialize_with = "opt_biguint")]
    pub rhs_sq: Option<BigUint>,
}

/// Per-relaxation outcome inside a theorem sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DispatchRecord {
    pub spec: RelaxationSpec,
    pub term: String,
    pub example: Example,
    pub status: Status,
    pub sup_ratio_sq: Option<Rational>,
}

/// Result of scanning a space for fixed points of `T` on an exponent range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointScan {
    pub space: SpaceTag,
    pub max_exp: u64,
    pub fixed_points: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: Subject,
    pub params: Params,
    pub status: Status,
    pub certificates: Vec<CaseCertificate>,
    pub grid: Option<GridSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Example>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dispatch: Vec<DispatchRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fixed_point_scans: Vec<FixedPointScan>,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub rows: Vec<GridRow>,
}

impl VerificationReport {
    pub fn new(subject: Subject) -> Self {
        VerificationReport {
            subject,
            params: Params::new(),
            status: Status::Pass,
            certificates: Vec::new(),
            grid: None,
            classification: None,
            dispatch: Vec::new(),
            fixed_point_scans: Vec::new(),
            failures: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Sets `status` from failures and certificate outcomes plus any extra
    /// condition the caller requires.
    pub fn finalize(mut self, extra_ok: bool) -> Self {
        let ok = extra_ok && self.failures.is_empty() && self.certificates.iter().all(|c| c.verified);
        self.status = Status::from_ok(ok);
        self
    }

    pub fn certificate(&self, case_id: &str) -> Option<&CaseCertificate> {
        self.certificates.iter().find(|c| c.case_id == case_id)
    }
}
