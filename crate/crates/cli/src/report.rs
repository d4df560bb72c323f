//! JSON verdict reports. Every number is an exact rational string.

use serde::{Deserialize, Serialize};

use crate::document::RecurrenceDocument;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub b0: String,
    pub a1: String,
    pub b1: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub in_restricted_class: bool,
    pub b2_expected: String,
    pub b0_is_natural: bool,
    pub reasons: Vec<String>,
}

/// `"C1"`, `"C2"`, `"C3"`, `"Unsupported"` for order 2, a boolean
/// (globally bounded) for order 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerdictValue {
    Case(String),
    GloballyBounded(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub c: String,
    pub c_tilde: String,
    /// Coefficients of `C(x)`, constant term first.
    pub poly: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patch_exponent: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub alpha: String,
    pub beta: String,
    /// Coefficient of `ln(1 + αx)`.
    pub residue_alpha: String,
    /// Coefficient of `ln(1 + βx)`.
    pub residue_beta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralReport {
    pub n: usize,
    pub a1: String,
    pub a2: String,
    pub q: String,
    pub verdict: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<ResidueReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationReport {
    pub source: String,
    pub matrix: [[String; 2]; 2],
    pub det: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order2Certificates {
    pub branch: String,
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i1: Option<IntegralReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i2: Option<IntegralReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combination: Option<CombinationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_root_exponent: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergeomReport {
    pub alpha: String,
    pub beta: String,
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Algebraic,
    Transcendental,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnihilatorStatus {
    Found,
    NoneWithinBound,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeEntry {
    pub initial: Vec<String>,
    pub expected: Expectation,
    pub depth: usize,
    pub max_prime_seen: u64,
    pub any_large_cofactor: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_bad_index: Option<usize>,
    pub looks_almost_integral: bool,
    pub annihilator_status: AnnihilatorStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub note: String,
    pub prime_threshold: u64,
    pub entries: Vec<ProbeEntry>,
    pub disagreements: Vec<String>,
    pub inconclusive: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub schema_version: u32,
    pub input: RecurrenceDocument,
    pub normalized: Normalized,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassReport>,
    pub verdict: VerdictValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_pair: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_pair: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Order2Certificates>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypergeom: Option<HypergeomReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<ProbeSummary>,
}

impl VerdictReport {
    pub fn verdict_label(&self) -> String {
        match &self.verdict {
            VerdictValue::Case(c) => c.clone(),
            VerdictValue::GloballyBounded(b) => format!("order-1 {b}"),
        }
    }

    pub fn has_disagreement(&self) -> bool {
        self.probes.as_ref().is_some_and(|p| !p.disagreements.is_empty())
    }

    pub fn is_unsupported(&self) -> bool {
        self.verdict == VerdictValue::Case("Unsupported".into())
    }
}
