//! Recurrence documents: a small `key = value` text format or the equivalent
//! JSON. Coefficients are positional `slope offset` pairs, the `k`-th one
//! multiplying `sₙ₋ₖ` as `slope·n + offset`.
//!
//! ```text
//! # Motzkin numbers: (n+2)mₙ − (2n+1)mₙ₋₁ − (3n−3)mₙ₋₂ = 0
//! schema_version = 1
//! label = motzkin
//! order = 2
//! c0 = 1 2
//! c1 = -2 -1
//! c2 = -3 3
//! initial = 1 1
//! ```

use precur::arith::{fmt_rational, parse_rational, Rational};
use precur::recurrence::{InitialPair, LinearCoeff, Order1Rec, Order2Rec, RecurrenceError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("`{0}` is not an exact rational (use p or p/q)")]
    Rational(String),
    #[error("unsupported schema_version {0}")]
    Schema(u32),
    #[error("order must be 1 or 2, got {0}")]
    Order(usize),
    #[error("expected {expected} coefficient pairs, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// The serialized form; every number is an exact rational string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub order: usize,
    pub coefficients: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recurrence {
    Order1(Order1Rec),
    Order2(Order2Rec),
}

fn rational(s: &str) -> Result<Rational, DocumentError> {
    parse_rational(s).ok_or_else(|| DocumentError::Rational(s.to_string()))
}

impl RecurrenceDocument {
    pub fn parse(input: &str) -> Result<Self, DocumentError> {
        let doc = if input.trim_start().starts_with('{') {
            serde_json::from_str(input).map_err(|e| DocumentError::Json(e.to_string()))?
        } else {
            Self::parse_text(input)?
        };
        doc.validate()?;
        Ok(doc)
    }

    fn parse_text(input: &str) -> Result<Self, DocumentError> {
        let mut schema_version = None;
        let mut label = None;
        let mut order = None;
        let mut coeffs: Vec<Option<[String; 2]>> = Vec::new();
        let mut initial = None;
        for (i, raw) in input.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| DocumentError::Syntax { line, message };
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (key, value) = text.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got `{text}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let words: Vec<String> = value.split_whitespace().map(str::to_string).collect();
            match key {
                "schema_version" => schema_version = Some(value.parse().map_err(|_| err(format!("bad schema_version `{value}`")))?),
                "label" => label = Some(value.to_string()),
                "order" => order = Some(value.parse().map_err(|_| err(format!("bad order `{value}`")))?),
                "initial" => initial = Some(words),
                k if k.starts_with('c') && k[1..].parse::<usize>().is_ok() => {
                    let idx: usize = k[1..].parse().unwrap();
                    let [slope, offset]: [String; 2] =
                        words.try_into().map_err(|_| err(format!("`{k}` needs exactly two values: slope offset")))?;
                    if coeffs.len() <= idx {
                        coeffs.resize(idx + 1, None);
                    }
                    if coeffs[idx].replace([slope, offset]).is_some() {
                        return Err(err(format!("duplicate key `{k}`")));
                    }
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let coefficients = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or(DocumentError::Syntax { line: 0, message: format!("missing c{i}") }))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            schema_version: schema_version.ok_or(DocumentError::Missing("schema_version"))?,
            label,
            order: order.ok_or(DocumentError::Missing("order"))?,
            coefficients,
            initial,
        })
    }

    fn validate(&self) -> Result<(), DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::Schema(self.schema_version));
        }
        if !(1..=2).contains(&self.order) {
            return Err(DocumentError::Order(self.order));
        }
        if self.coefficients.len() != self.order + 1 {
            return Err(DocumentError::CoefficientCount { expected: self.order + 1, got: self.coefficients.len() });
        }
        for [a, b] in &self.coefficients {
            rational(a)?;
            rational(b)?;
        }
        if let Some(init) = &self.initial {
            if init.len() != self.order {
                return Err(DocumentError::Syntax { line: 0, message: format!("initial needs {} values", self.order) });
            }
            for v in init {
                rational(v)?;
            }
        }
        Ok(())
    }

    pub fn linear_coeffs(&self) -> Result<Vec<LinearCoeff>, DocumentError> {
        self.coefficients.iter().map(|[a, b]| Ok(LinearCoeff::new(rational(a)?, rational(b)?))).collect()
    }

    pub fn recurrence(&self) -> Result<Recurrence, DocumentError> {
        let c = self.linear_coeffs()?;
        Ok(match self.order {
            1 => Recurrence::Order1(Order1Rec::normalize(&c[0], &c[1])?),
            _ => Recurrence::Order2(Order2Rec::normalize(&c[0], &c[1], &c[2])?),
        })
    }

    pub fn initial_values(&self) -> Result<Option<Vec<Rational>>, DocumentError> {
        self.initial.as_ref().map(|v| v.iter().map(|s| rational(s)).collect()).transpose()
    }

    pub fn initial_pair(&self) -> Result<Option<InitialPair>, DocumentError> {
        Ok(self.initial_values()?.filter(|v| v.len() == 2).map(|v| InitialPair::new(v[0].clone(), v[1].clone())))
    }

    /// Renders the text form; parsing it back yields an equal document.
    pub fn to_text(&self) -> String {
        let mut out = format!("schema_version = {}\n", self.schema_version);
        if let Some(l) = &self.label {
            out += &format!("label = {l}\n");
        }
        out += &format!("order = {}\n", self.order);
        for (i, [a, b]) in self.coefficients.iter().enumerate() {
            out += &format!("c{i} = {a} {b}\n");
        }
        if let Some(init) = &self.initial {
            out += &format!("initial = {}\n", init.join(" "));
        }
        out
    }
}

/// Formats an exact rational for reports.
pub fn r(x: &Rational) -> String {
    fmt_rational(x)
}
