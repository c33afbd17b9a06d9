use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{CrossSectionHalfspace, LinearInequality};
use crate::error::{Error, Result};
use crate::frame::IngletonFrame;
use crate::polymatroid::GroundSet;

/// One record of an inequality file.
#[derive(Debug, Clone, PartialEq)]
pub enum BankEntry {
    Inequality(LinearInequality),
    Halfspace(CrossSectionHalfspace),
}

impl BankEntry {
    pub fn name(&self) -> &str {
        match self {
            BankEntry::Inequality(i) => i.name(),
            BankEntry::Halfspace(h) => &h.name,
        }
    }

    pub fn to_halfspace(&self, frame: &IngletonFrame) -> Result<CrossSectionHalfspace> {
        match self {
            BankEntry::Inequality(i) => i.to_halfspace(frame),
            BankEntry::Halfspace(h) => Ok(h.clone()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    name: String,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    coefficients: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    abcd: Option<[f64; 4]>,
    #[serde(default)]
    sense: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(Record),
    Many(Vec<Record>),
}

fn sign_of(sense: Option<&str>, name: &str) -> Result<f64> {
    match sense {
        None | Some(">=") => Ok(1.0),
        Some("<=") => Ok(-1.0),
        Some(other) => Err(Error::Parse(format!(
            "{name}: sense must be \">=\" or \"<=\", got {other:?}"
        ))),
    }
}

fn convert(rec: Record, ground: &GroundSet) -> Result<BankEntry> {
    let sign = sign_of(rec.sense.as_deref(), &rec.name)?;
    if let Some(labels) = &rec.labels {
        if labels.as_slice() != ground.labels() {
            return Err(Error::GroundMismatch {
                left: ground.labels().to_vec(),
                right: labels.clone(),
            });
        }
    }
    match (rec.coefficients, rec.abcd) {
        (Some(map), None) => {
            let terms = map
                .iter()
                .map(|(k, v)| Ok((ground.parse_subset(k)?, sign * v)))
                .collect::<Result<Vec<_>>>()?;
            Ok(BankEntry::Inequality(LinearInequality::from_terms(
                rec.name, ground, terms,
            )?))
        }
        (None, Some(abcd)) => Ok(BankEntry::Halfspace(CrossSectionHalfspace::new(
            rec.name,
            abcd.map(|v| sign * v),
        )?)),
        _ => Err(Error::Parse(format!(
            "{}: exactly one of \"coefficients\" and \"abcd\" is required",
            rec.name
        ))),
    }
}

/// Parses a single record or an array of records. `"<="` records are
/// negated so every entry reads `≥ 0`.
pub fn parse_bank(text: &str, ground: &GroundSet) -> Result<Vec<BankEntry>> {
    let records = match serde_json::from_str(text)? {
        OneOrMany::One(r) => vec![r],
        OneOrMany::Many(rs) => rs,
    };
    records.into_iter().map(|r| convert(r, ground)).collect()
}

pub fn load_bank(path: impl AsRef<Path>, ground: &GroundSet) -> Result<Vec<BankEntry>> {
    parse_bank(&std::fs::read_to_string(path)?, ground)
}

impl LinearInequality {
    /// `{"name", "labels", "coefficients": {subset: θ}}` with nonzero terms only.
    pub fn to_json_value(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self
            .terms()
            .map(|(s, c)| (self.ground().format_subset(s), json!(c)))
            .collect();
        json!({"name": self.name(), "labels": self.ground().labels(), "coefficients": coeffs})
    }
}

impl CrossSectionHalfspace {
    pub fn to_json_value(&self) -> Value {
        json!({"name": self.name, "abcd": self.abcd})
    }
}
