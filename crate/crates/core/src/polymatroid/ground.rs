use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Subset of a ground set, encoded as a bitmask over label positions.
pub type Subset = usize;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 8;

/// A labeled finite ground set of at most [`MAX_GROUND`] elements.
///
/// Label `b` owns bit `b` of every [`Subset`]. Cloning is cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_GROUND {
            return Err(Error::InvalidGround(format!(
                "ground set must have 1..={MAX_GROUND} labels, got {}",
                labels.len()
            )));
        }
        for (a, la) in labels.iter().enumerate() {
            if la.is_empty() {
                return Err(Error::InvalidGround("empty label".into()));
            }
            if labels[..a].contains(la) {
                return Err(Error::InvalidGround(format!("duplicate label {la:?}")));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// The ground set `i, j, k, l` used by the four-variable constructions.
    pub fn ijkl() -> Self {
        Self::new(["i", "j", "k", "l"]).expect("static labels")
    }

    /// Ground set with single-character labels taken from `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, bit: usize) -> &str {
        &self.labels[bit]
    }

    /// Number of subsets, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.len()
    }

    pub fn full(&self) -> Subset {
        self.size() - 1
    }

    pub fn contains(&self, s: Subset) -> bool {
        s <= self.full()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn singleton(&self, label: &str) -> Result<Subset> {
        self.index_of(label)
            .map(|b| 1 << b)
            .ok_or_else(|| Error::Parse(format!("unknown label {label:?}")))
    }

    /// Subset made of the given labels.
    pub fn subset_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<Subset> {
        labels
            .into_iter()
            .try_fold(0, |acc, l| Ok(acc | self.singleton(l)?))
    }

    /// Canonical text form: labels of the subset concatenated in label order.
    /// The empty set renders as `""`.
    pub fn format_subset(&self, s: Subset) -> String {
        (0..self.len())
            .filter(|b| s >> b & 1 == 1)
            .map(|b| self.labels[b].as_str())
            .collect()
    }

    /// Parses the canonical text form. Multi-character labels are allowed as
    /// long as the decomposition is unique.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let mut found = Vec::new();
        self.parse_from(text, 0, 0, &mut found);
        match found.len() {
            1 => Ok(found[0]),
            0 => Err(Error::Parse(format!(
                "{text:?} is not a subset of {:?} written in label order",
                self.labels()
            ))),
            _ => Err(Error::Parse(format!("subset key {text:?} is ambiguous"))),
        }
    }

    fn parse_from(&self, rest: &str, next_bit: usize, acc: Subset, found: &mut Vec<Subset>) {
        if found.len() > 1 {
            return;
        }
        if rest.is_empty() {
            found.push(acc);
            return;
        }
        for b in next_bit..self.len() {
            if let Some(tail) = rest.strip_prefix(self.labels[b].as_str()) {
                self.parse_from(tail, b + 1, acc | 1 << b, found);
            }
        }
    }

    /// Ground set obtained by deleting the elements of `s`, in label order.
    pub fn without(&self, s: Subset) -> Result<GroundSet> {
        GroundSet::new(
            (0..self.len())
                .filter(|b| s >> b & 1 == 0)
                .map(|b| self.labels[b].clone()),
        )
    }

    /// Ground set with one more label appended at bit `n`.
    pub fn with_label(&self, label: &str) -> Result<GroundSet> {
        if self.index_of(label).is_some() {
            return Err(Error::InvalidGround(format!(
                "label {label:?} already present"
            )));
        }
        GroundSet::new(self.labels.iter().cloned().chain([label.to_string()]))
    }

    pub(crate) fn check_same(&self, other: &GroundSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                left: self.labels.to_vec(),
                right: other.labels.to_vec(),
            })
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// Iterates over the bit positions set in `s`.
pub fn bits(s: Subset) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b)
        }
    })
}

/// Iterates over all submasks of `s`, including `s` and `0`.
pub fn submasks(s: Subset) -> impl Iterator<Item = Subset> {
    let mut cur = Some(s);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 { None } else { Some((out - 1) & s) };
        Some(out)
    })
}
