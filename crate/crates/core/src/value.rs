use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Why a measure has no value for a category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Undefined {
    /// The category issued no references (or its reference row sums to zero).
    ZeroRow,
    /// The category has no journals.
    NoJournals,
    /// The category has no publications (`a_i = 0`).
    NoPublications,
    /// None of the category's publications has a reference profile.
    NoProfiles,
    /// Too few observations for the quantity to exist.
    DegenerateN,
    /// The category was flagged as zero-activity while building a similarity
    /// matrix and is excluded downstream.
    FlaggedCategory,
}

/// A measure outcome: a finite value or the reason it does not exist.
pub type MeasureValue = Result<f64, Undefined>;

impl Undefined {
    pub const ALL: [Undefined; 6] = [
        Undefined::ZeroRow,
        Undefined::NoJournals,
        Undefined::NoPublications,
        Undefined::NoProfiles,
        Undefined::DegenerateN,
        Undefined::FlaggedCategory,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Undefined::ZeroRow => "zero_row",
            Undefined::NoJournals => "no_journals",
            Undefined::NoPublications => "no_publications",
            Undefined::NoProfiles => "no_profiles",
            Undefined::DegenerateN => "degenerate_n",
            Undefined::FlaggedCategory => "flagged_category",
        }
    }
}

impl fmt::Display for Undefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Undefined {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Undefined::ALL
            .into_iter()
            .find(|u| u.as_str() == s)
            .ok_or_else(|| format!("unknown undefined reason {s:?}"))
    }
}

/// Render a cell the way report files store it: the shortest round-trip
/// decimal, or `NA(reason)`.
pub fn format_cell(value: &MeasureValue) -> String {
    match value {
        Ok(v) => format_f64(*v),
        Err(reason) => format!("NA({reason})"),
    }
}

pub fn parse_cell(s: &str) -> Result<MeasureValue, String> {
    if let Some(inner) = s.strip_prefix("NA(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Err(inner.parse()?));
    }
    if s.is_empty() || s == "NA" {
        return Err("missing value".into());
    }
    let v: f64 = s.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
    if !v.is_finite() {
        return Err(format!("non-finite value {s:?}"));
    }
    Ok(Ok(v))
}

/// Shortest representation that parses back to the same bits.
pub fn format_f64(v: f64) -> String {
    // `-0` would break byte-identical comparisons between otherwise equal runs.
    if v == 0.0 {
        return "0".into();
    }
    format!("{v}")
}
