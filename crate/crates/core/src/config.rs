use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::Linkage;
use crate::error::{Error, Result};
use crate::matrix::CountingMode;
use crate::measures::diversity::GiniSupport;
use crate::measures::network::{ClusterDirection, WeightTransform};
use crate::measures::Measure;
use crate::similarity::SimilarityKind;

/// Every tunable of a run. Missing fields take their defaults, so `{}` is a
/// valid configuration file.
///
/// ```
/// use interdisc::config::Config;
///
/// let config: Config = serde_json::from_str(r#"{"counting": "full", "bins": 10}"#).unwrap();
/// assert_eq!(config.bins, 10);
/// assert_ne!(config.hash(), Config::default().hash());
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub counting: CountingMode,
    /// Similarity behind the Hill-type measure.
    pub hill_similarity: SimilarityKind,
    /// Similarity behind coherence (always under `1 - s`).
    pub coherence_similarity: SimilarityKind,
    /// Similarity behind average similarity.
    pub as_similarity: SimilarityKind,
    pub bc_weight: WeightTransform,
    pub cc_direction: ClusterDirection,
    pub gini_support: GiniSupport,
    pub linkage: Linkage,
    pub bins: usize,
    /// Measure ids or labels to compute; all 23 when absent.
    pub measures: Option<Vec<String>>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            counting: CountingMode::Fractional,
            hill_similarity: SimilarityKind::Cosine,
            coherence_similarity: SimilarityKind::Cosine,
            as_similarity: SimilarityKind::Cosine,
            bc_weight: WeightTransform::Raw,
            cc_direction: ClusterDirection::Outgoing,
            gini_support: GiniSupport::Observed,
            linkage: Linkage::Average,
            bins: 20,
            measures: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: Config = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins == 0 {
            return Err(Error::Config("bins must be at least 1".into()));
        }
        for kind in [
            self.hill_similarity,
            self.coherence_similarity,
            self.as_similarity,
        ] {
            if kind == SimilarityKind::Custom {
                return Err(Error::Config("similarity must be cosine or ochiai".into()));
            }
        }
        self.selected_measures()?;
        Ok(())
    }

    /// The configured measures in canonical order, duplicates removed.
    pub fn selected_measures(&self) -> Result<Vec<Measure>> {
        let Some(names) = &self.measures else {
            return Ok(Measure::all());
        };
        let mut wanted = Vec::new();
        for name in names {
            let m: Measure = name.parse().map_err(|_| Error::UnknownColumn {
                name: name.clone(),
                available: Measure::all().iter().map(|m| m.id()).collect(),
            })?;
            wanted.push(m);
        }
        if wanted.is_empty() {
            return Err(Error::Config("empty measure list".into()));
        }
        Ok(Measure::all()
            .into_iter()
            .filter(|m| wanted.contains(m))
            .collect())
    }

    /// Canonical JSON: fields in declaration order, no whitespace.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}
