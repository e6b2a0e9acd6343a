//! Similarity-aware measures: Rao-Stirling in its eight variants, the
//! Hill-type effective number and coherence.
//!
//! Rao-Stirling is `Σ_{j,k} d_jk p_j p_k` over ordered pairs with the
//! diagonal included. Under `1 - s` the diagonal is zero; under `1/s` it is
//! one, so `RS[1/s] >= Σ p²` even for a single-category row.
//!
//! Since `Σ_{j,k} p_j p_k = 1`, the Hill-type measure and pooled RS on the
//! same similarity satisfy `hill = 1 / (1 - RS_G[1-s])` exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::matrix::{
    profile_of, CoherenceLinkCounts, CountingMode, PublicationProfile, TransactionMatrix,
};
use crate::measures::{kind_tag, transform_tag};
use crate::similarity::{DissimilarityMatrix, SimilarityKind, SimilarityMatrix, Transform};
use crate::value::{MeasureValue, Undefined};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationLevel {
    /// Mean of per-publication values (`RS_P`).
    PerPublication,
    /// One value on the category's pooled reference distribution (`RS_G`).
    Pooled,
}

/// One of the eight Rao-Stirling combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RsVariant {
    pub level: AggregationLevel,
    pub transform: Transform,
    pub kind: SimilarityKind,
}

impl RsVariant {
    /// The eight combinations, ordered by similarity, transform, then level
    /// (`P` before `G`).
    pub fn all() -> [RsVariant; 8] {
        let mut out = [RsVariant {
            level: AggregationLevel::PerPublication,
            transform: Transform::OneMinus,
            kind: SimilarityKind::Cosine,
        }; 8];
        let mut idx = 0;
        for kind in [SimilarityKind::Cosine, SimilarityKind::Ochiai] {
            for transform in [Transform::OneMinus, Transform::Reciprocal] {
                for level in [AggregationLevel::PerPublication, AggregationLevel::Pooled] {
                    out[idx] = RsVariant {
                        level,
                        transform,
                        kind,
                    };
                    idx += 1;
                }
            }
        }
        out
    }

    /// e.g. `rs_g_1m_sc`, `rs_p_inv_so`.
    pub fn id(self) -> String {
        let level = match self.level {
            AggregationLevel::PerPublication => "p",
            AggregationLevel::Pooled => "g",
        };
        let transform = match self.transform {
            Transform::OneMinus => "1m",
            Transform::Reciprocal => "inv",
        };
        format!(
            "rs_{level}_{transform}_{}",
            self.kind.short().to_ascii_lowercase()
        )
    }

    /// e.g. `RS_G[1-Sc]`.
    pub fn label(self) -> String {
        let level = match self.level {
            AggregationLevel::PerPublication => "P",
            AggregationLevel::Pooled => "G",
        };
        format!(
            "RS_{level}[{}{}]",
            transform_tag(self.transform),
            kind_tag(self.kind)
        )
    }
}

impl fmt::Display for RsVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `Σ_{j,k} d_jk p_j p_k` for a sparse distribution `(category, p)`.
pub fn rao_stirling_sparse(p: &[(usize, f64)], d: &DissimilarityMatrix) -> f64 {
    super::accurate_sum(p.iter().flat_map(|&(j, pj)| {
        let row = &d.values()[j];
        p.iter().map(move |&(k, pk)| row[k] * pj * pk)
    }))
}

/// Rao-Stirling diversity of a dense probability vector.
pub fn rao_stirling(p: &[f64], d: &DissimilarityMatrix) -> f64 {
    let sparse: Vec<(usize, f64)> = p
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(k, &v)| (k, v))
        .collect();
    rao_stirling_sparse(&sparse, d)
}

/// `RS_G`: Rao-Stirling on the category's pooled reference distribution.
pub fn rs_pooled(tm: &TransactionMatrix, i: usize, d: &DissimilarityMatrix) -> MeasureValue {
    let p = tm.row_distribution(i)?;
    Ok(rao_stirling_sparse(&p, d))
}

/// `RS_P` together with how many publications entered the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerPublicationRs {
    pub value: MeasureValue,
    /// Publications with a reference profile.
    pub included: usize,
    /// Publications without references, left out of the mean.
    pub excluded: usize,
}

/// `RS_P` with profiles looked up in a precomputed table indexed by
/// publication.
///
/// Each publication enters with its membership weight (`1/m` for a journal
/// in `m` categories under fractional counting, else `1`), so the mean runs
/// over the same publication mass as `a_i`.
pub fn rs_per_publication_cached(
    corpus: &Corpus,
    c: usize,
    d: &DissimilarityMatrix,
    counting: CountingMode,
    profiles: &[Option<PublicationProfile>],
) -> PerPublicationRs {
    let mut weighted = 0.0;
    let mut mass = 0.0;
    let mut included = 0;
    let mut excluded = 0;
    for p in corpus.category_publications(c) {
        match &profiles[p] {
            Some(profile) => {
                let w = counting.share(
                    corpus
                        .journal_categories(corpus.publication_journal(p))
                        .len(),
                );
                weighted += w * rao_stirling_sparse(&profile.proportions, d);
                mass += w;
                included += 1;
            }
            None => excluded += 1,
        }
    }
    let value = if included == 0 {
        Err(Undefined::NoProfiles)
    } else {
        Ok(weighted / mass)
    };
    PerPublicationRs {
        value,
        included,
        excluded,
    }
}

/// `RS_P`: mean Rao-Stirling of the category's publications.
pub fn rs_per_publication(
    corpus: &Corpus,
    c: usize,
    d: &DissimilarityMatrix,
    counting: CountingMode,
) -> PerPublicationRs {
    let profiles = all_profiles(corpus, counting);
    rs_per_publication_cached(corpus, c, d, counting, &profiles)
}

/// Reference profile of every publication, indexed like the corpus.
pub fn all_profiles(corpus: &Corpus, counting: CountingMode) -> Vec<Option<PublicationProfile>> {
    (0..corpus.publications().len())
        .map(|p| profile_of(corpus, p, counting))
        .collect()
}

/// `1 / Σ_{j,k} s_jk p_j p_k`.
pub fn hill_type(tm: &TransactionMatrix, i: usize, s: &SimilarityMatrix) -> MeasureValue {
    let p = tm.row_distribution(i)?;
    let mut denom = 0.0;
    for &(j, pj) in &p {
        for &(k, pk) in &p {
            denom += s.get(j, k) * pj * pk;
        }
    }
    if denom <= 0.0 {
        return Err(Undefined::DegenerateN);
    }
    Ok(1.0 / denom)
}

/// `Σ_{j<k} c^i_jk d_jk` over unordered category pairs. Only meaningful
/// with the `1 - s` transform; the value is a raw sum and grows with the
/// number of links.
pub fn coherence(links: &CoherenceLinkCounts, d: &DissimilarityMatrix) -> Result<f64> {
    if d.transform() != Transform::OneMinus {
        return Err(Error::Config(
            "coherence requires the 1 - s transform".into(),
        ));
    }
    Ok(links
        .iter()
        .filter(|&((j, k), _)| j != k)
        .map(|((j, k), count)| count * d.get(j, k))
        .sum())
}
