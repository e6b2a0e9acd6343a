//! The interdisciplinarity measures, grouped by what they depend on:
//!
//! * [`overlap`]: journal multi-assignment and simple reference shares;
//! * [`diversity`]: classic diversity/concentration indices of a reference
//!   distribution;
//! * [`distance`]: indices that weight categories by their (dis)similarity;
//! * [`network`]: positions in the category citation network.
//!
//! Every per-category measure returns a [`MeasureValue`](crate::MeasureValue):
//! either a finite number or the [`Undefined`](crate::Undefined) reason.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::similarity::{SimilarityKind, Transform};

pub mod distance;
pub mod diversity;
pub mod network;
pub mod overlap;

pub use distance::{AggregationLevel, RsVariant};

/// The 23 report columns, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    PMulti,
    POutside,
    Pro,
    DLinks,
    PrattComplement,
    SpecComplement,
    Simpson,
    Shannon,
    Brillouin,
    GiniComplement,
    Rs(RsVariant),
    Hill,
    Coherence,
    Betweenness,
    ClusterCoefficient,
    AverageSimilarity,
}

impl Measure {
    pub fn all() -> Vec<Measure> {
        let mut out = vec![
            Measure::PMulti,
            Measure::POutside,
            Measure::Pro,
            Measure::DLinks,
            Measure::PrattComplement,
            Measure::SpecComplement,
            Measure::Simpson,
            Measure::Shannon,
            Measure::Brillouin,
            Measure::GiniComplement,
        ];
        out.extend(RsVariant::all().into_iter().map(Measure::Rs));
        out.extend([
            Measure::Hill,
            Measure::Coherence,
            Measure::Betweenness,
            Measure::ClusterCoefficient,
            Measure::AverageSimilarity,
        ]);
        out
    }

    /// Column id used in report files and on the command line.
    pub fn id(self) -> String {
        match self {
            Measure::PMulti => "p_multi".into(),
            Measure::POutside => "p_outside".into(),
            Measure::Pro => "pro".into(),
            Measure::DLinks => "d_links".into(),
            Measure::PrattComplement => "one_minus_pratt".into(),
            Measure::SpecComplement => "one_minus_spec".into(),
            Measure::Simpson => "simpson".into(),
            Measure::Shannon => "shannon".into(),
            Measure::Brillouin => "brillouin".into(),
            Measure::GiniComplement => "one_minus_gini".into(),
            Measure::Rs(v) => v.id(),
            Measure::Hill => "hill".into(),
            Measure::Coherence => "coherence".into(),
            Measure::Betweenness => "bc".into(),
            Measure::ClusterCoefficient => "cc".into(),
            Measure::AverageSimilarity => "as".into(),
        }
    }

    /// Conventional display label, e.g. `RS_G[1-Sc]`.
    pub fn label(self) -> String {
        match self {
            Measure::PMulti => "p_multi".into(),
            Measure::POutside => "p_outside".into(),
            Measure::Pro => "pro".into(),
            Measure::DLinks => "d_links".into(),
            Measure::PrattComplement => "1-Pratt".into(),
            Measure::SpecComplement => "1-Spec".into(),
            Measure::Simpson => "Simpson".into(),
            Measure::Shannon => "Shannon".into(),
            Measure::Brillouin => "Brillouin".into(),
            Measure::GiniComplement => "1-Gini".into(),
            Measure::Rs(v) => v.label(),
            Measure::Hill => "Hill type".into(),
            Measure::Coherence => "coherence".into(),
            Measure::Betweenness => "BC".into(),
            Measure::ClusterCoefficient => "CC".into(),
            Measure::AverageSimilarity => "AS".into(),
        }
    }

    /// Whether the measure weights categories by a (dis)similarity matrix.
    pub fn uses_similarity(self) -> bool {
        matches!(
            self,
            Measure::Rs(_) | Measure::Hill | Measure::Coherence | Measure::AverageSimilarity
        )
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Measure {
    type Err = String;

    /// Accepts ids and display labels, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase();
        Measure::all()
            .into_iter()
            .find(|m| m.id() == wanted || m.label().to_ascii_lowercase() == wanted)
            .ok_or_else(|| format!("unknown measure {s:?}"))
    }
}

/// Neumaier-compensated sum.
pub(crate) fn accurate_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        carry += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
    }
    sum + carry
}

pub(crate) fn transform_tag(t: Transform) -> &'static str {
    match t {
        Transform::OneMinus => "1-",
        Transform::Reciprocal => "1/",
    }
}

pub(crate) fn kind_tag(k: SimilarityKind) -> &'static str {
    k.short()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_has_23_unique_columns() {
        let all = Measure::all();
        assert_eq!(all.len(), 23);
        let mut ids: Vec<String> = all.iter().map(|m| m.id()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 23);
    }

    #[test]
    fn parse_ids_and_labels() {
        for m in Measure::all() {
            assert_eq!(m.id().parse::<Measure>().unwrap(), m);
            assert_eq!(m.label().parse::<Measure>().unwrap(), m);
        }
        assert_eq!("RS_G[1-Sc]".parse::<Measure>().unwrap().id(), "rs_g_1m_sc");
        assert!("nope".parse::<Measure>().is_err());
    }
}
