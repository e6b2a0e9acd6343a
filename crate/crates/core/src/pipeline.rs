//! Corpus to [`MeasureReport`] in one call.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::MeasureReport;
use crate::config::Config;
use crate::corpus::{CategoryId, Corpus};
use crate::error::{Error, Result};
use crate::matrix::{link_counts_for, profile_of, CountingMode, TransactionMatrix};
use crate::measures::distance::{coherence, hill_type, rs_per_publication_cached, rs_pooled};
use crate::measures::diversity::{brillouin, brillouin_rounds, gini_complement, shannon, simpson};
use crate::measures::network::{
    average_similarity, betweenness, build_citation_graph, cluster_coefficient, WeightTransform,
    TIE_TOLERANCE,
};
use crate::measures::overlap::{
    d_links, p_multi, p_outside, pratt_complement, pro, spec_complement,
};
use crate::measures::{AggregationLevel, Measure};
use crate::similarity::{
    similarity, to_dissimilarity, DissimilarityMatrix, SimilarityKind, SimilarityMatrix, Transform,
};
use crate::value::{MeasureValue, Undefined};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityInfo {
    pub kind: SimilarityKind,
    /// Zero-activity categories.
    pub flagged: Vec<CategoryId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapInfo {
    pub kind: SimilarityKind,
    /// Value used for `1/0`; absent when nothing was capped.
    pub cap: Option<f64>,
    pub capped_pairs: usize,
    /// False when a cap was needed but no finite value existed; the
    /// dependent columns are then undefined.
    pub available: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetweennessInfo {
    pub weight_transform: WeightTransform,
    pub tie_tolerance_relative: f64,
    pub normalized: bool,
}

/// Everything needed to reproduce and interpret a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub config: Config,
    pub counting: CountingMode,
    pub categories: usize,
    pub journals: usize,
    pub publications: usize,
    pub references: usize,
    pub measures: Vec<String>,
    pub labels: Vec<String>,
    pub similarities: Vec<SimilarityInfo>,
    pub reciprocal_caps: Vec<CapInfo>,
    /// Categories whose fractional counts were rounded for Brillouin.
    pub brillouin_rounded: Vec<CategoryId>,
    /// Publications without references left out of `RS_P`, per category.
    pub rs_p_excluded_publications: BTreeMap<CategoryId, usize>,
    /// Categories with `a_j = 0` skipped in the cluster coefficient.
    pub cc_skipped: BTreeMap<CategoryId, usize>,
    pub betweenness: Option<BetweennessInfo>,
    pub caveats: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub report: MeasureReport,
    pub metadata: ReportMetadata,
}

impl ReportBundle {
    pub fn metadata_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.metadata).expect("metadata serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, csv_path: &Path, meta_path: &Path) -> Result<()> {
        self.report.write_csv(csv_path)?;
        std::fs::write(meta_path, self.metadata_json()).map_err(|e| Error::io(meta_path, e))
    }
}

const CAVEATS: [&str; 6] = [
    "BC is an unnormalised sum over ordered pairs and can scale with category size",
    "coherence is a raw weighted link sum and scales with category size",
    "RS under 1/s includes the diagonal term sum p_j^2 (d_jj = 1)",
    "AS is read as sum over j != i of P_j s_ij",
    "1-Spec and Simpson are algebraically identical (1 - sum p^2)",
    "reference-based measures are undefined (zero_row) for categories without references",
];

fn per_category<F>(n: usize, f: F) -> Vec<MeasureValue>
where
    F: Fn(usize) -> MeasureValue + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Measures read off journal assignments rather than references.
fn journal_based(m: Measure) -> bool {
    matches!(m, Measure::PMulti | Measure::POutside | Measure::DLinks)
}

pub fn compute_measures(corpus: &Corpus, config: &Config) -> Result<ReportBundle> {
    config.validate()?;
    let measures = config.selected_measures()?;
    let counting = config.counting;
    let tm = TransactionMatrix::build(corpus, counting);
    let n = tm.n();

    let mut kinds = BTreeSet::new();
    let mut dissim_keys = BTreeSet::new();
    for &m in &measures {
        match m {
            Measure::Rs(v) => {
                kinds.insert(v.kind);
                dissim_keys.insert((v.kind, v.transform));
            }
            Measure::Hill => {
                kinds.insert(config.hill_similarity);
            }
            Measure::Coherence => {
                kinds.insert(config.coherence_similarity);
                dissim_keys.insert((config.coherence_similarity, Transform::OneMinus));
            }
            Measure::AverageSimilarity => {
                kinds.insert(config.as_similarity);
            }
            _ => {}
        }
    }
    let sims: BTreeMap<SimilarityKind, SimilarityMatrix> = kinds
        .iter()
        .map(|&k| Ok((k, similarity(&tm, k)?)))
        .collect::<Result<_>>()?;
    let mut dissims: BTreeMap<(SimilarityKind, Transform), Option<DissimilarityMatrix>> =
        BTreeMap::new();
    let mut reciprocal_caps = Vec::new();
    for &(k, t) in &dissim_keys {
        let d = match to_dissimilarity(&sims[&k], t) {
            Ok(d) => Some(d),
            Err(Error::NoFiniteCap) => None,
            Err(e) => return Err(e),
        };
        if t == Transform::Reciprocal {
            reciprocal_caps.push(CapInfo {
                kind: k,
                cap: d.as_ref().and_then(|d| d.cap()),
                capped_pairs: d.as_ref().map_or(0, |d| d.capped_pairs()),
                available: d.is_some(),
            });
        }
        dissims.insert((k, t), d);
    }

    let needs_profiles = measures
        .iter()
        .any(|m| matches!(m, Measure::Rs(v) if v.level == AggregationLevel::PerPublication));
    let profiles = if needs_profiles {
        (0..corpus.publications().len())
            .into_par_iter()
            .map(|p| profile_of(corpus, p, counting))
            .collect()
    } else {
        Vec::new()
    };

    let mut rs_p_excluded = BTreeMap::new();
    let mut cc_skipped = BTreeMap::new();
    let mut bc_info = None;
    let mut columns = Vec::with_capacity(measures.len());
    for &m in &measures {
        let column = match m {
            Measure::PMulti => per_category(n, |i| p_multi(corpus, i)),
            Measure::POutside => per_category(n, |i| p_outside(corpus, i)),
            Measure::Pro => per_category(n, |i| pro(&tm, i)),
            Measure::DLinks => per_category(n, |i| d_links(corpus, i)),
            Measure::PrattComplement => per_category(n, |i| pratt_complement(&tm, i)),
            Measure::SpecComplement => per_category(n, |i| spec_complement(&tm, i)),
            Measure::Simpson => per_category(n, |i| simpson(&tm, i)),
            Measure::Shannon => per_category(n, |i| shannon(&tm, i)),
            Measure::Brillouin => per_category(n, |i| brillouin(&tm, i)),
            Measure::GiniComplement => {
                per_category(n, |i| gini_complement(&tm, i, config.gini_support))
            }
            Measure::Rs(v) => match &dissims[&(v.kind, v.transform)] {
                None => vec![Err(Undefined::DegenerateN); n],
                Some(d) => match v.level {
                    AggregationLevel::Pooled => per_category(n, |i| rs_pooled(&tm, i, d)),
                    AggregationLevel::PerPublication => {
                        let results: Vec<_> = (0..n)
                            .into_par_iter()
                            .map(|i| rs_per_publication_cached(corpus, i, d, counting, &profiles))
                            .collect();
                        for (i, r) in results.iter().enumerate() {
                            if r.excluded > 0 {
                                rs_p_excluded.insert(tm.categories()[i].clone(), r.excluded);
                            }
                        }
                        results.into_iter().map(|r| r.value).collect()
                    }
                },
            },
            Measure::Hill => {
                let s = &sims[&config.hill_similarity];
                per_category(n, |i| hill_type(&tm, i, s))
            }
            Measure::Coherence => {
                let d = dissims[&(config.coherence_similarity, Transform::OneMinus)]
                    .as_ref()
                    .expect("1 - s always exists");
                (0..n)
                    .into_par_iter()
                    .map(|i| coherence(&link_counts_for(corpus, i, counting), d).map(Ok))
                    .collect::<Result<Vec<_>>>()?
            }
            Measure::Betweenness => {
                let graph = build_citation_graph(&tm, config.bc_weight);
                bc_info = Some(BetweennessInfo {
                    weight_transform: config.bc_weight,
                    tie_tolerance_relative: TIE_TOLERANCE,
                    normalized: false,
                });
                betweenness(&graph).into_iter().map(Ok).collect()
            }
            Measure::ClusterCoefficient => {
                let results: Vec<_> = (0..n)
                    .into_par_iter()
                    .map(|i| cluster_coefficient(&tm, i, config.cc_direction))
                    .collect();
                for (i, r) in results.iter().enumerate() {
                    if r.skipped > 0 && r.value.is_ok() {
                        cc_skipped.insert(tm.categories()[i].clone(), r.skipped);
                    }
                }
                results.into_iter().map(|r| r.value).collect()
            }
            Measure::AverageSimilarity => {
                let s = &sims[&config.as_similarity];
                per_category(n, |i| average_similarity(&tm, s, i))
            }
        };
        let column: Vec<MeasureValue> = if journal_based(m) {
            column
        } else {
            column
                .into_iter()
                .enumerate()
                .map(|(i, v)| match v {
                    Ok(_) if tm.row_sum(i) <= 0.0 => Err(Undefined::ZeroRow),
                    other => other,
                })
                .collect()
        };
        columns.push((m.id(), column));
    }

    let brillouin_rounded = if measures.contains(&Measure::Brillouin) {
        (0..n)
            .filter(|&i| brillouin_rounds(&tm, i))
            .map(|i| tm.categories()[i].clone())
            .collect()
    } else {
        Vec::new()
    };
    let similarities = sims
        .iter()
        .map(|(&kind, s)| SimilarityInfo {
            kind,
            flagged: s
                .flagged()
                .iter()
                .map(|&i| tm.categories()[i].clone())
                .collect(),
        })
        .collect();

    let config_hash = config.hash();
    let report =
        MeasureReport::from_columns(tm.categories().to_vec(), columns, config_hash.clone())?;
    let metadata = ReportMetadata {
        tool: "interdisc",
        version: VERSION,
        config_hash,
        config: config.clone(),
        counting,
        categories: n,
        journals: corpus.journals().len(),
        publications: corpus.publications().len(),
        references: corpus.total_references(),
        measures: measures.iter().map(|m| m.id()).collect(),
        labels: measures.iter().map(|m| m.label()).collect(),
        similarities,
        reciprocal_caps,
        brillouin_rounded,
        rs_p_excluded_publications: rs_p_excluded,
        cc_skipped,
        betweenness: bc_info,
        caveats: CAVEATS.to_vec(),
    };
    Ok(ReportBundle { report, metadata })
}
