//! Category-level reference counts.
//!
//! [`TransactionMatrix`] holds `c_ik`, the (possibly fractional) number of
//! references from publications in category `i` to works in category `k`,
//! together with the per-category publication counts `a_i` and shares `P_i`.
//! The diagonal keeps self-citations.
//!
//! Multi-assigned journals are handled by [`CountingMode`]: under fractional
//! counting a reference from a publication in a journal with `m` categories
//! to a journal with `m'` categories adds `1/(m·m')` to each of the `m·m'`
//! cells, so every reference carries unit mass in total. Full counting adds
//! `1` to each cell.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{CategoryId, Corpus, RefTarget};
use crate::error::{Error, Result};
use crate::value::{format_f64, Undefined};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountingMode {
    /// Split each reference (and each publication) evenly over the journal's
    /// categories.
    #[default]
    Fractional,
    /// Count each reference (and each publication) once per category.
    Full,
}

impl CountingMode {
    /// Weight given to each of `m` categories of one journal.
    pub fn share(self, m: usize) -> f64 {
        match self {
            CountingMode::Fractional => 1.0 / m as f64,
            CountingMode::Full => 1.0,
        }
    }
}

/// Sparse category×category reference counts plus publication counts.
#[derive(Debug, Clone, PartialEq)]
pub struct TransactionMatrix {
    categories: Vec<CategoryId>,
    /// Row `i` holds `(k, c_ik)` for every nonzero entry, sorted by `k`.
    rows: Vec<Vec<(usize, f64)>>,
    pubs: Vec<f64>,
    shares: Vec<f64>,
    counting: CountingMode,
}

impl TransactionMatrix {
    pub fn build(corpus: &Corpus, counting: CountingMode) -> Self {
        let n = corpus.n_categories();
        let mut acc: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
        let mut pubs = vec![0.0; n];

        for p in 0..corpus.publications().len() {
            let citing = corpus.journal_categories(corpus.publication_journal(p));
            let citing_share = counting.share(citing.len());
            for &c in citing {
                pubs[c] += citing_share;
            }
            for &target in corpus.references(p) {
                let cited = corpus.journal_categories(corpus.target_journal(target));
                let w = citing_share * counting.share(cited.len());
                for &c in citing {
                    let row = &mut acc[c];
                    for &k in cited {
                        *row.entry(k).or_insert(0.0) += w;
                    }
                }
            }
        }

        let categories = corpus.categories().iter().map(|c| c.id.clone()).collect();
        let rows = acc.into_iter().map(|r| r.into_iter().collect()).collect();
        Self::assemble(categories, rows, pubs, counting)
    }

    /// Build from a dense count matrix. Zero entries are dropped.
    pub fn from_dense(
        categories: Vec<CategoryId>,
        counts: &[Vec<f64>],
        pubs: Vec<f64>,
        counting: CountingMode,
    ) -> Result<Self> {
        let n = categories.len();
        if counts.len() != n || pubs.len() != n || counts.iter().any(|r| r.len() != n) {
            return Err(Error::Invariant(format!(
                "dense matrix must be {n}x{n} with {n} publication counts"
            )));
        }
        let bad = counts
            .iter()
            .flatten()
            .chain(&pubs)
            .any(|v| !v.is_finite() || *v < 0.0);
        if bad {
            return Err(Error::Invariant(
                "counts must be finite and non-negative".into(),
            ));
        }
        let rows = counts
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v > 0.0)
                    .map(|(k, &v)| (k, v))
                    .collect()
            })
            .collect();
        Ok(Self::assemble(categories, rows, pubs, counting))
    }

    fn assemble(
        categories: Vec<CategoryId>,
        rows: Vec<Vec<(usize, f64)>>,
        pubs: Vec<f64>,
        counting: CountingMode,
    ) -> Self {
        let total: f64 = pubs.iter().sum();
        let shares = if total > 0.0 {
            pubs.iter().map(|a| a / total).collect()
        } else {
            vec![0.0; pubs.len()]
        };
        TransactionMatrix {
            categories,
            rows,
            pubs,
            shares,
            counting,
        }
    }

    pub fn n(&self) -> usize {
        self.categories.len()
    }

    pub fn categories(&self) -> &[CategoryId] {
        &self.categories
    }

    pub fn counting(&self) -> CountingMode {
        self.counting
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.categories.iter().position(|c| c.as_str() == id)
    }

    /// Nonzero `(k, c_ik)` entries of row `i`, sorted by `k`.
    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        let row = &self.rows[i];
        row.binary_search_by_key(&k, |&(col, _)| col)
            .map(|pos| row[pos].1)
            .unwrap_or(0.0)
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.rows[i].iter().map(|&(_, v)| v).sum()
    }

    /// `Σ_i c_ik` for every `k`, accumulated in row order.
    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n()];
        for row in &self.rows {
            for &(k, v) in row {
                sums[k] += v;
            }
        }
        sums
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().flatten().map(|&(_, v)| v).sum()
    }

    /// Publication counts `a_i`.
    pub fn publication_counts(&self) -> &[f64] {
        &self.pubs
    }

    /// Publication shares `P_i = a_i / Σ_j a_j`.
    pub fn publication_shares(&self) -> &[f64] {
        &self.shares
    }

    pub fn dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0.0; n];
                for &(k, v) in row {
                    dense[k] = v;
                }
                dense
            })
            .collect()
    }

    /// Nonzero entries of `p_i·`, sorted by category.
    pub fn row_distribution(&self, i: usize) -> Result<Vec<(usize, f64)>, Undefined> {
        let sum = self.row_sum(i);
        if sum <= 0.0 {
            return Err(Undefined::ZeroRow);
        }
        Ok(self.rows[i].iter().map(|&(k, v)| (k, v / sum)).collect())
    }

    /// Dense probability vector `p_ik = c_ik / Σ_j c_ij`.
    pub fn row_proportions(&self, i: usize) -> Result<Vec<f64>, Undefined> {
        let sparse = self.row_distribution(i)?;
        let mut dense = vec![0.0; self.n()];
        for (k, p) in sparse {
            dense[k] = p;
        }
        Ok(dense)
    }

    /// Every count multiplied by `factor` (publication counts unchanged).
    pub fn scaled(&self, factor: f64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&(k, v)| (k, v * factor)).collect())
            .collect();
        Self::assemble(
            self.categories.clone(),
            rows,
            self.pubs.clone(),
            self.counting,
        )
    }

    /// Sparse triplet export: `row_category,col_category,value`.
    pub fn write_triplets(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["row_category", "col_category", "value"])?;
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, v) in row {
                w.write_record([
                    self.categories[i].as_str(),
                    self.categories[k].as_str(),
                    &format_f64(v),
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io(path, e))?;
        Ok(())
    }
}

/// Reference distribution `q_k` of a single publication.
#[derive(Debug, Clone, PartialEq)]
pub struct PublicationProfile {
    /// `(category index, q_k)`, sorted by category; sums to one.
    pub proportions: Vec<(usize, f64)>,
    /// Total mass the proportions were normalised by (the reference count
    /// under fractional counting).
    pub mass: f64,
}

impl PublicationProfile {
    pub fn dense(&self, n: usize) -> Vec<f64> {
        let mut q = vec![0.0; n];
        for &(k, v) in &self.proportions {
            q[k] = v;
        }
        q
    }
}

/// Profile of publication index `p`; `None` when it has no references.
pub fn profile_of(corpus: &Corpus, p: usize, counting: CountingMode) -> Option<PublicationProfile> {
    let refs = corpus.references(p);
    if refs.is_empty() {
        return None;
    }
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    for &target in refs {
        let cited = corpus.journal_categories(corpus.target_journal(target));
        let w = counting.share(cited.len());
        for &k in cited {
            *acc.entry(k).or_insert(0.0) += w;
        }
    }
    let mass: f64 = acc.values().sum();
    Some(PublicationProfile {
        proportions: acc.into_iter().map(|(k, v)| (k, v / mass)).collect(),
        mass,
    })
}

pub fn publication_profile(
    corpus: &Corpus,
    publication: &str,
    counting: CountingMode,
) -> Result<Option<PublicationProfile>> {
    let p = corpus
        .publication_idx(publication)
        .ok_or_else(|| Error::UnknownPublication(publication.to_owned()))?;
    Ok(profile_of(corpus, p, counting))
}

/// Symmetric link counts `c^i_jk` among the works cited by one category.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoherenceLinkCounts {
    /// Unordered category pairs `(j, k)` with `j <= k`.
    pairs: BTreeMap<(usize, usize), f64>,
    /// Number of distinct linked work pairs found.
    pub linked_pairs: usize,
    /// Size of the distinct cited-work set.
    pub cited_works: usize,
}

impl CoherenceLinkCounts {
    pub fn get(&self, j: usize, k: usize) -> f64 {
        let key = if j <= k { (j, k) } else { (k, j) };
        self.pairs.get(&key).copied().unwrap_or(0.0)
    }

    /// Nonzero unordered pairs `((j, k), count)` with `j <= k`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.pairs.iter().map(|(&key, &v)| (key, v))
    }

    pub fn add(&mut self, j: usize, k: usize, weight: f64) {
        let key = if j <= k { (j, k) } else { (k, j) };
        *self.pairs.entry(key).or_insert(0.0) += weight;
    }

    pub fn total(&self) -> f64 {
        self.pairs.values().sum()
    }
}

/// Link counts for category index `c`.
///
/// The cited set is the distinct internal works referenced by the
/// category's publications. Two works are linked when either cites the
/// other; each unordered linked pair is attributed to the categories of the
/// two works' journals under `counting`.
pub fn link_counts_for(corpus: &Corpus, c: usize, counting: CountingMode) -> CoherenceLinkCounts {
    let mut cited: BTreeSet<usize> = BTreeSet::new();
    for p in corpus.category_publications(c) {
        for &target in corpus.references(p) {
            if let RefTarget::Internal(q) = target {
                cited.insert(q);
            }
        }
    }

    let mut linked: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &u in &cited {
        for &target in corpus.references(u) {
            if let RefTarget::Internal(v) = target {
                if v != u && cited.contains(&v) {
                    linked.insert((u.min(v), u.max(v)));
                }
            }
        }
    }

    let mut counts = CoherenceLinkCounts {
        linked_pairs: linked.len(),
        cited_works: cited.len(),
        ..Default::default()
    };
    for &(u, v) in &linked {
        let cu = corpus.journal_categories(corpus.publication_journal(u));
        let cv = corpus.journal_categories(corpus.publication_journal(v));
        let w = counting.share(cu.len()) * counting.share(cv.len());
        for &j in cu {
            for &k in cv {
                counts.add(j, k, w);
            }
        }
    }
    counts
}

pub fn coherence_link_counts(
    corpus: &Corpus,
    category: &str,
    counting: CountingMode,
) -> Result<CoherenceLinkCounts> {
    let c = corpus.require_category(category)?;
    Ok(link_counts_for(corpus, c, counting))
}
