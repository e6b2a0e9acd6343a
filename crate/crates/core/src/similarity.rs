//! Category similarity matrices and their dissimilarity transforms.
//!
//! Two cosine variants are built from a [`TransactionMatrix`]:
//!
//! * vector cosine `S_C(i,j) = Σ_k c_ik c_jk / sqrt(Σ_k c_ik² · Σ_k c_jk²)`,
//!   comparing whole citing rows (diagonal entries included);
//! * Ochiai `S_O(i,j) = (c_ij + c_ji) / sqrt(m_i m_j)` with
//!   `m_i = Σ_k c_ik + Σ_k c_ki`, comparing mutual citation totals.
//!
//! Both set `s_ii = 1`. A category with no activity has undefined
//! similarities; it is flagged, its off-diagonal entries are zero and it is
//! reported rather than dropped.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::CategoryId;
use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::matrix::TransactionMatrix;
use crate::value::format_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityKind {
    /// Vector cosine over citing rows (`S_C`).
    Cosine,
    /// Ochiai index over mutual citation totals (`S_O`).
    Ochiai,
    /// Supplied directly by the caller.
    Custom,
}

impl SimilarityKind {
    pub fn short(self) -> &'static str {
        match self {
            SimilarityKind::Cosine => "Sc",
            SimilarityKind::Ochiai => "So",
            SimilarityKind::Custom => "S",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// `d = 1 - s`
    OneMinus,
    /// `d = 1 / s`, zero similarities capped at the largest finite value.
    Reciprocal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    kind: SimilarityKind,
    categories: Vec<CategoryId>,
    values: Vec<Vec<f64>>,
    flagged: Vec<usize>,
}

impl SimilarityMatrix {
    /// Check symmetry, range and unit diagonal.
    pub fn new(categories: Vec<CategoryId>, values: Vec<Vec<f64>>) -> Result<Self> {
        let n = categories.len();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::Invariant(format!(
                "similarity matrix must be {n}x{n}"
            )));
        }
        for i in 0..n {
            if values[i][i] != 1.0 {
                return Err(Error::Invariant(format!("s[{i}][{i}] must be 1")));
            }
            for j in 0..n {
                let s = values[i][j];
                if !(0.0..=1.0).contains(&s) || s != values[j][i] {
                    return Err(Error::Invariant(format!(
                        "similarity must be symmetric and in [0,1] (entry {i},{j})"
                    )));
                }
            }
        }
        Ok(SimilarityMatrix {
            kind: SimilarityKind::Custom,
            categories,
            values,
            flagged: Vec::new(),
        })
    }

    /// Every category maximally dissimilar to every other.
    pub fn identity(categories: Vec<CategoryId>) -> Self {
        let n = categories.len();
        let values = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        SimilarityMatrix {
            kind: SimilarityKind::Custom,
            categories,
            values,
            flagged: Vec::new(),
        }
    }

    pub fn kind(&self) -> SimilarityKind {
        self.kind
    }

    pub fn categories(&self) -> &[CategoryId] {
        &self.categories
    }

    pub fn n(&self) -> usize {
        self.categories.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Zero-activity categories whose similarities are undefined.
    pub fn flagged(&self) -> &[usize] {
        &self.flagged
    }

    pub fn is_flagged(&self, i: usize) -> bool {
        self.flagged.binary_search(&i).is_ok()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_dense(path, &self.categories, &self.values)
    }
}

pub fn cosine_vector_similarity(tm: &TransactionMatrix) -> SimilarityMatrix {
    let n = tm.n();
    let dense = tm.dense();
    let norms: Vec<f64> = dense
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum())
        .collect();
    let flagged: Vec<usize> = (0..n).filter(|&i| norms[i] <= 0.0).collect();

    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        values[i][i] = 1.0;
        if norms[i] <= 0.0 {
            continue;
        }
        for j in (i + 1)..n {
            if norms[j] <= 0.0 {
                continue;
            }
            let dot: f64 = dense[i].iter().zip(&dense[j]).map(|(a, b)| a * b).sum();
            let s = (dot / (norms[i] * norms[j]).sqrt()).min(1.0);
            values[i][j] = s;
            values[j][i] = s;
        }
    }
    SimilarityMatrix {
        kind: SimilarityKind::Cosine,
        categories: tm.categories().to_vec(),
        values,
        flagged,
    }
}

pub fn ochiai_similarity(tm: &TransactionMatrix) -> SimilarityMatrix {
    let n = tm.n();
    let col = tm.col_sums();
    let marginal: Vec<f64> = (0..n).map(|i| tm.row_sum(i) + col[i]).collect();
    let flagged: Vec<usize> = (0..n).filter(|&i| marginal[i] <= 0.0).collect();

    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        values[i][i] = 1.0;
        if marginal[i] <= 0.0 {
            continue;
        }
        for j in (i + 1)..n {
            if marginal[j] <= 0.0 {
                continue;
            }
            let mutual = tm.get(i, j) + tm.get(j, i);
            let s = (mutual / (marginal[i] * marginal[j]).sqrt()).min(1.0);
            values[i][j] = s;
            values[j][i] = s;
        }
    }
    SimilarityMatrix {
        kind: SimilarityKind::Ochiai,
        categories: tm.categories().to_vec(),
        values,
        flagged,
    }
}

pub fn similarity(tm: &TransactionMatrix, kind: SimilarityKind) -> Result<SimilarityMatrix> {
    match kind {
        SimilarityKind::Cosine => Ok(cosine_vector_similarity(tm)),
        SimilarityKind::Ochiai => Ok(ochiai_similarity(tm)),
        SimilarityKind::Custom => Err(Error::Config(
            "custom similarity cannot be derived from a transaction matrix".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    kind: SimilarityKind,
    transform: Transform,
    categories: Vec<CategoryId>,
    values: Vec<Vec<f64>>,
    cap: Option<f64>,
    capped_pairs: usize,
}

impl DissimilarityMatrix {
    pub fn kind(&self) -> SimilarityKind {
        self.kind
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    pub fn categories(&self) -> &[CategoryId] {
        &self.categories
    }

    pub fn n(&self) -> usize {
        self.categories.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Value substituted for `1/0` under the reciprocal transform.
    pub fn cap(&self) -> Option<f64> {
        self.cap
    }

    /// Unordered off-diagonal pairs that received the cap.
    pub fn capped_pairs(&self) -> usize {
        self.capped_pairs
    }

    /// Values of the unordered off-diagonal pairs, row-major.
    pub fn off_diagonal(&self) -> Vec<f64> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(self.values[i][j]);
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_dense(path, &self.categories, &self.values)
    }
}

pub fn to_dissimilarity(
    sim: &SimilarityMatrix,
    transform: Transform,
) -> Result<DissimilarityMatrix> {
    let n = sim.n();
    let mut values = vec![vec![0.0; n]; n];
    let mut cap = None;
    let mut capped_pairs = 0;
    match transform {
        Transform::OneMinus => {
            for i in 0..n {
                for j in 0..n {
                    values[i][j] = 1.0 - sim.values[i][j];
                }
            }
        }
        Transform::Reciprocal => {
            let max_finite = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| sim.values[i][j])
                .filter(|&s| s > 0.0)
                .map(|s| 1.0 / s)
                .fold(None, |acc: Option<f64>, v| {
                    Some(acc.map_or(v, |a| a.max(v)))
                });
            for i in 0..n {
                for j in 0..n {
                    let s = sim.values[i][j];
                    values[i][j] = if s > 0.0 {
                        1.0 / s
                    } else {
                        let c = max_finite.ok_or(Error::NoFiniteCap)?;
                        if i < j {
                            capped_pairs += 1;
                        }
                        c
                    };
                }
            }
            if capped_pairs > 0 {
                cap = max_finite;
            }
        }
    }
    Ok(DissimilarityMatrix {
        kind: sim.kind,
        transform,
        categories: sim.categories.clone(),
        values,
        cap,
        capped_pairs,
    })
}

/// Distribution of unordered off-diagonal dissimilarities.
pub fn dissimilarity_histogram(d: &DissimilarityMatrix, bins: usize) -> Result<Histogram> {
    Histogram::build(&d.off_diagonal(), bins)
}

fn write_dense(path: &Path, categories: &[CategoryId], values: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["category".to_owned()];
    header.extend(categories.iter().map(|c| c.0.clone()));
    w.write_record(&header)?;
    for (id, row) in categories.iter().zip(values) {
        let mut record = vec![id.0.clone()];
        record.extend(row.iter().map(|&v| format_f64(v)));
        w.write_record(&record)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}
