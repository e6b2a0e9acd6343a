use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::MeasureReport;
use crate::error::{Error, Result};
use crate::similarity::DissimilarityMatrix;
use crate::value::{format_f64, MeasureValue};

/// Fewest complete pairs a coefficient is computed from.
pub const MIN_PAIRS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationMethod {
    #[default]
    Pearson,
    Spearman,
}

impl fmt::Display for CorrelationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorrelationMethod::Pearson => "pearson",
            CorrelationMethod::Spearman => "spearman",
        })
    }
}

impl FromStr for CorrelationMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pearson" => Ok(CorrelationMethod::Pearson),
            "spearman" => Ok(CorrelationMethod::Spearman),
            _ => Err(format!("unknown correlation method {s:?}")),
        }
    }
}

/// Pairs where both sides are defined.
fn complete_pairs(x: &[MeasureValue], y: &[MeasureValue]) -> (Vec<f64>, Vec<f64>) {
    x.iter()
        .zip(y)
        .filter_map(|(a, b)| Some((*a.as_ref().ok()?, *b.as_ref().ok()?)))
        .unzip()
}

fn product_moment(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    // sqrt(fl(a * a)) == a, so identical inputs give exactly 1
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1-based ranks, ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    ranks
}

/// Coefficient and the number of pairs it used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient {
    /// `None` with fewer than [`MIN_PAIRS`] pairs or zero variance.
    pub value: Option<f64>,
    pub n: usize,
}

pub fn correlate(x: &[MeasureValue], y: &[MeasureValue], method: CorrelationMethod) -> Coefficient {
    let (a, b) = complete_pairs(x, y);
    let n = a.len();
    if n < MIN_PAIRS {
        return Coefficient { value: None, n };
    }
    let value = match method {
        CorrelationMethod::Pearson => product_moment(&a, &b),
        CorrelationMethod::Spearman => product_moment(&average_ranks(&a), &average_ranks(&b)),
    };
    Coefficient { value, n }
}

/// Pearson's product-moment coefficient with pairwise deletion.
pub fn pearson(x: &[MeasureValue], y: &[MeasureValue]) -> Option<f64> {
    correlate(x, y, CorrelationMethod::Pearson).value
}

/// Spearman's rank coefficient with pairwise deletion and average ranks.
pub fn spearman(x: &[MeasureValue], y: &[MeasureValue]) -> Option<f64> {
    correlate(x, y, CorrelationMethod::Spearman).value
}

/// Symmetric measures × measures coefficients with per-pair sample sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    pub method: CorrelationMethod,
    pub measures: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
    /// Categories where both measures are defined.
    pub n: Vec<Vec<usize>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Result<Option<f64>> {
        Ok(self.values[self.index(a)?][self.index(b)?])
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.measures
            .iter()
            .position(|m| m == name)
            .ok_or_else(|| Error::UnknownColumn {
                name: name.into(),
                available: self.measures.clone(),
            })
    }

    /// Measures with at least one undefined coefficient.
    pub fn incomplete(&self) -> Vec<String> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, row)| row.iter().any(Option::is_none))
            .map(|(i, _)| self.measures[i].clone())
            .collect()
    }

    fn write_square<T>(
        &self,
        path: &Path,
        config_hash: &str,
        rows: &[Vec<T>],
        cell: impl Fn(&T) -> String,
    ) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["measure".to_string()];
        header.extend(self.measures.iter().cloned());
        w.write_record(&header)?;
        for (name, row) in self.measures.iter().zip(rows) {
            let mut record = vec![name.clone()];
            record.extend(row.iter().map(&cell));
            w.write_record(&record)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invariant(e.to_string()))?;
        let text = format!(
            "# config_hash={config_hash}\n{}",
            String::from_utf8_lossy(&bytes)
        );
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    /// Coefficients as CSV, undefined entries written as `NA`.
    pub fn write_csv(&self, path: &Path, config_hash: &str) -> Result<()> {
        self.write_square(path, config_hash, &self.values, |v| {
            v.map_or_else(|| "NA".into(), format_f64)
        })
    }

    /// Per-pair sample sizes as CSV.
    pub fn write_n_csv(&self, path: &Path, config_hash: &str) -> Result<()> {
        self.write_square(path, config_hash, &self.n, |n| n.to_string())
    }
}

pub fn correlation_matrix(
    report: &MeasureReport,
    method: CorrelationMethod,
) -> Result<CorrelationMatrix> {
    let m = report.measures().len();
    if m < 2 {
        return Err(Error::Config(
            "correlation needs at least two measures".into(),
        ));
    }
    let columns: Vec<Vec<MeasureValue>> = (0..m).map(|k| report.column_at(k)).collect();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let results: Vec<Coefficient> = pairs
        .par_iter()
        .map(|&(a, b)| correlate(&columns[a], &columns[b], method))
        .collect();

    let mut values = vec![vec![None; m]; m];
    let mut n = vec![vec![0; m]; m];
    for (&(a, b), c) in pairs.iter().zip(results) {
        let v = if a == b { Some(1.0) } else { c.value };
        values[a][b] = v;
        values[b][a] = v;
        n[a][b] = c.n;
        n[b][a] = c.n;
    }
    Ok(CorrelationMatrix {
        method,
        measures: report.measures().to_vec(),
        values,
        n,
    })
}

/// Correlations between dissimilarity matrices over their unordered
/// off-diagonal pairs, named e.g. `1-Sc`, `1/So`.
pub fn dissimilarity_correlations(
    matrices: &[&DissimilarityMatrix],
    method: CorrelationMethod,
) -> Result<CorrelationMatrix> {
    if matrices
        .iter()
        .any(|d| d.categories() != matrices[0].categories())
    {
        return Err(Error::Invariant(
            "dissimilarity matrices over different categories".into(),
        ));
    }
    let names: Vec<String> = matrices
        .iter()
        .map(|d| {
            format!(
                "{}{}",
                crate::measures::transform_tag(d.transform()),
                d.kind().short()
            )
        })
        .collect();
    let n_pairs = matrices.first().map_or(0, |d| d.off_diagonal().len());
    let ids = (0..n_pairs).map(|k| k.to_string().into()).collect();
    let columns = names
        .into_iter()
        .zip(matrices)
        .map(|(name, d)| (name, d.off_diagonal().into_iter().map(Ok).collect()))
        .collect();
    correlation_matrix(&MeasureReport::from_columns(ids, columns, "")?, method)
}
