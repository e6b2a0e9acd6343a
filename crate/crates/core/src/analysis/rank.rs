use std::path::Path;

use serde::Serialize;

use crate::analysis::MeasureReport;
use crate::corpus::CategoryId;
use crate::error::{Error, Result};
use crate::value::MeasureValue;

/// Ranks of every category under one measure, highest value first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankColumn {
    pub measure: String,
    /// `None` for categories without a value.
    pub ranks: Vec<Option<usize>>,
    pub unranked: Vec<CategoryId>,
    /// Number of ranked categories.
    pub ranked: usize,
}

/// Competition ranks (`1, 1, 3`) on decreasing values.
pub fn competition_ranks(values: &[MeasureValue]) -> Vec<Option<usize>> {
    let mut defined: Vec<(usize, f64)> = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.ok().map(|x| (i, x)))
        .collect();
    defined.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut ranks = vec![None; values.len()];
    for (pos, &(i, x)) in defined.iter().enumerate() {
        let rank = if pos > 0 && defined[pos - 1].1 == x {
            ranks[defined[pos - 1].0].expect("ranked above")
        } else {
            pos + 1
        };
        ranks[i] = Some(rank);
    }
    ranks
}

pub fn rank_categories(report: &MeasureReport, measure: &str) -> Result<RankColumn> {
    let values = report.column(measure)?;
    let ranks = competition_ranks(&values);
    let unranked = report
        .categories()
        .iter()
        .zip(&ranks)
        .filter(|(_, r)| r.is_none())
        .map(|(c, _)| c.clone())
        .collect::<Vec<_>>();
    Ok(RankColumn {
        measure: measure.to_string(),
        ranked: ranks.len() - unranked.len(),
        ranks,
        unranked,
    })
}

/// Measures × chosen categories, each cell the category's rank among all
/// categories of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingTable {
    pub categories: Vec<CategoryId>,
    pub columns: Vec<RankColumn>,
    /// Indices of the chosen categories in the report.
    #[serde(skip)]
    selected: Vec<usize>,
}

impl RankingTable {
    /// All measures of the report; every category if `categories` is empty.
    pub fn build(report: &MeasureReport, categories: &[&str]) -> Result<Self> {
        let selected = if categories.is_empty() {
            (0..report.categories().len()).collect()
        } else {
            categories
                .iter()
                .map(|c| report.category_index(c))
                .collect::<Result<Vec<_>>>()?
        };
        let columns = report
            .measures()
            .iter()
            .map(|m| rank_categories(report, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(RankingTable {
            categories: selected
                .iter()
                .map(|&i| report.categories()[i].clone())
                .collect(),
            columns,
            selected,
        })
    }

    pub fn rank(&self, measure: usize, category: usize) -> Option<usize> {
        self.columns[measure].ranks[self.selected[category]]
    }

    /// `measure,<categories>` rows; unranked cells are `NA`.
    pub fn write_csv(&self, path: &Path, config_hash: &str) -> Result<()> {
        let mut text = format!("# config_hash={config_hash}\n");
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["measure".to_string()];
        header.extend(self.categories.iter().map(|c| c.to_string()));
        w.write_record(&header)?;
        for (m, col) in self.columns.iter().enumerate() {
            let mut record = vec![col.measure.clone()];
            record.extend((0..self.categories.len()).map(|c| {
                self.rank(m, c)
                    .map_or_else(|| "NA".into(), |r| r.to_string())
            }));
            w.write_record(&record)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invariant(e.to_string()))?;
        text.push_str(&String::from_utf8_lossy(&bytes));
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}
