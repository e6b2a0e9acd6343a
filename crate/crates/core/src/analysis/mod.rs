//! Comparing measures with each other: correlations, clustering of the
//! measures, category rankings and value distributions.

mod cluster;
mod correlation;
mod rank;
mod report;

use serde::Serialize;

pub use cluster::{cluster_measures, Dendrogram, Linkage, Merge};
pub use correlation::{
    average_ranks, correlate, correlation_matrix, dissimilarity_correlations, pearson, spearman,
    Coefficient, CorrelationMatrix, CorrelationMethod, MIN_PAIRS,
};
pub use rank::{competition_ranks, rank_categories, RankColumn, RankingTable};
pub use report::MeasureReport;

use crate::error::Result;
use crate::histogram::Histogram;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureHistogram {
    pub measure: String,
    #[serde(flatten)]
    pub histogram: Histogram,
    /// Categories left out for lack of a value.
    pub excluded: usize,
}

/// One equal-width histogram per measure over its defined values.
pub fn value_histograms(report: &MeasureReport, bins: usize) -> Result<Vec<MeasureHistogram>> {
    (0..report.measures().len())
        .map(|m| {
            let column = report.column_at(m);
            let values: Vec<f64> = column.iter().filter_map(|v| v.ok()).collect();
            Ok(MeasureHistogram {
                measure: report.measures()[m].clone(),
                histogram: Histogram::build(&values, bins)?,
                excluded: column.len() - values.len(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::Undefined;

    #[test]
    fn histograms_skip_undefined() {
        let report = MeasureReport::from_columns(
            vec!["A".into(), "B".into(), "C".into()],
            vec![
                ("x".into(), vec![Ok(0.5), Ok(0.5), Err(Undefined::ZeroRow)]),
                ("y".into(), vec![Ok(0.0), Ok(0.25), Ok(1.0)]),
            ],
            "",
        )
        .unwrap();
        let h = value_histograms(&report, 1).unwrap();
        assert_eq!(h[0].histogram.counts, vec![2]);
        assert_eq!(h[0].excluded, 1);
        let h = value_histograms(&report, 4).unwrap();
        assert_eq!(h[1].histogram.counts, vec![1, 1, 0, 1]);
        assert_eq!(h[1].histogram.edges, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
