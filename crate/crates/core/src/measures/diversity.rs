//! Diversity and concentration indices of a category's reference
//! distribution. Logarithms are natural throughout so Shannon and
//! Brillouin are directly comparable.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::matrix::TransactionMatrix;
use crate::value::{MeasureValue, Undefined};

/// Which `n` the Gini coefficient ranks over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GiniSupport {
    /// Only categories the row actually cites.
    #[default]
    Observed,
    /// Every category in the matrix, zero counts included.
    All,
}

pub fn simpson_index(p: &[f64]) -> f64 {
    1.0 - super::accurate_sum(p.iter().map(|v| v * v))
}

pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>()
}

/// `(ln N! - Σ ln n_k!) / N`; `None` for an empty sample.
pub fn brillouin_index(counts: &[u64]) -> Option<f64> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return None;
    }
    let log_fact = |n: u64| ln_gamma(n as f64 + 1.0);
    let numerator = log_fact(total) - counts.iter().map(|&c| log_fact(c)).sum::<f64>();
    Some((numerator / total as f64).max(0.0))
}

/// Gini coefficient `Σ_h (2h - n - 1) x_h / (n Σ x)` over values sorted
/// increasingly. `n = 1` is maximal concentration.
pub fn gini_coefficient(values: &[f64]) -> Option<f64> {
    let n = values.len();
    let total: f64 = values.iter().sum();
    if n == 0 || total <= 0.0 {
        return None;
    }
    if n == 1 {
        return Some(1.0);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let nf = n as f64;
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(h, &x)| (2.0 * (h + 1) as f64 - nf - 1.0) * x)
        .sum();
    Some(weighted / (nf * total))
}

pub fn simpson(tm: &TransactionMatrix, i: usize) -> MeasureValue {
    let p = tm.row_distribution(i)?;
    Ok(1.0 - super::accurate_sum(p.iter().map(|&(_, v)| v * v)))
}

pub fn shannon(tm: &TransactionMatrix, i: usize) -> MeasureValue {
    let p: Vec<f64> = tm
        .row_distribution(i)?
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    Ok(shannon_entropy(&p))
}

/// Row counts rounded to the nearest integer, as Brillouin needs them.
pub fn integer_counts(tm: &TransactionMatrix, i: usize) -> Vec<u64> {
    tm.row(i).iter().map(|&(_, v)| v.round() as u64).collect()
}

/// Whether any count in row `i` is fractional and gets rounded.
pub fn brillouin_rounds(tm: &TransactionMatrix, i: usize) -> bool {
    tm.row(i).iter().any(|&(_, v)| v.fract() != 0.0)
}

pub fn brillouin(tm: &TransactionMatrix, i: usize) -> MeasureValue {
    if tm.row_sum(i) <= 0.0 {
        return Err(Undefined::ZeroRow);
    }
    // Fractional rows can round down to nothing.
    brillouin_index(&integer_counts(tm, i)).ok_or(Undefined::DegenerateN)
}

pub fn gini_complement(tm: &TransactionMatrix, i: usize, support: GiniSupport) -> MeasureValue {
    if tm.row_sum(i) <= 0.0 {
        return Err(Undefined::ZeroRow);
    }
    let mut values: Vec<f64> = tm.row(i).iter().map(|&(_, v)| v).collect();
    if support == GiniSupport::All {
        values.resize(tm.n(), 0.0);
    }
    let g = gini_coefficient(&values).ok_or(Undefined::ZeroRow)?;
    Ok((1.0 - g).clamp(0.0, 1.0))
}
