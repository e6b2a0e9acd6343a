//! Measures tied to the classification system itself: journal
//! multi-assignment, and the share and concentration of references a
//! category sends outside itself.

use std::collections::BTreeSet;

use crate::corpus::Corpus;
use crate::matrix::TransactionMatrix;
use crate::value::{MeasureValue, Undefined};

fn journals_of(corpus: &Corpus, c: usize) -> Result<&[usize], Undefined> {
    let journals = corpus.category_journal_indices(c);
    if journals.is_empty() {
        Err(Undefined::NoJournals)
    } else {
        Ok(journals)
    }
}

/// Share of the category's journals assigned to more than one category.
pub fn p_multi(corpus: &Corpus, c: usize) -> MeasureValue {
    let journals = journals_of(corpus, c)?;
    let multi = journals
        .iter()
        .filter(|&&j| corpus.journal_categories(j).len() > 1)
        .count();
    Ok(multi as f64 / journals.len() as f64)
}

/// Share of the category's journals whose categories span more than one
/// research area.
pub fn p_outside(corpus: &Corpus, c: usize) -> MeasureValue {
    let journals = journals_of(corpus, c)?;
    let spanning = journals
        .iter()
        .filter(|&&j| {
            let areas: BTreeSet<usize> = corpus
                .journal_categories(j)
                .iter()
                .map(|&k| corpus.category_area(k))
                .collect();
            areas.len() > 1
        })
        .count();
    Ok(spanning as f64 / journals.len() as f64)
}

/// Share of references cited outside the category: `1 - c_ii / Σ_j c_ij`.
pub fn pro(tm: &TransactionMatrix, i: usize) -> MeasureValue {
    let total = tm.row_sum(i);
    if total <= 0.0 {
        return Err(Undefined::ZeroRow);
    }
    let outside: f64 = tm
        .row(i)
        .iter()
        .filter(|&&(k, _)| k != i)
        .map(|&(_, v)| v)
        .sum();
    Ok((outside / total).clamp(0.0, 1.0))
}

/// Distinct pairs of different categories co-assigned in the category's
/// journals, per journal.
pub fn d_links(corpus: &Corpus, c: usize) -> MeasureValue {
    let journals = journals_of(corpus, c)?;
    let mut pairs = BTreeSet::new();
    for &j in journals {
        let cats = corpus.journal_categories(j);
        for (a, &x) in cats.iter().enumerate() {
            for &y in &cats[a + 1..] {
                pairs.insert((x.min(y), x.max(y)));
            }
        }
    }
    Ok(pairs.len() as f64 / journals.len() as f64)
}

/// Pratt's concentration index of a distribution over its positive entries.
///
/// With `p` ranked decreasingly (`g = 1..n`, tied values sharing their
/// average rank) and `q = Σ g·p_g`, `C = 2((n+1)/2 - q)/(n-1)`. A single
/// category is maximally concentrated: `C = 1`.
pub fn pratt_concentration(p: &[f64]) -> Option<f64> {
    let mut positive: Vec<f64> = p.iter().copied().filter(|&v| v > 0.0).collect();
    let n = positive.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(1.0);
    }
    let total: f64 = positive.iter().sum();
    positive.sort_by(|a, b| b.total_cmp(a));
    let mut q = 0.0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && positive[end] == positive[start] {
            end += 1;
        }
        // ranks start+1..=end share their mean
        let rank = (start + 1 + end) as f64 / 2.0;
        for &v in &positive[start..end] {
            q += rank * v / total;
        }
        start = end;
    }
    let nf = n as f64;
    Some(2.0 * ((nf + 1.0) / 2.0 - q) / (nf - 1.0))
}

/// `1 - Pratt` of the category's reference distribution.
pub fn pratt_complement(tm: &TransactionMatrix, i: usize) -> MeasureValue {
    let p: Vec<f64> = tm
        .row_distribution(i)?
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    let c = pratt_concentration(&p).ok_or(Undefined::ZeroRow)?;
    Ok((1.0 - c).clamp(0.0, 1.0))
}

/// `1 - Σ_k c_ik² / (Σ_k c_ik)²`.
pub fn spec_complement(tm: &TransactionMatrix, i: usize) -> MeasureValue {
    let row = tm.row(i);
    let total: f64 = row.iter().map(|&(_, v)| v).sum();
    if total <= 0.0 {
        return Err(Undefined::ZeroRow);
    }
    let squares: f64 = row.iter().map(|&(_, v)| v * v).sum();
    Ok(1.0 - squares / (total * total))
}
