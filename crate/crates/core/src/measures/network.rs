//! Network position of a category in the category citation graph.
//!
//! The graph has an edge `i -> j` for every `c_ij > 0` with `i != j`.
//! Shortest paths minimise total edge weight. With the default `raw`
//! weights that is the citation count itself, so weak ties make short
//! paths; `inverse` weights (`1/c_ij`) give the usual strength-to-distance
//! reading. Betweenness is the unnormalised sum over ordered pairs and
//! grows with category size.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::CategoryId;
use crate::error::{Error, Result};
use crate::matrix::TransactionMatrix;
use crate::similarity::SimilarityMatrix;
use crate::value::{format_f64, MeasureValue, Undefined};

/// Relative tolerance under which two path lengths count as equal.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightTransform {
    /// `w_ij = c_ij`
    #[default]
    Raw,
    /// `w_ij = 1 / c_ij`
    Inverse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CitationGraph {
    categories: Vec<CategoryId>,
    /// Outgoing `(target, weight)` lists, sorted by target.
    adjacency: Vec<Vec<(usize, f64)>>,
    transform: WeightTransform,
}

impl CitationGraph {
    /// Build directly from weighted edges. Weights must be finite and
    /// positive; self-loops are rejected.
    pub fn from_edges(
        categories: Vec<CategoryId>,
        edges: &[(usize, usize, f64)],
        transform: WeightTransform,
    ) -> Result<Self> {
        let n = categories.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n || v >= n || u == v || !(w.is_finite() && w > 0.0) {
                return Err(Error::Invariant(format!("invalid edge {u}->{v} ({w})")));
            }
            adjacency[u].push((v, w));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(v, _)| v);
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Invariant("parallel edges".into()));
            }
        }
        Ok(CitationGraph {
            categories,
            adjacency,
            transform,
        })
    }

    pub fn n(&self) -> usize {
        self.categories.len()
    }

    pub fn transform(&self) -> WeightTransform {
        self.transform
    }

    pub fn categories(&self) -> &[CategoryId] {
        &self.categories
    }

    pub fn out_edges(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Same graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        CitationGraph {
            categories: self.categories.clone(),
            adjacency: self
                .adjacency
                .iter()
                .map(|l| l.iter().map(|&(v, w)| (v, w * factor)).collect())
                .collect(),
            transform: self.transform,
        }
    }

    /// Edge list export: `src,dst,weight`.
    pub fn write_edge_list(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["src", "dst", "weight"])?;
        for (u, list) in self.adjacency.iter().enumerate() {
            for &(v, weight) in list {
                w.write_record([
                    self.categories[u].as_str(),
                    self.categories[v].as_str(),
                    &format_f64(weight),
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io(path, e))?;
        Ok(())
    }
}

pub fn build_citation_graph(tm: &TransactionMatrix, transform: WeightTransform) -> CitationGraph {
    let adjacency = (0..tm.n())
        .map(|i| {
            tm.row(i)
                .iter()
                .filter(|&&(k, v)| k != i && v > 0.0)
                .map(|&(k, v)| {
                    let w = match transform {
                        WeightTransform::Raw => v,
                        WeightTransform::Inverse => 1.0 / v,
                    };
                    (k, w)
                })
                .collect()
        })
        .collect();
    CitationGraph {
        categories: tm.categories().to_vec(),
        adjacency,
        transform,
    }
}

pub(crate) fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs())
}

#[derive(Clone, Copy, PartialEq)]
struct Frontier {
    dist: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then node index for a fixed pop order
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest-path DAG from one source.
struct SourceDag {
    /// Nodes in order of settlement.
    order: Vec<usize>,
    sigma: Vec<f64>,
    preds: Vec<Vec<usize>>,
}

fn shortest_path_dag(graph: &CitationGraph, source: usize) -> SourceDag {
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();

    dist[source] = 0.0;
    sigma[source] = 1.0;
    heap.push(Frontier {
        dist: 0.0,
        node: source,
    });
    while let Some(Frontier { dist: d, node: v }) = heap.pop() {
        if settled[v] || d > dist[v] {
            continue;
        }
        settled[v] = true;
        order.push(v);
        for &(w, weight) in &graph.adjacency[v] {
            if settled[w] {
                continue;
            }
            let candidate = d + weight;
            if dist[w].is_infinite() || (candidate < dist[w] && !same_length(candidate, dist[w])) {
                dist[w] = candidate;
                sigma[w] = sigma[v];
                preds[w].clear();
                preds[w].push(v);
                heap.push(Frontier {
                    dist: candidate,
                    node: w,
                });
            } else if same_length(candidate, dist[w]) {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    SourceDag {
        order,
        sigma,
        preds,
    }
}

/// Number of shortest paths from `source` to every node (0 if unreachable,
/// 1 for the source itself).
pub fn shortest_path_counts(graph: &CitationGraph, source: usize) -> Vec<f64> {
    shortest_path_dag(graph, source).sigma
}

fn source_dependencies(graph: &CitationGraph, source: usize) -> Vec<f64> {
    let dag = shortest_path_dag(graph, source);
    let mut delta = vec![0.0; graph.n()];
    for &w in dag.order.iter().rev() {
        for &v in &dag.preds[w] {
            delta[v] += dag.sigma[v] / dag.sigma[w] * (1.0 + delta[w]);
        }
    }
    delta[source] = 0.0;
    delta
}

/// Betweenness of every node: `Σ_{j != i != k} r_jik / r_jk` over ordered
/// pairs, unnormalised. Sources run in parallel; their contributions are
/// added in source order.
pub fn betweenness(graph: &CitationGraph) -> Vec<f64> {
    let per_source: Vec<Vec<f64>> = (0..graph.n())
        .into_par_iter()
        .map(|s| source_dependencies(graph, s))
        .collect();
    let mut bc = vec![0.0; graph.n()];
    for delta in per_source {
        for (b, d) in bc.iter_mut().zip(delta) {
            *b += d;
        }
    }
    bc
}

/// How the per-`j` citation term of the cluster coefficient is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterDirection {
    /// `c_ij`
    #[default]
    Outgoing,
    /// `c_ij + c_ji`
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterCoefficient {
    pub value: MeasureValue,
    /// Categories `j` skipped because `a_j = 0`.
    pub skipped: usize,
}

/// `Σ_{j != i} P_j c_ij / (a_i a_j)`.
pub fn cluster_coefficient(
    tm: &TransactionMatrix,
    i: usize,
    direction: ClusterDirection,
) -> ClusterCoefficient {
    let a = tm.publication_counts();
    let shares = tm.publication_shares();
    if a[i] <= 0.0 {
        return ClusterCoefficient {
            value: Err(Undefined::NoPublications),
            skipped: 0,
        };
    }
    let mut total = 0.0;
    let mut skipped = 0;
    for j in 0..tm.n() {
        if j == i {
            continue;
        }
        if a[j] <= 0.0 {
            skipped += 1;
            continue;
        }
        let c = match direction {
            ClusterDirection::Outgoing => tm.get(i, j),
            ClusterDirection::Symmetric => tm.get(i, j) + tm.get(j, i),
        };
        total += shares[j] * c / (a[i] * a[j]);
    }
    ClusterCoefficient {
        value: Ok(total),
        skipped,
    }
}

/// `Σ_{j != i} P_j s_ij`, undefined for categories flagged in `s`.
pub fn average_similarity(tm: &TransactionMatrix, s: &SimilarityMatrix, i: usize) -> MeasureValue {
    if s.is_flagged(i) {
        return Err(Undefined::FlaggedCategory);
    }
    let shares = tm.publication_shares();
    Ok((0..tm.n())
        .filter(|&j| j != i)
        .map(|j| shares[j] * s.get(i, j))
        .sum())
}
