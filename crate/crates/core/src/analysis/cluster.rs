//! Agglomerative clustering of measures on `1 - r`.
//!
//! At each step the closest pair of clusters merges. Equal distances are
//! resolved by the clusters' labels (the smallest leaf name in each), so the
//! tree does not depend on column order. The left child is the one with the
//! smaller label.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::CorrelationMatrix;
use crate::error::{Error, Result};
use crate::value::format_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Linkage {
    /// UPGMA: size-weighted mean of member distances.
    #[default]
    Average,
    Single,
    Complete,
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Linkage::Average => "average",
            Linkage::Single => "single",
            Linkage::Complete => "complete",
        })
    }
}

impl FromStr for Linkage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "average" | "upgma" => Ok(Linkage::Average),
            "single" => Ok(Linkage::Single),
            "complete" => Ok(Linkage::Complete),
            _ => Err(format!("unknown linkage {s:?}")),
        }
    }
}

/// One merge. Node ids below the leaf count are leaves; id `n + k` is the
/// cluster formed by merge `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub leaves: Vec<String>,
    pub merges: Vec<Merge>,
    pub linkage: Linkage,
    /// Measures left out because some coefficient involving them was
    /// undefined.
    pub excluded: Vec<String>,
}

/// Drop measures with undefined coefficients, worst first, until the rest
/// form a complete matrix. Ties drop the lexicographically largest name.
fn complete_subset(cm: &CorrelationMatrix) -> (Vec<usize>, Vec<String>) {
    let mut keep: Vec<usize> = (0..cm.measures.len()).collect();
    let mut excluded = Vec::new();
    loop {
        let missing = |a: usize| keep.iter().filter(|&&b| cm.values[a][b].is_none()).count();
        let worst = keep
            .iter()
            .copied()
            .filter(|&a| missing(a) > 0)
            .max_by(|&a, &b| {
                missing(a)
                    .cmp(&missing(b))
                    .then_with(|| cm.measures[a].cmp(&cm.measures[b]))
            });
        match worst {
            Some(w) => {
                keep.retain(|&k| k != w);
                excluded.push(cm.measures[w].clone());
            }
            None => break,
        }
    }
    excluded.sort();
    (keep, excluded)
}

struct Active {
    node: usize,
    label: String,
    size: usize,
    height: f64,
}

pub fn cluster_measures(cm: &CorrelationMatrix, linkage: Linkage) -> Result<Dendrogram> {
    let (keep, excluded) = complete_subset(cm);
    if keep.is_empty() {
        return Err(Error::Config("no measures left to cluster".into()));
    }
    let leaves: Vec<String> = keep.iter().map(|&k| cm.measures[k].clone()).collect();
    let n = leaves.len();
    let mut dist: Vec<Vec<f64>> = keep
        .iter()
        .map(|&a| {
            keep.iter()
                .map(|&b| 1.0 - cm.values[a][b].expect("complete subset"))
                .collect()
        })
        .collect();
    let mut active: Vec<Option<Active>> = leaves
        .iter()
        .enumerate()
        .map(|(i, name)| {
            Some(Active {
                node: i,
                label: name.clone(),
                size: 1,
                height: 0.0,
            })
        })
        .collect();

    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    for step in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, &str, &str, usize, usize)> = None;
        for a in 0..n {
            let Some(ca) = &active[a] else { continue };
            for b in a + 1..n {
                let Some(cb) = &active[b] else { continue };
                let (x, y, lx, ly) = if ca.label <= cb.label {
                    (a, b, ca.label.as_str(), cb.label.as_str())
                } else {
                    (b, a, cb.label.as_str(), ca.label.as_str())
                };
                let d = dist[a][b];
                let better = match best {
                    None => true,
                    Some((bd, bl, br, _, _)) => d < bd || (d == bd && (lx, ly) < (bl, br)),
                };
                if better {
                    best = Some((d, lx, ly, x, y));
                }
            }
        }
        let (d, _, _, x, y) = best.expect("two active clusters");
        let left = active[x].take().expect("active");
        let right = active[y].take().expect("active");
        let height = d.max(left.height).max(right.height);
        merges.push(Merge {
            left: left.node,
            right: right.node,
            height,
        });

        let (sx, sy) = (left.size as f64, right.size as f64);
        for k in 0..n {
            if active[k].is_none() {
                continue;
            }
            let (dx, dy) = (dist[x][k], dist[y][k]);
            let merged = match linkage {
                Linkage::Average => (sx * dx + sy * dy) / (sx + sy),
                Linkage::Single => dx.min(dy),
                Linkage::Complete => dx.max(dy),
            };
            dist[x][k] = merged;
            dist[k][x] = merged;
        }
        active[x] = Some(Active {
            node: n + step,
            label: left.label,
            size: left.size + right.size,
            height,
        });
    }
    Ok(Dendrogram {
        leaves,
        merges,
        linkage,
        excluded,
    })
}

fn newick_label(name: &str) -> String {
    let plain = name
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
    if plain && !name.is_empty() {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\'', "''"))
    }
}

impl Dendrogram {
    pub fn root(&self) -> usize {
        self.leaves.len() + self.merges.len() - 1
    }

    /// Height of a node; leaves sit at 0.
    pub fn height(&self, node: usize) -> f64 {
        if node < self.leaves.len() {
            0.0
        } else {
            self.merges[node - self.leaves.len()].height
        }
    }

    /// Leaf names under a node.
    pub fn members(&self, node: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            if v < self.leaves.len() {
                out.insert(self.leaves[v].clone());
            } else {
                let m = self.merges[v - self.leaves.len()];
                stack.push(m.left);
                stack.push(m.right);
            }
        }
        out
    }

    /// Every merge as (members, height); equal for isomorphic trees.
    pub fn clusters(&self) -> Vec<(BTreeSet<String>, f64)> {
        let n = self.leaves.len();
        (0..self.merges.len())
            .map(|k| (self.members(n + k), self.merges[k].height))
            .collect()
    }

    /// Newick string; branch lengths are height differences.
    pub fn to_newick(&self, config_hash: &str) -> String {
        let mut out = String::new();
        if !config_hash.is_empty() {
            let _ = write!(out, "[config_hash={config_hash}]");
        }
        self.write_node(self.root(), &mut out);
        out.push(';');
        out
    }

    fn write_node(&self, node: usize, out: &mut String) {
        let n = self.leaves.len();
        if node < n {
            out.push_str(&newick_label(&self.leaves[node]));
            return;
        }
        let m = self.merges[node - n];
        out.push('(');
        for (i, child) in [m.left, m.right].into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_node(child, out);
            let _ = write!(out, ":{}", format_f64(m.height - self.height(child)));
        }
        out.push(')');
    }

    pub fn to_json(&self, config_hash: &str) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            config_hash: &'a str,
            #[serde(flatten)]
            tree: &'a Dendrogram,
        }
        serde_json::to_string_pretty(&Out {
            config_hash,
            tree: self,
        })
        .expect("serializable")
    }
}
