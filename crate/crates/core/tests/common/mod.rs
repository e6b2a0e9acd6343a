#![allow(dead_code)]

use interdisc::corpus::CategoryId;
use interdisc::matrix::{CountingMode, TransactionMatrix};
use interdisc::measures::network::{CitationGraph, WeightTransform};
use interdisc::synthgen::SpecRng;

pub fn ids(n: usize) -> Vec<CategoryId> {
    (0..n).map(|i| CategoryId(format!("K{i}"))).collect()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Dense matrix with publication counts taken as the row sums plus one.
pub fn dense_tm(counts: &[Vec<f64>]) -> TransactionMatrix {
    let pubs = counts.iter().map(|r| r.iter().sum::<f64>() + 1.0).collect();
    TransactionMatrix::from_dense(ids(counts.len()), counts, pubs, CountingMode::Full).unwrap()
}

/// Random weighted digraph: each ordered pair gets an edge with probability
/// `density`; weights are small integers so equal-length paths are common.
pub fn random_edges(rng: &mut SpecRng, n: usize, density: f64) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.bernoulli(density) {
                edges.push((u, v, 1.0 + rng.below(3) as f64));
            }
        }
    }
    edges
}

pub fn random_graph(rng: &mut SpecRng, max_nodes: usize) -> CitationGraph {
    let n = 2 + rng.below(max_nodes as u64 - 1) as usize;
    let density = 0.2 + 0.6 * rng.uniform();
    let edges = random_edges(rng, n, density);
    CitationGraph::from_edges(ids(n), &edges, WeightTransform::Raw).unwrap()
}

/// Every simple path from `s` to `t` with its total weight.
fn simple_paths(g: &CitationGraph, s: usize, t: usize) -> Vec<(Vec<usize>, f64)> {
    fn walk(
        g: &CitationGraph,
        t: usize,
        path: &mut Vec<usize>,
        len: f64,
        out: &mut Vec<(Vec<usize>, f64)>,
    ) {
        let u = *path.last().unwrap();
        if u == t {
            out.push((path.clone(), len));
            return;
        }
        for &(v, w) in g.out_edges(u) {
            if !path.contains(&v) {
                path.push(v);
                walk(g, t, path, len + w, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, t, &mut vec![s], 0.0, &mut out);
    out
}

fn shortest(g: &CitationGraph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let paths = simple_paths(g, s, t);
    let Some(best) = paths.iter().map(|p| p.1).reduce(f64::min) else {
        return Vec::new();
    };
    paths
        .into_iter()
        .filter(|p| (p.1 - best).abs() <= 1e-12 * best.max(1.0))
        .map(|p| p.0)
        .collect()
}

/// Number of shortest paths from `s` to every node (1 for `s` itself).
pub fn brute_path_counts(g: &CitationGraph, s: usize) -> Vec<f64> {
    (0..g.n())
        .map(|t| {
            if t == s {
                1.0
            } else {
                shortest(g, s, t).len() as f64
            }
        })
        .collect()
}

/// Betweenness by enumerating every simple path between every ordered pair.
pub fn brute_betweenness(g: &CitationGraph) -> Vec<f64> {
    let n = g.n();
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = shortest(g, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for (i, b) in bc.iter_mut().enumerate() {
                if i == s || i == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&i)).count() as f64;
                *b += through / total;
            }
        }
    }
    bc
}

/// Parsed Newick node.
#[derive(Debug, Clone, PartialEq)]
pub enum Tree {
    Leaf(String, f64),
    Node(Vec<Tree>, f64),
}

impl Tree {
    pub fn leaves(&self) -> Vec<String> {
        match self {
            Tree::Leaf(name, _) => vec![name.clone()],
            Tree::Node(children, _) => children.iter().flat_map(Tree::leaves).collect(),
        }
    }

    /// Distance from this node down to its leaves, taking the first child path.
    pub fn depth(&self) -> f64 {
        match self {
            Tree::Leaf(..) => 0.0,
            Tree::Node(children, _) => match &children[0] {
                Tree::Leaf(_, len) => *len,
                c @ Tree::Node(_, len) => len + c.depth(),
            },
        }
    }
}

/// Minimal Newick reader: bracket comments, quoted labels, branch lengths.
pub fn parse_newick(text: &str) -> Result<Tree, String> {
    let chars: Vec<char> = text.trim().chars().collect();
    let mut pos = 0;
    if chars.first() == Some(&'[') {
        pos = chars
            .iter()
            .position(|&c| c == ']')
            .ok_or("unclosed comment")?
            + 1;
    }
    let tree = node(&chars, &mut pos)?;
    if chars.get(pos) != Some(&';') || pos + 1 != chars.len() {
        return Err(format!("trailing input at {pos}"));
    }
    Ok(tree)
}

fn node(c: &[char], pos: &mut usize) -> Result<Tree, String> {
    if c.get(*pos) == Some(&'(') {
        *pos += 1;
        let mut children = vec![node(c, pos)?];
        while c.get(*pos) == Some(&',') {
            *pos += 1;
            children.push(node(c, pos)?);
        }
        if c.get(*pos) != Some(&')') {
            return Err(format!("expected ')' at {pos}", pos = *pos));
        }
        *pos += 1;
        Ok(Tree::Node(children, length(c, pos)?))
    } else {
        let name = label(c, pos)?;
        Ok(Tree::Leaf(name, length(c, pos)?))
    }
}

fn label(c: &[char], pos: &mut usize) -> Result<String, String> {
    let mut out = String::new();
    if c.get(*pos) == Some(&'\'') {
        *pos += 1;
        loop {
            match c.get(*pos) {
                None => return Err("unclosed quote".into()),
                Some('\'') if c.get(*pos + 1) == Some(&'\'') => {
                    out.push('\'');
                    *pos += 2;
                }
                Some('\'') => {
                    *pos += 1;
                    break;
                }
                Some(&ch) => {
                    out.push(ch);
                    *pos += 1;
                }
            }
        }
    } else {
        while let Some(&ch) = c.get(*pos) {
            if "(),:;".contains(ch) {
                break;
            }
            out.push(ch);
            *pos += 1;
        }
    }
    if out.is_empty() {
        return Err(format!("empty label at {pos}", pos = *pos));
    }
    Ok(out)
}

fn length(c: &[char], pos: &mut usize) -> Result<f64, String> {
    if c.get(*pos) != Some(&':') {
        return Ok(0.0);
    }
    *pos += 1;
    let start = *pos;
    while let Some(&ch) = c.get(*pos) {
        if "(),:;".contains(ch) {
            break;
        }
        *pos += 1;
    }
    let s: String = c[start..*pos].iter().collect();
    s.parse().map_err(|_| format!("bad branch length {s:?}"))
}
