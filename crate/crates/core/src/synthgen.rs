//! Seeded synthetic corpora.
//!
//! Category `i` belongs to area `i % n_areas`. Each category owns
//! `journals_per_category` journals; a journal picks up one extra category
//! with probability `multi_assign_prob`. Every journal carries
//! `pubs_per_journal` publications and every publication draws between
//! `refs_per_pub.min` and `refs_per_pub.max` references. A reference
//! targets the citing journal's own category with probability
//! `intra_category_citation_prob`, otherwise another category chosen by
//! `cross_category_affinity`. It then cites a publication of that category
//! with probability `internal_ref_prob`, or one of its journals.
//!
//! ```
//! use interdisc::synthgen::{generate, GenSpec};
//!
//! let spec = GenSpec { n_categories: 5, pubs_per_journal: 4, ..GenSpec::default() };
//! let corpus = generate(&spec).unwrap();
//! assert_eq!(corpus.n_categories(), 5);
//! assert_eq!(corpus.publications().len(), 5 * spec.journals_per_category * 4);
//! ```

use std::fs;
use std::path::Path;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::corpus::{Category, Corpus, Journal, Publication, Reference};
use crate::error::{Error, Result};

/// Description of the random number stream, written next to generated files.
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha 0.3) seeded with SeedableRng::seed_from_u64 (rand_core 0.6); \
uniform f64 = (next_u64 >> 11) * 2^-53; integers in [0, n) by Lemire multiply-shift with rejection";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefRange {
    pub min: usize,
    pub max: usize,
}

/// How a reference leaving its own category picks the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Affinity {
    /// Decay `a` in `(0, 1]`: category `j` gets weight `a^(d(i, j) - 1)` where
    /// `d` is the circular distance between indices. `1` is uniform.
    Scalar(f64),
    /// Row `i` weights the categories cited from category `i`; the
    /// diagonal is ignored.
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub seed: u64,
    pub n_categories: usize,
    pub n_areas: usize,
    pub journals_per_category: usize,
    pub multi_assign_prob: f64,
    pub pubs_per_journal: usize,
    pub refs_per_pub: RefRange,
    pub intra_category_citation_prob: f64,
    pub cross_category_affinity: Affinity,
    #[serde(default = "default_internal_ref_prob")]
    pub internal_ref_prob: f64,
}

fn default_internal_ref_prob() -> f64 {
    0.5
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            seed: 42,
            n_categories: 50,
            n_areas: 5,
            journals_per_category: 4,
            multi_assign_prob: 0.2,
            pubs_per_journal: 100,
            refs_per_pub: RefRange { min: 5, max: 30 },
            intra_category_citation_prob: 0.6,
            cross_category_affinity: Affinity::Scalar(0.7),
            internal_ref_prob: default_internal_ref_prob(),
        }
    }
}

impl GenSpec {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let spec: GenSpec = serde_json::from_str(&text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.to_string()));
        for (name, v) in [
            ("n_categories", self.n_categories),
            ("n_areas", self.n_areas),
            ("journals_per_category", self.journals_per_category),
            ("pubs_per_journal", self.pubs_per_journal),
        ] {
            if v == 0 {
                return bad(&format!("{name} must be at least 1"));
            }
        }
        if self.n_areas > self.n_categories {
            return bad("n_areas exceeds n_categories");
        }
        for (name, p) in [
            ("multi_assign_prob", self.multi_assign_prob),
            (
                "intra_category_citation_prob",
                self.intra_category_citation_prob,
            ),
            ("internal_ref_prob", self.internal_ref_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(&format!("{name} must lie in [0, 1]"));
            }
        }
        if self.refs_per_pub.min > self.refs_per_pub.max {
            return bad("refs_per_pub.min exceeds refs_per_pub.max");
        }
        let n = self.n_categories;
        match &self.cross_category_affinity {
            Affinity::Scalar(a) => {
                if !(*a > 0.0 && *a <= 1.0) {
                    return bad("scalar affinity must lie in (0, 1]");
                }
            }
            Affinity::Matrix(m) => {
                if m.len() != n || m.iter().any(|r| r.len() != n) {
                    return bad("affinity matrix must be n_categories × n_categories");
                }
                if m.iter().flatten().any(|&w| !(w.is_finite() && w >= 0.0)) {
                    return bad("affinity weights must be finite and non-negative");
                }
                if self.intra_category_citation_prob < 1.0 && n > 1 {
                    let dead = (0..n).any(|i| (0..n).all(|j| j == i || m[i][j] == 0.0));
                    if dead {
                        return bad("an affinity row has no positive off-diagonal weight");
                    }
                }
            }
        }
        Ok(())
    }

    fn affinity_row(&self, i: usize) -> Vec<f64> {
        let n = self.n_categories;
        (0..n)
            .map(|j| {
                if j == i {
                    return 0.0;
                }
                match &self.cross_category_affinity {
                    Affinity::Scalar(a) => {
                        let d = i.abs_diff(j).min(n - i.abs_diff(j));
                        a.powi(d as i32 - 1)
                    }
                    Affinity::Matrix(m) => m[i][j],
                }
            })
            .collect()
    }
}

/// The generator's random stream.
pub struct SpecRng(ChaCha8Rng);

impl SpecRng {
    pub fn new(seed: u64) -> Self {
        SpecRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Uniform in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        let mut m = self.next_u64() as u128 * n as u128;
        if (m as u64) < n {
            let threshold = n.wrapping_neg() % n;
            while (m as u64) < threshold {
                m = self.next_u64() as u128 * n as u128;
            }
        }
        (m >> 64) as u64
    }

    fn index(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    /// Index drawn proportionally to `weights` (not all zero).
    pub fn weighted(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        let target = self.uniform() * total;
        let mut acc = 0.0;
        let mut last = 0;
        for (k, &w) in weights.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            acc += w;
            last = k;
            if target < acc {
                return k;
            }
        }
        last
    }
}

pub fn category_name(i: usize) -> String {
    format!("C{i:03}")
}

pub fn area_name(a: usize) -> String {
    format!("A{a:02}")
}

pub fn journal_name(j: usize) -> String {
    format!("J{j:04}")
}

pub fn publication_name(p: usize) -> String {
    format!("P{p:06}")
}

pub fn generate(spec: &GenSpec) -> Result<Corpus> {
    spec.validate()?;
    let n = spec.n_categories;
    let mut rng = SpecRng::new(spec.seed);

    let categories: Vec<Category> = (0..n)
        .map(|i| Category {
            id: category_name(i).into(),
            area: area_name(i % spec.n_areas).into(),
        })
        .collect();

    let mut journals = Vec::with_capacity(n * spec.journals_per_category);
    let mut journals_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut primary = Vec::with_capacity(n * spec.journals_per_category);
    for c in 0..n {
        for _ in 0..spec.journals_per_category {
            let mut cats = vec![categories[c].id.clone()];
            if n > 1 && rng.bernoulli(spec.multi_assign_prob) {
                let other = (c + 1 + rng.index(n - 1)) % n;
                cats.push(categories[other].id.clone());
            }
            journals_of[c].push(journals.len());
            primary.push(c);
            journals.push(Journal {
                id: journal_name(journals.len()).into(),
                categories: cats,
            });
        }
    }

    let mut pubs_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pub_journal = Vec::new();
    for (j, &c) in primary.iter().enumerate() {
        for _ in 0..spec.pubs_per_journal {
            pubs_of[c].push(pub_journal.len());
            pub_journal.push(j);
        }
    }

    let affinity: Vec<Vec<f64>> = (0..n).map(|i| spec.affinity_row(i)).collect();
    let span = (spec.refs_per_pub.max - spec.refs_per_pub.min + 1) as u64;
    let mut publications = Vec::with_capacity(pub_journal.len());
    for (p, &j) in pub_journal.iter().enumerate() {
        let home = primary[j];
        let count = spec.refs_per_pub.min + rng.below(span) as usize;
        let mut refs = Vec::with_capacity(count);
        for _ in 0..count {
            let target = if n == 1 || rng.bernoulli(spec.intra_category_citation_prob) {
                home
            } else {
                rng.weighted(&affinity[home])
            };
            let pool = &pubs_of[target];
            let internal = rng.bernoulli(spec.internal_ref_prob) && pool.iter().any(|&q| q != p);
            if internal {
                let mut q = pool[rng.index(pool.len())];
                while q == p {
                    q = pool[rng.index(pool.len())];
                }
                refs.push(Reference::publication(publication_name(q)));
            } else {
                let js = &journals_of[target];
                refs.push(Reference::journal(
                    journals[js[rng.index(js.len())]].id.clone(),
                ));
            }
        }
        publications.push(Publication {
            id: publication_name(p).into(),
            journal: journals[j].id.clone(),
            refs,
        });
    }
    Corpus::new(categories, journals, publications)
}

#[derive(Serialize)]
struct GeneratorRecord<'a> {
    generator: &'static str,
    version: &'static str,
    rng: &'static str,
    spec: &'a GenSpec,
}

/// Generate and write `categories.csv`, `journals.csv`,
/// `publications.jsonl` and `generator.json` into `dir`.
pub fn generate_to_dir(spec: &GenSpec, dir: &Path) -> Result<Corpus> {
    let corpus = generate(spec)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    corpus.write_files(
        &dir.join("categories.csv"),
        &dir.join("journals.csv"),
        &dir.join("publications.jsonl"),
    )?;
    let record = GeneratorRecord {
        generator: "interdisc synthgen",
        version: env!("CARGO_PKG_VERSION"),
        rng: RNG_ALGORITHM,
        spec,
    };
    let meta = dir.join("generator.json");
    let mut text = serde_json::to_string_pretty(&record)?;
    text.push('\n');
    fs::write(&meta, text).map_err(|e| Error::io(&meta, e))?;
    Ok(corpus)
}
