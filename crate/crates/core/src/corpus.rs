//! Corpus data model: categories with research areas, journals assigned to
//! one or more categories, and publications with their reference lists.
//!
//! A [`Corpus`] is validated once at construction and immutable afterwards.
//! Every cross-reference is resolved to a dense index so downstream code
//! never touches string ids in hot loops. Index order is load order.
//!
//! File formats:
//!
//! * `categories.csv` with header `category_id,area_id`
//! * `journals.csv` with header `journal_id,category_ids`, the category list
//!   separated by `;`
//! * `publications.jsonl`, one object per line:
//!   `{"id": "...", "journal": "...", "refs": [{"pub": "..."} | {"journal": "..."}]}`

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

string_id!(
    /// Subject category identifier.
    CategoryId
);
string_id!(JournalId);
string_id!(PublicationId);
string_id!(
    /// Research area, one level above categories.
    AreaId
);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    pub id: CategoryId,
    pub area: AreaId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Journal {
    pub id: JournalId,
    /// Ordered, non-empty, duplicate-free.
    pub categories: Vec<CategoryId>,
}

/// A cited work. Internal references point at a publication in the corpus;
/// external ones only know the journal they appeared in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reference {
    #[serde(rename = "pub")]
    Internal(PublicationId),
    #[serde(rename = "journal")]
    External(JournalId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Publication {
    pub id: PublicationId,
    pub journal: JournalId,
    #[serde(default)]
    pub refs: Vec<Reference>,
}

impl Reference {
    /// Reference to a publication in the corpus.
    pub fn publication(id: impl Into<PublicationId>) -> Self {
        Reference::Internal(id.into())
    }

    /// Reference to a work outside the corpus, known only by its journal.
    pub fn journal(id: impl Into<JournalId>) -> Self {
        Reference::External(id.into())
    }
}

/// Incremental construction of a [`Corpus`] in code.
///
/// ```
/// use interdisc::corpus::{CorpusBuilder, Reference};
///
/// let corpus = CorpusBuilder::new()
///     .category("A", "life")
///     .category("B", "physical")
///     .journal("J1", &["A", "B"])
///     .publication("P1", "J1", vec![Reference::journal("J1")])
///     .build()
///     .unwrap();
/// assert_eq!(corpus.n_categories(), 2);
/// ```
#[derive(Debug, Default, Clone)]
pub struct CorpusBuilder {
    categories: Vec<Category>,
    journals: Vec<Journal>,
    publications: Vec<Publication>,
}

impl CorpusBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn category(mut self, id: &str, area: &str) -> Self {
        self.categories.push(Category {
            id: id.into(),
            area: area.into(),
        });
        self
    }

    pub fn journal(mut self, id: &str, categories: &[&str]) -> Self {
        self.journals.push(Journal {
            id: id.into(),
            categories: categories.iter().map(|&c| c.into()).collect(),
        });
        self
    }

    pub fn publication(mut self, id: &str, journal: &str, refs: Vec<Reference>) -> Self {
        self.publications.push(Publication {
            id: id.into(),
            journal: journal.into(),
            refs,
        });
        self
    }

    pub fn build(self) -> Result<Corpus> {
        Corpus::new(self.categories, self.journals, self.publications)
    }
}

/// A reference resolved to dense indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefTarget {
    /// Index of the cited publication.
    Internal(usize),
    /// Index of the cited journal.
    External(usize),
}

#[derive(Debug, Clone)]
pub struct Corpus {
    categories: Vec<Category>,
    journals: Vec<Journal>,
    publications: Vec<Publication>,

    category_index: HashMap<CategoryId, usize>,
    journal_index: HashMap<JournalId, usize>,
    publication_index: HashMap<PublicationId, usize>,

    areas: Vec<AreaId>,
    category_area: Vec<usize>,
    journal_categories: Vec<Vec<usize>>,
    category_journals: Vec<Vec<usize>>,
    journal_publications: Vec<Vec<usize>>,
    publication_journal: Vec<usize>,
    publication_refs: Vec<Vec<RefTarget>>,
    cited_by: Vec<Vec<usize>>,
}

impl Corpus {
    /// Validate the three tables and build every index.
    pub fn new(
        categories: Vec<Category>,
        journals: Vec<Journal>,
        publications: Vec<Publication>,
    ) -> Result<Self> {
        let mut category_index = HashMap::with_capacity(categories.len());
        let mut areas: Vec<AreaId> = Vec::new();
        let mut area_index: HashMap<AreaId, usize> = HashMap::new();
        let mut category_area = Vec::with_capacity(categories.len());
        for (idx, cat) in categories.iter().enumerate() {
            check_non_empty("category", cat.id.as_str())?;
            check_non_empty("area", cat.area.as_str())?;
            if category_index.insert(cat.id.clone(), idx).is_some() {
                return Err(Error::DuplicateId {
                    kind: "category",
                    id: cat.id.0.clone(),
                });
            }
            let area = *area_index.entry(cat.area.clone()).or_insert_with(|| {
                areas.push(cat.area.clone());
                areas.len() - 1
            });
            category_area.push(area);
        }

        let mut journal_index = HashMap::with_capacity(journals.len());
        let mut journal_categories = Vec::with_capacity(journals.len());
        let mut category_journals = vec![Vec::new(); categories.len()];
        for (idx, journal) in journals.iter().enumerate() {
            check_non_empty("journal", journal.id.as_str())?;
            if journal_index.insert(journal.id.clone(), idx).is_some() {
                return Err(Error::DuplicateId {
                    kind: "journal",
                    id: journal.id.0.clone(),
                });
            }
            if journal.categories.is_empty() {
                return Err(Error::Invariant(format!(
                    "journal {:?} has no categories",
                    journal.id.0
                )));
            }
            let mut resolved = Vec::with_capacity(journal.categories.len());
            for cat in &journal.categories {
                let &c = category_index.get(cat).ok_or_else(|| Error::DanglingId {
                    kind: "category",
                    id: cat.0.clone(),
                    context: format!("journal {:?}", journal.id.0),
                })?;
                if resolved.contains(&c) {
                    return Err(Error::Invariant(format!(
                        "journal {:?} lists category {:?} twice",
                        journal.id.0, cat.0
                    )));
                }
                resolved.push(c);
                category_journals[c].push(idx);
            }
            journal_categories.push(resolved);
        }

        let mut publication_index = HashMap::with_capacity(publications.len());
        let mut publication_journal = Vec::with_capacity(publications.len());
        let mut journal_publications = vec![Vec::new(); journals.len()];
        for (idx, publication) in publications.iter().enumerate() {
            check_non_empty("publication", publication.id.as_str())?;
            if publication_index
                .insert(publication.id.clone(), idx)
                .is_some()
            {
                return Err(Error::DuplicateId {
                    kind: "publication",
                    id: publication.id.0.clone(),
                });
            }
            let &j = journal_index
                .get(&publication.journal)
                .ok_or_else(|| Error::DanglingId {
                    kind: "journal",
                    id: publication.journal.0.clone(),
                    context: format!("publication {:?}", publication.id.0),
                })?;
            publication_journal.push(j);
            journal_publications[j].push(idx);
        }

        // Second pass: references may point forward in the file.
        let mut publication_refs = Vec::with_capacity(publications.len());
        let mut cited_by = vec![Vec::new(); publications.len()];
        for (idx, publication) in publications.iter().enumerate() {
            let mut targets = Vec::with_capacity(publication.refs.len());
            for reference in &publication.refs {
                let target = match reference {
                    Reference::Internal(cited) => {
                        let &q = publication_index
                            .get(cited)
                            .ok_or_else(|| Error::DanglingId {
                                kind: "publication",
                                id: cited.0.clone(),
                                context: format!("references of {:?}", publication.id.0),
                            })?;
                        cited_by[q].push(idx);
                        RefTarget::Internal(q)
                    }
                    Reference::External(journal) => {
                        let &j = journal_index
                            .get(journal)
                            .ok_or_else(|| Error::DanglingId {
                                kind: "journal",
                                id: journal.0.clone(),
                                context: format!("references of {:?}", publication.id.0),
                            })?;
                        RefTarget::External(j)
                    }
                };
                targets.push(target);
            }
            publication_refs.push(targets);
        }

        Ok(Corpus {
            categories,
            journals,
            publications,
            category_index,
            journal_index,
            publication_index,
            areas,
            category_area,
            journal_categories,
            category_journals,
            journal_publications,
            publication_journal,
            publication_refs,
            cited_by,
        })
    }

    pub fn categories(&self) -> &[Category] {
        &self.categories
    }

    pub fn journals(&self) -> &[Journal] {
        &self.journals
    }

    pub fn publications(&self) -> &[Publication] {
        &self.publications
    }

    pub fn n_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn areas(&self) -> &[AreaId] {
        &self.areas
    }

    pub fn category_idx(&self, id: &str) -> Option<usize> {
        self.category_index.get(id).copied()
    }

    pub fn journal_idx(&self, id: &str) -> Option<usize> {
        self.journal_index.get(id).copied()
    }

    pub fn publication_idx(&self, id: &str) -> Option<usize> {
        self.publication_index.get(id).copied()
    }

    pub(crate) fn require_category(&self, id: &str) -> Result<usize> {
        self.category_idx(id)
            .ok_or_else(|| Error::UnknownCategory(id.to_owned()))
    }

    /// Area index of category `c`.
    pub fn category_area(&self, c: usize) -> usize {
        self.category_area[c]
    }

    /// Category indices of journal `j`, in assignment order.
    pub fn journal_categories(&self, j: usize) -> &[usize] {
        &self.journal_categories[j]
    }

    /// Journal indices assigned to category `c`, in load order.
    pub fn category_journal_indices(&self, c: usize) -> &[usize] {
        &self.category_journals[c]
    }

    pub fn journal_publications(&self, j: usize) -> &[usize] {
        &self.journal_publications[j]
    }

    pub fn publication_journal(&self, p: usize) -> usize {
        self.publication_journal[p]
    }

    pub fn references(&self, p: usize) -> &[RefTarget] {
        &self.publication_refs[p]
    }

    /// Publications holding an internal reference to `p`, one entry per
    /// citing reference, in load order.
    pub fn cited_by(&self, p: usize) -> &[usize] {
        &self.cited_by[p]
    }

    /// Journal a reference points at (the cited publication's journal for
    /// internal references).
    pub fn target_journal(&self, target: RefTarget) -> usize {
        match target {
            RefTarget::Internal(q) => self.publication_journal[q],
            RefTarget::External(j) => j,
        }
    }

    /// Publications whose journal is assigned to category `c`, grouped by
    /// journal in load order.
    pub fn category_publications(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.category_journals[c]
            .iter()
            .flat_map(move |&j| self.journal_publications[j].iter().copied())
    }

    /// Journals assigned to category `id`.
    pub fn category_journals(&self, id: &str) -> Result<Vec<&JournalId>> {
        let c = self.require_category(id)?;
        Ok(self.category_journals[c]
            .iter()
            .map(|&j| &self.journals[j].id)
            .collect())
    }

    pub fn total_references(&self) -> usize {
        self.publication_refs.iter().map(Vec::len).sum()
    }

    pub fn total_internal_references(&self) -> usize {
        self.publication_refs
            .iter()
            .flatten()
            .filter(|r| matches!(r, RefTarget::Internal(_)))
            .count()
    }

    /// Write the corpus back out in the three input formats.
    pub fn write_files(
        &self,
        category_path: &Path,
        journal_path: &Path,
        publication_path: &Path,
    ) -> Result<()> {
        let mut w = csv::Writer::from_path(category_path)?;
        w.write_record(["category_id", "area_id"])?;
        for cat in &self.categories {
            w.write_record([cat.id.as_str(), cat.area.as_str()])?;
        }
        w.flush().map_err(|e| Error::io(category_path, e))?;

        let mut w = csv::Writer::from_path(journal_path)?;
        w.write_record(["journal_id", "category_ids"])?;
        for journal in &self.journals {
            let cats: Vec<&str> = journal.categories.iter().map(CategoryId::as_str).collect();
            w.write_record([journal.id.as_str(), &cats.join(";")])?;
        }
        w.flush().map_err(|e| Error::io(journal_path, e))?;

        let file = File::create(publication_path).map_err(|e| Error::io(publication_path, e))?;
        let mut out = BufWriter::new(file);
        for publication in &self.publications {
            serde_json::to_writer(&mut out, publication)?;
            out.write_all(b"\n")
                .map_err(|e| Error::io(publication_path, e))?;
        }
        out.flush().map_err(|e| Error::io(publication_path, e))?;
        Ok(())
    }
}

fn check_non_empty(kind: &'static str, id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::Invariant(format!("empty {kind} id")));
    }
    Ok(())
}

/// Load and validate a corpus from its three files.
pub fn load_corpus(
    category_path: &Path,
    journal_path: &Path,
    publication_path: &Path,
) -> Result<Corpus> {
    let categories = read_categories(category_path)?;
    let journals = read_journals(journal_path)?;
    let publications = read_publications(publication_path)?;
    Corpus::new(categories, journals, publications)
}

fn csv_reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(file))
}

fn check_header(reader: &mut csv::Reader<File>, path: &Path, expected: &[&str]) -> Result<()> {
    let header = reader.headers().map_err(|e| parse_error(path, 1, e))?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Parse {
            file: path.display().to_string(),
            line: 1,
            message: format!(
                "expected header {:?}, found {:?}",
                expected.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    Ok(())
}

fn parse_error(path: &Path, line: usize, err: impl fmt::Display) -> Error {
    Error::Parse {
        file: path.display().to_string(),
        line,
        message: err.to_string(),
    }
}

fn record_line(record: &csv::StringRecord, fallback: usize) -> usize {
    record
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback)
}

pub fn read_categories(path: &Path) -> Result<Vec<Category>> {
    let mut reader = csv_reader(path)?;
    check_header(&mut reader, path, &["category_id", "area_id"])?;
    let mut out = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(n + 2);
            parse_error(path, line, e)
        })?;
        let line = record_line(&record, n + 2);
        if record.len() != 2 {
            return Err(parse_error(path, line, "expected 2 fields"));
        }
        out.push(Category {
            id: CategoryId::from(&record[0]),
            area: AreaId::from(&record[1]),
        });
    }
    Ok(out)
}

pub fn read_journals(path: &Path) -> Result<Vec<Journal>> {
    let mut reader = csv_reader(path)?;
    check_header(&mut reader, path, &["journal_id", "category_ids"])?;
    let mut out = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(n + 2);
            parse_error(path, line, e)
        })?;
        let line = record_line(&record, n + 2);
        if record.len() != 2 {
            return Err(parse_error(path, line, "expected 2 fields"));
        }
        let categories = if record[1].is_empty() {
            Vec::new()
        } else {
            record[1].split(';').map(CategoryId::from).collect()
        };
        out.push(Journal {
            id: JournalId::from(&record[0]),
            categories,
        });
    }
    Ok(out)
}

pub fn read_publications(path: &Path) -> Result<Vec<Publication>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let publication: Publication =
            serde_json::from_str(&line).map_err(|e| parse_error(path, n + 1, e))?;
        out.push(publication);
    }
    Ok(out)
}
