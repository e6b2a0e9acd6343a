use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::corpus::CategoryId;
use crate::error::{Error, Result};
use crate::value::{format_cell, parse_cell, MeasureValue};

/// Categories × measures table of values.
///
/// Stored as CSV: a `# config_hash=<hex>` comment line, a header
/// `category,<measure ids>`, then one row per category. Undefined cells are
/// written as `NA(reason)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    categories: Vec<CategoryId>,
    measures: Vec<String>,
    /// `cells[category][measure]`
    cells: Vec<Vec<MeasureValue>>,
    config_hash: String,
}

impl MeasureReport {
    pub fn new(
        categories: Vec<CategoryId>,
        measures: Vec<String>,
        cells: Vec<Vec<MeasureValue>>,
        config_hash: impl Into<String>,
    ) -> Result<Self> {
        if cells.len() != categories.len() || cells.iter().any(|r| r.len() != measures.len()) {
            return Err(Error::Invariant(
                "report cells do not match its shape".into(),
            ));
        }
        if let Some(Ok(v)) = cells
            .iter()
            .flatten()
            .find(|v| matches!(v, Ok(x) if !x.is_finite()))
        {
            return Err(Error::Invariant(format!("non-finite report value {v}")));
        }
        Ok(MeasureReport {
            categories,
            measures,
            cells,
            config_hash: config_hash.into(),
        })
    }

    /// Build column by column.
    pub fn from_columns(
        categories: Vec<CategoryId>,
        columns: Vec<(String, Vec<MeasureValue>)>,
        config_hash: impl Into<String>,
    ) -> Result<Self> {
        let n = categories.len();
        if columns.iter().any(|(_, c)| c.len() != n) {
            return Err(Error::Invariant(
                "column length differs from category count".into(),
            ));
        }
        let cells = (0..n)
            .map(|i| columns.iter().map(|(_, c)| c[i]).collect())
            .collect();
        let measures = columns.into_iter().map(|(m, _)| m).collect();
        MeasureReport::new(categories, measures, cells, config_hash)
    }

    pub fn categories(&self) -> &[CategoryId] {
        &self.categories
    }

    pub fn measures(&self) -> &[String] {
        &self.measures
    }

    pub fn config_hash(&self) -> &str {
        &self.config_hash
    }

    pub fn rows(&self) -> &[Vec<MeasureValue>] {
        &self.cells
    }

    pub fn value(&self, category: usize, measure: usize) -> MeasureValue {
        self.cells[category][measure]
    }

    pub fn measure_index(&self, name: &str) -> Result<usize> {
        self.measures
            .iter()
            .position(|m| m == name)
            .ok_or_else(|| Error::UnknownColumn {
                name: name.to_string(),
                available: self.measures.clone(),
            })
    }

    pub fn category_index(&self, id: &str) -> Result<usize> {
        self.categories
            .iter()
            .position(|c| c.as_str() == id)
            .ok_or_else(|| Error::UnknownCategory(id.to_string()))
    }

    pub fn column(&self, name: &str) -> Result<Vec<MeasureValue>> {
        let m = self.measure_index(name)?;
        Ok(self.column_at(m))
    }

    pub fn column_at(&self, m: usize) -> Vec<MeasureValue> {
        self.cells.iter().map(|row| row[m]).collect()
    }

    /// Keep only the named columns, in the given order.
    pub fn select(&self, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| self.measure_index(n))
            .collect::<Result<Vec<_>>>()?;
        let cells = self
            .cells
            .iter()
            .map(|row| idx.iter().map(|&m| row[m]).collect())
            .collect();
        MeasureReport::new(
            self.categories.clone(),
            names.iter().map(|n| n.to_string()).collect(),
            cells,
            self.config_hash.clone(),
        )
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = format!("# config_hash={}\n", self.config_hash);
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let mut header = vec!["category".to_string()];
        header.extend(self.measures.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (cat, row) in self.categories.iter().zip(&self.cells) {
            let mut record = vec![cat.as_str().to_string()];
            record.extend(row.iter().map(format_cell));
            w.write_record(&record).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory write");
        out.push_str(std::str::from_utf8(&bytes).expect("utf-8 input"));
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(self.to_csv_string().as_bytes())
            .map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut first = String::new();
        BufReader::new(&file)
            .read_line(&mut first)
            .map_err(|e| Error::io(path, e))?;
        let config_hash = first
            .trim_end()
            .strip_prefix("# config_hash=")
            .unwrap_or_default()
            .to_string();

        let parse_err = |line: usize, message: String| Error::Parse {
            file: path.display().to_string(),
            line,
            message,
        };
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_path(path)?;
        let header = reader.headers()?.clone();
        if header.get(0) != Some("category") {
            return Err(parse_err(1, "first column must be `category`".into()));
        }
        let measures: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut categories = Vec::new();
        let mut cells = Vec::new();
        for record in reader.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let mut fields = record.iter();
            categories.push(CategoryId::from(fields.next().unwrap_or_default()));
            let row = fields
                .map(|f| parse_cell(f).map_err(|m| parse_err(line, m)))
                .collect::<Result<Vec<_>>>()?;
            cells.push(row);
        }
        MeasureReport::new(categories, measures, cells, config_hash)
    }
}
