//! Interdisciplinarity measures over a publication, journal and category
//! corpus, and the tools to compare them.
//!
//! ```
//! use interdisc::config::Config;
//! use interdisc::corpus::{CorpusBuilder, Reference};
//! use interdisc::pipeline::compute_measures;
//!
//! let corpus = CorpusBuilder::new()
//!     .category("A", "X")
//!     .category("B", "Y")
//!     .journal("J1", &["A"])
//!     .journal("J2", &["B"])
//!     .publication("P1", "J1", vec![Reference::journal("J1"), Reference::journal("J2")])
//!     .publication("P2", "J2", vec![Reference::publication("P1")])
//!     .build()
//!     .unwrap();
//! let bundle = compute_measures(&corpus, &Config::default()).unwrap();
//! let pro = bundle.report.column("pro").unwrap();
//! assert_eq!(pro[0], Ok(0.5));
//! assert_eq!(pro[1], Ok(1.0));
//! ```

pub mod analysis;
pub mod config;
pub mod corpus;
pub mod error;
pub mod histogram;
pub mod matrix;
pub mod measures;
pub mod pipeline;
pub mod similarity;
pub mod synthgen;
pub mod value;

#[cfg(test)]
mod testutil;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/corpus.md")]
mod book_corpus {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/transaction-matrix.md")]
mod book_transaction_matrix {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/similarity.md")]
mod book_similarity {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/overlap.md")]
mod book_overlap {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/diversity.md")]
mod book_diversity {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/distance.md")]
mod book_distance {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/network.md")]
mod book_network {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/analysis.md")]
mod book_analysis {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/synthetic.md")]
mod book_synthetic {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

pub use error::{Error, Result};
pub use value::{MeasureValue, Undefined};
