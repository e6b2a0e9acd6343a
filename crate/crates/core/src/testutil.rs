use crate::corpus::{Corpus, CorpusBuilder, Reference};

pub(crate) fn ext(journal: &str) -> Reference {
    Reference::journal(journal)
}

pub(crate) fn int(publication: &str) -> Reference {
    Reference::publication(publication)
}

pub(crate) fn corpus_from(
    categories: &[(&str, &str)],
    journals: &[(&str, &[&str])],
    publications: &[(&str, &str, Vec<Reference>)],
) -> Corpus {
    let mut b = CorpusBuilder::new();
    for &(id, area) in categories {
        b = b.category(id, area);
    }
    for &(id, cats) in journals {
        b = b.journal(id, cats);
    }
    for (id, journal, refs) in publications {
        b = b.publication(id, journal, refs.clone());
    }
    b.build().unwrap()
}
