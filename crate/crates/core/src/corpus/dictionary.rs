use std::collections::HashSet;
use std::path::Path;

use serde::Serialize;

use super::{read_utf8, tokenize, AlignmentSet, ParallelCorpus, Sentence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DictEntry {
    pub source: Sentence,
    pub target: Sentence,
}

/// Phrase-level bilingual lexicon. Both sides of every entry are non-empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BilingualDictionary {
    entries: Vec<DictEntry>,
}

impl BilingualDictionary {
    pub fn new(entries: Vec<DictEntry>) -> Result<Self> {
        if let Some(bad) = entries.iter().position(|e| e.source.is_empty() || e.target.is_empty()) {
            return Err(Error::MalformedRow {
                line: bad + 1,
                reason: "dictionary entry with an empty side".into(),
            });
        }
        Ok(BilingualDictionary { entries })
    }

    pub fn entries(&self) -> &[DictEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn parse_dictionary(text: &str) -> Result<BilingualDictionary> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 2 {
            return Err(Error::MalformedRow {
                line: i + 1,
                reason: format!("expected 2 tab-separated columns, found {}", cols.len()),
            });
        }
        let (source, target) = (tokenize(cols[0]), tokenize(cols[1]));
        if source.is_empty() || target.is_empty() {
            return Err(Error::MalformedRow {
                line: i + 1,
                reason: "empty column".into(),
            });
        }
        entries.push(DictEntry { source, target });
    }
    Ok(BilingualDictionary { entries })
}

pub fn load_dictionary(path: &Path) -> Result<BilingualDictionary> {
    parse_dictionary(&read_utf8(path)?)
}

/// Single-token entries for every distinct aligned token pair, in corpus order.
pub fn extract_dictionary(corpus: &ParallelCorpus, alignments: &AlignmentSet) -> BilingualDictionary {
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (i, pair) in corpus.pairs().iter().enumerate() {
        let Some(links) = alignments.links(i) else { continue };
        for link in links {
            let (Some(s), Some(t)) = (
                pair.source.tokens().get(link.source),
                pair.target.tokens().get(link.target),
            ) else {
                continue;
            };
            if seen.insert((s.clone(), t.clone())) {
                entries.push(DictEntry {
                    source: Sentence::new(vec![s.clone()]),
                    target: Sentence::new(vec![t.clone()]),
                });
            }
        }
    }
    BilingualDictionary { entries }
}
