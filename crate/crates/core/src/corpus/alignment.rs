//! Word alignments in Pharaoh `i-j` format.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;

use super::{read_utf8, ParallelCorpus, SentencePair};
use crate::error::{Error, Result};

/// Link between a source token position and a target token position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Link {
    pub source: usize,
    pub target: usize,
}

impl Link {
    pub fn new(source: usize, target: usize) -> Self {
        Link { source, target }
    }
}

/// Per-pair link sets, indexed like the corpus they were validated against.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AlignmentSet {
    links: Vec<BTreeSet<Link>>,
}

impl AlignmentSet {
    /// Validates every link against the corpus.
    pub fn new(corpus: &ParallelCorpus, links: Vec<BTreeSet<Link>>) -> Result<Self> {
        if links.len() != corpus.len() {
            return Err(Error::LineCountMismatch {
                left_name: "alignments".into(),
                left: links.len(),
                right_name: "corpus".into(),
                right: corpus.len(),
            });
        }
        for (i, (set, pair)) in links.iter().zip(corpus.pairs()).enumerate() {
            for link in set {
                check_range(i + 1, link, pair)?;
            }
        }
        Ok(AlignmentSet { links })
    }

    /// Naive diagonal alignment for every pair.
    pub fn naive(corpus: &ParallelCorpus) -> Self {
        AlignmentSet {
            links: corpus.pairs().iter().map(naive_align).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn links(&self, pair_index: usize) -> Option<&BTreeSet<Link>> {
        self.links.get(pair_index)
    }
}

fn check_range(line: usize, link: &Link, pair: &SentencePair) -> Result<()> {
    if link.source >= pair.source.len() || link.target >= pair.target.len() {
        return Err(Error::OutOfRangeLink {
            line,
            source_idx: link.source,
            target_idx: link.target,
            source_len: pair.source.len(),
            target_len: pair.target.len(),
        });
    }
    Ok(())
}

fn parse_link(line: usize, item: &str) -> Result<Link> {
    let malformed = || Error::MalformedLink {
        line,
        item: item.to_owned(),
    };
    let (i, j) = item.split_once('-').ok_or_else(malformed)?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(i) || !digits(j) {
        return Err(malformed());
    }
    Ok(Link::new(
        i.parse().map_err(|_| malformed())?,
        j.parse().map_err(|_| malformed())?,
    ))
}

pub fn parse_alignments(text: &str, corpus: &ParallelCorpus) -> Result<AlignmentSet> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() != corpus.len() {
        return Err(Error::LineCountMismatch {
            left_name: "alignments".into(),
            left: lines.len(),
            right_name: "corpus".into(),
            right: corpus.len(),
        });
    }
    let mut links = Vec::with_capacity(lines.len());
    for (i, (line, pair)) in lines.iter().zip(corpus.pairs()).enumerate() {
        let mut set = BTreeSet::new();
        for item in line.split_whitespace() {
            let link = parse_link(i + 1, item)?;
            check_range(i + 1, &link, pair)?;
            set.insert(link);
        }
        links.push(set);
    }
    Ok(AlignmentSet { links })
}

pub fn load_alignments(path: &Path, corpus: &ParallelCorpus) -> Result<AlignmentSet> {
    parse_alignments(&read_utf8(path)?, corpus)
}

/// Diagonal fallback: source position `i` links to `round(i * t_tgt / t_src)`,
/// rounding halves up, clamped to the last target position.
pub fn naive_align(pair: &SentencePair) -> BTreeSet<Link> {
    let (ns, nt) = (pair.source.len(), pair.target.len());
    if ns == 0 || nt == 0 {
        return BTreeSet::new();
    }
    (0..ns)
        .map(|i| {
            let j = (2 * i * nt + ns) / (2 * ns);
            Link::new(i, j.min(nt - 1))
        })
        .collect()
}
