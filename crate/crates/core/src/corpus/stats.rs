use std::collections::HashSet;

use serde::Serialize;

use super::{ParallelCorpus, Sentence};
use crate::scalar::Real;

/// Sentence-length summary for one side. All zero for an empty corpus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LengthSummary<F> {
    pub min: usize,
    pub mean: F,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats<F> {
    pub pair_count: usize,
    pub source_token_count: usize,
    pub target_token_count: usize,
    pub source_vocab_size: usize,
    pub target_vocab_size: usize,
    pub source_length: LengthSummary<F>,
    pub target_length: LengthSummary<F>,
}

fn side<'a, F: Real>(sentences: impl Iterator<Item = &'a Sentence>) -> (usize, usize, LengthSummary<F>) {
    let mut vocab = HashSet::new();
    let (mut total, mut n) = (0usize, 0usize);
    let (mut min, mut max) = (usize::MAX, 0usize);
    for s in sentences {
        n += 1;
        total += s.len();
        min = min.min(s.len());
        max = max.max(s.len());
        vocab.extend(s.tokens().iter().map(|t| t.as_str()));
    }
    let summary = if n == 0 {
        LengthSummary {
            min: 0,
            mean: F::zero(),
            max: 0,
        }
    } else {
        LengthSummary {
            min,
            mean: F::from_usize_lossy(total) / F::from_usize_lossy(n),
            max,
        }
    };
    (total, vocab.len(), summary)
}

pub fn corpus_stats<F: Real>(corpus: &ParallelCorpus) -> CorpusStats<F> {
    let (source_token_count, source_vocab_size, source_length) = side(corpus.iter().map(|p| &p.source));
    let (target_token_count, target_vocab_size, target_length) = side(corpus.iter().map(|p| &p.target));
    CorpusStats {
        pair_count: corpus.len(),
        source_token_count,
        target_token_count,
        source_vocab_size,
        target_vocab_size,
        source_length,
        target_length,
    }
}
