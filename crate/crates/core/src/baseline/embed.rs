use std::collections::HashMap;

use crate::corpus::{EmbeddingTable, ParallelCorpus, Sentence, SentencePair, Token};
use crate::error::{Error, Result};
use crate::mtl::{check_fraction, scaled_count};
use crate::sampling::{sample_without_replacement, Rng, SeedSpec};
use crate::scalar::Real;

pub const STREAM: &str = "embed";

#[derive(Debug, Clone)]
pub struct EmbedReplaceSpec<F> {
    pub alpha: f64,
    pub embeddings: EmbeddingTable<F>,
    /// 1 picks the closest neighbor.
    pub neighbor_rank: usize,
}

impl<F: Real> EmbedReplaceSpec<F> {
    pub fn new(alpha: f64, embeddings: EmbeddingTable<F>) -> Self {
        EmbedReplaceSpec {
            alpha,
            embeddings,
            neighbor_rank: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_fraction("alpha", self.alpha)?;
        if self.neighbor_rank == 0 {
            return Err(Error::InvalidParameter("neighbor_rank must be positive".into()));
        }
        if self.embeddings.is_empty() {
            return Err(Error::EmptyEmbeddings);
        }
        Ok(())
    }
}

/// Memoized rank-`r` neighbor lookups; a full scan per distinct word.
pub struct NeighborCache<'a, F> {
    table: &'a EmbeddingTable<F>,
    rank: usize,
    memo: HashMap<Token, Option<Token>>,
}

impl<'a, F: Real> NeighborCache<'a, F> {
    pub fn new(table: &'a EmbeddingTable<F>, rank: usize) -> Self {
        NeighborCache {
            table,
            rank,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, word: &Token) -> Option<Token> {
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        let found = self
            .table
            .nearest(word.as_str(), self.rank)
            .map(|w| Token::new(w).expect("embedding keys are whitespace-free"));
        self.memo.insert(word.clone(), found.clone());
        found
    }
}

/// Replaces `floor(alpha * t)` in-vocabulary target tokens (fewer if the
/// sentence has fewer) by their embedding neighbor. A word without a
/// neighbor of the requested rank is left as is.
pub fn embed_replace_pair<F: Real>(
    pair: &SentencePair,
    alpha: f64,
    cache: &mut NeighborCache<'_, F>,
    rng: &mut Rng,
) -> SentencePair {
    let mut tokens = pair.target.tokens().to_vec();
    let candidates: Vec<usize> = (0..tokens.len())
        .filter(|&i| cache.table.contains(tokens[i].as_str()))
        .collect();
    let m = scaled_count(alpha, tokens.len()).min(candidates.len());
    for ci in sample_without_replacement(rng, candidates.len(), m).expect("m <= candidates") {
        let pos = candidates[ci];
        if let Some(n) = cache.get(&tokens[pos]) {
            tokens[pos] = n;
        }
    }
    pair.with_target(Sentence::new(tokens))
}

pub fn embed_replace<F: Real>(
    corpus: &ParallelCorpus,
    spec: &EmbedReplaceSpec<F>,
    seed: SeedSpec,
) -> Result<ParallelCorpus> {
    spec.validate()?;
    let mut cache = NeighborCache::new(&spec.embeddings, spec.neighbor_rank);
    let out = corpus
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, pair)| embed_replace_pair(pair, spec.alpha, &mut cache, &mut seed.rng_for(STREAM, i)))
        .collect();
    Ok(corpus.with_pairs(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{detokenize, parse_embeddings, tokenize};

    fn table() -> EmbeddingTable<f64> {
        parse_embeddings("3 2\na 1 0\nb 0.9 0.1\nc 0 1\n").unwrap()
    }

    fn corpus(targets: &[&str]) -> ParallelCorpus {
        ParallelCorpus::from_sentences("vi", "ba", targets.iter().map(|t| (tokenize("src"), tokenize(t)))).unwrap()
    }

    #[test]
    fn nearest_neighbor_replacement() {
        let c = corpus(&["a"]);
        let out = embed_replace(&c, &EmbedReplaceSpec::new(1.0, table()), SeedSpec::new(0)).unwrap();
        assert_eq!(detokenize(&out.pairs()[0].target), "b");
    }

    #[test]
    fn identity_cases() {
        let c = corpus(&["a b c", "zz yy"]);
        let out = embed_replace(&c, &EmbedReplaceSpec::new(0.0, table()), SeedSpec::new(0)).unwrap();
        assert_eq!(out, c);
        let oov = corpus(&["zz yy xx"]);
        let out = embed_replace(&oov, &EmbedReplaceSpec::new(1.0, table()), SeedSpec::new(0)).unwrap();
        assert_eq!(out, oov);
    }

    #[test]
    fn errors() {
        let c = corpus(&["a"]);
        let empty = EmbeddingTable::<f64>::new(2).unwrap();
        assert!(matches!(
            embed_replace(&c, &EmbedReplaceSpec::new(0.5, empty), SeedSpec::new(0)),
            Err(Error::EmptyEmbeddings)
        ));
        let mut spec = EmbedReplaceSpec::new(0.5, table());
        spec.neighbor_rank = 0;
        assert!(embed_replace(&c, &spec, SeedSpec::new(0)).is_err());
    }

    #[test]
    fn token_count_preserved_and_rank_two() {
        let c = corpus(&["a x c a", "b"]);
        let mut spec = EmbedReplaceSpec::new(1.0, table());
        spec.neighbor_rank = 2;
        let out = embed_replace(&c, &spec, SeedSpec::new(5)).unwrap();
        assert_eq!(detokenize(&out.pairs()[0].target), "c x a c");
        assert_eq!(out.pairs()[1].target.len(), 1);
    }

    #[test]
    fn works_with_f32_tables() {
        let t: EmbeddingTable<f32> = parse_embeddings("3 2\na 1 0\nb 0.9 0.1\nc 0 1\n").unwrap();
        let out = embed_replace(&corpus(&["a"]), &EmbedReplaceSpec::new(1.0, t), SeedSpec::new(0)).unwrap();
        assert_eq!(detokenize(&out.pairs()[0].target), "b");
    }
}
