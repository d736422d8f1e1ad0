//! Sentence boundary augmentation.
//!
//! Adjacent pairs `(0,1), (2,3), ...` are merged into one synthetic pair:
//! the first sentence loses its first `ceil(p * len)` tokens and the first
//! `ceil(p * len)` tokens of the second sentence are appended, on both
//! sides independently. `p` is drawn from `[0, p_max)` once per output
//! pair, from the stream `"boundary"` keyed by the index of the first
//! pair. A trailing unpaired sentence is dropped.

use serde::{Deserialize, Serialize};

use crate::corpus::{ParallelCorpus, Sentence, SentencePair};
use crate::error::Result;
use crate::mtl::check_fraction;
use crate::sampling::{uniform_real, SeedSpec};

pub const STREAM: &str = "boundary";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub p_max: f64,
    pub seed: SeedSpec,
}

impl Default for BoundarySpec {
    fn default() -> Self {
        BoundarySpec {
            p_max: 0.3,
            seed: SeedSpec::default(),
        }
    }
}

impl BoundarySpec {
    pub fn new(p_max: f64, seed: SeedSpec) -> Self {
        BoundarySpec { p_max, seed }
    }

    pub fn validate(&self) -> Result<()> {
        check_fraction("p_max", self.p_max)
    }
}

/// `ceil(p * len)`, never more than `len`.
pub fn cut_index(p: f64, len: usize) -> usize {
    ((p * len as f64).ceil() as usize).min(len)
}

fn join(first: &Sentence, second: &Sentence, p: f64) -> Sentence {
    let drop = cut_index(p, first.len());
    let take = cut_index(p, second.len());
    first.tokens()[drop..]
        .iter()
        .chain(&second.tokens()[..take])
        .cloned()
        .collect()
}

pub fn truncate_pair(first: &SentencePair, second: &SentencePair, p: f64) -> SentencePair {
    SentencePair::new(
        join(&first.source, &second.source, p),
        join(&first.target, &second.target, p),
        first.index,
    )
}

pub fn augment_boundary(corpus: &ParallelCorpus, spec: &BoundarySpec) -> Result<ParallelCorpus> {
    spec.validate()?;
    let out = corpus
        .pairs()
        .chunks_exact(2)
        .enumerate()
        .map(|(j, two)| {
            let mut rng = spec.seed.rng_for(STREAM, 2 * j);
            let p = uniform_real(&mut rng, 0.0, spec.p_max);
            truncate_pair(&two[0], &two[1], p)
        })
        .collect();
    Ok(corpus.with_pairs(out))
}
