//! Data augmentation and evaluation tooling for low-resource parallel corpora.
//!
//! Augmenters ([`mtl`], [`boundary`], [`baseline`]) consume a
//! [`ParallelCorpus`] and return a synthetic corpus to be appended to the
//! training data. All randomness is derived from a master seed through
//! [`sampling`], so output depends only on the input, parameters and seed.
//!
//! Scoring and embedding code is generic over [`Real`]; the aliases below
//! fix it to `f64`.

pub mod baseline;
pub mod boundary;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod mtl;
pub mod sampling;
pub mod scalar;

pub use corpus::{
    detokenize, tokenize, AlignmentSet, BilingualDictionary, Link, ParallelCorpus, Sentence, SentencePair, Token,
};
pub use error::{Error, Result};
pub use sampling::{Rng, SeedSpec};
pub use scalar::Real;

pub type EmbeddingTable = corpus::EmbeddingTable<f64>;
pub type EmbeddingTableF32 = corpus::EmbeddingTable<f32>;
pub type CorpusStats = corpus::CorpusStats<f64>;
pub type BleuReport = eval::BleuReport<f64>;
pub type TriageReport = eval::TriageReport<f64>;
pub type EmbedReplaceSpec = baseline::EmbedReplaceSpec<f64>;
