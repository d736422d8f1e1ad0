//! Multi-task-learning augmentation: five target-side auxiliary tasks.
//!
//! Each task maps one sentence pair to one synthetic pair. [`run_mtl`]
//! applies every requested task to every pair and returns the synthetic
//! corpus, task-major. Tasks are never composed on the same sentence; a
//! combination such as token+swap is the concatenation of both outputs.
//!
//! Counts use `floor(alpha * t)` for Token and Replace and
//! `floor(alpha * t / 2)` disjoint swaps for Swap, where `t` is the target
//! length.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{
    extract_dictionary, naive_align, AlignmentSet, BilingualDictionary, Link, ParallelCorpus, Sentence, SentencePair,
    Token,
};
use crate::error::{Error, Result};
use crate::sampling::{sample_without_replacement, Rng, SeedSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MtlTask {
    Swap,
    Token,
    Source,
    Reverse,
    Replace,
}

impl MtlTask {
    pub const ALL: [MtlTask; 5] = [
        MtlTask::Swap,
        MtlTask::Token,
        MtlTask::Source,
        MtlTask::Reverse,
        MtlTask::Replace,
    ];

    /// Lowercase name, also used as the seed stream label.
    pub fn name(self) -> &'static str {
        match self {
            MtlTask::Swap => "swap",
            MtlTask::Token => "token",
            MtlTask::Source => "source",
            MtlTask::Reverse => "reverse",
            MtlTask::Replace => "replace",
        }
    }
}

impl fmt::Display for MtlTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MtlTask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MtlTask::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown MTL task {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct MtlSpec {
    pub tasks: Vec<MtlTask>,
    pub alpha: f64,
    pub unk_token: Token,
    /// Defaults to a dictionary extracted from the aligned corpus itself.
    pub dictionary: Option<BilingualDictionary>,
    /// Defaults to [`naive_align`] per pair.
    pub alignments: Option<AlignmentSet>,
}

impl MtlSpec {
    pub fn new(tasks: Vec<MtlTask>, alpha: f64) -> Self {
        MtlSpec {
            tasks,
            alpha,
            unk_token: Token::new("UNK").expect("valid token"),
            dictionary: None,
            alignments: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tasks.is_empty() {
            return Err(Error::InvalidParameter("at least one MTL task is required".into()));
        }
        let distinct: BTreeSet<_> = self.tasks.iter().collect();
        if distinct.len() != self.tasks.len() {
            return Err(Error::InvalidParameter("MTL tasks must be distinct".into()));
        }
        check_fraction("alpha", self.alpha)?;
        if self.tasks.contains(&MtlTask::Replace) {
            if let Some(d) = &self.dictionary {
                if d.is_empty() {
                    return Err(Error::EmptyDictionary);
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn check_fraction(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in [0, 1], got {value}"
        )));
    }
    Ok(())
}

pub(crate) fn scaled_count(alpha: f64, t: usize) -> usize {
    (alpha * t as f64).floor() as usize
}

/// Exchanges `k` disjoint random position pairs in place.
pub(crate) fn swap_disjoint(tokens: &mut [Token], k: usize, rng: &mut Rng) {
    if tokens.len() < 2 || k == 0 {
        return;
    }
    let positions = sample_without_replacement(rng, tokens.len(), 2 * k).expect("2k <= t");
    for pair in positions.chunks_exact(2) {
        tokens.swap(pair[0], pair[1]);
    }
}

pub fn task_swap(pair: &SentencePair, alpha: f64, rng: &mut Rng) -> SentencePair {
    let t = pair.target.len();
    let k = (alpha * t as f64 / 2.0).floor() as usize;
    let mut tokens = pair.target.tokens().to_vec();
    swap_disjoint(&mut tokens, k, rng);
    pair.with_target(Sentence::new(tokens))
}

pub fn task_token(pair: &SentencePair, alpha: f64, unk: &Token, rng: &mut Rng) -> SentencePair {
    let t = pair.target.len();
    let m = scaled_count(alpha, t);
    let mut tokens = pair.target.tokens().to_vec();
    for i in sample_without_replacement(rng, t, m).expect("m <= t") {
        tokens[i] = unk.clone();
    }
    pair.with_target(Sentence::new(tokens))
}

pub fn task_source(pair: &SentencePair) -> SentencePair {
    pair.with_target(pair.source.clone())
}

pub fn task_reverse(pair: &SentencePair) -> SentencePair {
    pair.with_target(pair.target.tokens().iter().rev().cloned().collect())
}

/// Replaces aligned token pairs with dictionary phrase pairs.
///
/// `min(floor(alpha * t), |links|)` links are drawn without replacement; for
/// each, in draw order, a dictionary entry is drawn uniformly (with
/// replacement across links). The linked source token becomes the entry's
/// source phrase and the linked target token its target phrase. A position
/// already rewritten by an earlier link keeps its first replacement.
/// `links = None` falls back to [`naive_align`].
pub fn task_replace(
    pair: &SentencePair,
    alpha: f64,
    dictionary: &BilingualDictionary,
    links: Option<&BTreeSet<Link>>,
    rng: &mut Rng,
) -> Result<SentencePair> {
    if dictionary.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let fallback;
    let links: Vec<Link> = match links {
        Some(l) => l.iter().copied().collect(),
        None => {
            fallback = naive_align(pair);
            fallback.iter().copied().collect()
        }
    };
    let m = scaled_count(alpha, pair.target.len()).min(links.len());
    if m == 0 {
        return Ok(pair.clone());
    }
    let entries = dictionary.entries();
    let mut src_sub: Vec<Option<&Sentence>> = vec![None; pair.source.len()];
    let mut tgt_sub: Vec<Option<&Sentence>> = vec![None; pair.target.len()];
    for li in sample_without_replacement(rng, links.len(), m)? {
        let link = links[li];
        let entry = &entries[rng.below(entries.len())];
        src_sub[link.source].get_or_insert(&entry.source);
        tgt_sub[link.target].get_or_insert(&entry.target);
    }
    Ok(SentencePair::new(
        substitute(&pair.source, &src_sub),
        substitute(&pair.target, &tgt_sub),
        pair.index,
    ))
}

fn substitute(sentence: &Sentence, subs: &[Option<&Sentence>]) -> Sentence {
    let mut out = Vec::with_capacity(sentence.len());
    for (tok, sub) in sentence.tokens().iter().zip(subs) {
        match sub {
            Some(phrase) => out.extend(phrase.tokens().iter().cloned()),
            None => out.push(tok.clone()),
        }
    }
    Sentence::new(out)
}

/// Synthetic corpus of size `|tasks| * |corpus|`, ordered task-major.
pub fn run_mtl(corpus: &ParallelCorpus, spec: &MtlSpec, seed: SeedSpec) -> Result<ParallelCorpus> {
    spec.validate()?;
    if let Some(a) = &spec.alignments {
        if a.len() != corpus.len() {
            return Err(Error::LineCountMismatch {
                left_name: "alignments".into(),
                left: a.len(),
                right_name: "corpus".into(),
                right: corpus.len(),
            });
        }
    }

    let mut extracted = None;
    if spec.tasks.contains(&MtlTask::Replace) && spec.dictionary.is_none() && !corpus.is_empty() {
        let d = match &spec.alignments {
            Some(a) => extract_dictionary(corpus, a),
            None => extract_dictionary(corpus, &AlignmentSet::naive(corpus)),
        };
        if d.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        extracted = Some(d);
    }
    let dictionary = spec.dictionary.as_ref().or(extracted.as_ref());

    let mut out = Vec::with_capacity(spec.tasks.len() * corpus.len());
    for &task in &spec.tasks {
        for (i, pair) in corpus.pairs().iter().enumerate() {
            let mut rng = seed.rng_for(task.name(), i);
            let aug = match task {
                MtlTask::Swap => task_swap(pair, spec.alpha, &mut rng),
                MtlTask::Token => task_token(pair, spec.alpha, &spec.unk_token, &mut rng),
                MtlTask::Source => task_source(pair),
                MtlTask::Reverse => task_reverse(pair),
                MtlTask::Replace => {
                    let links = spec.alignments.as_ref().and_then(|a| a.links(i));
                    task_replace(pair, spec.alpha, dictionary.expect("resolved above"), links, &mut rng)?
                }
            };
            out.push(aug);
        }
    }
    Ok(corpus.with_pairs(out))
}
