use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::corpus::{read_utf8, ParallelCorpus, Sentence, SentencePair, Token};
use crate::error::{Error, Result};
use crate::mtl::{check_fraction, scaled_count, swap_disjoint};
use crate::sampling::{sample_without_replacement, uniform_real, Rng, SeedSpec};

pub const STREAM: &str = "eda";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdaOp {
    SynonymReplacement,
    RandomInsertion,
    RandomSwap,
    RandomDeletion,
}

impl EdaOp {
    pub const ALL: [EdaOp; 4] = [
        EdaOp::SynonymReplacement,
        EdaOp::RandomInsertion,
        EdaOp::RandomSwap,
        EdaOp::RandomDeletion,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            EdaOp::SynonymReplacement => "sr",
            EdaOp::RandomInsertion => "ri",
            EdaOp::RandomSwap => "rs",
            EdaOp::RandomDeletion => "rd",
        }
    }

    fn needs_thesaurus(self) -> bool {
        matches!(self, EdaOp::SynonymReplacement | EdaOp::RandomInsertion)
    }
}

impl fmt::Display for EdaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for EdaOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let op = match s.trim().to_ascii_lowercase().as_str() {
            "sr" | "synonym-replacement" => EdaOp::SynonymReplacement,
            "ri" | "random-insertion" => EdaOp::RandomInsertion,
            "rs" | "random-swap" => EdaOp::RandomSwap,
            "rd" | "random-deletion" => EdaOp::RandomDeletion,
            other => return Err(Error::InvalidParameter(format!("unknown EDA operation {other:?}"))),
        };
        Ok(op)
    }
}

/// Monolingual synonym lists keyed by word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Thesaurus {
    synonyms: HashMap<String, Vec<Token>>,
}

impl Thesaurus {
    pub fn insert(&mut self, word: &str, synonym: Token) {
        if synonym.as_str() == word {
            return;
        }
        let list = self.synonyms.entry(word.to_owned()).or_default();
        if !list.contains(&synonym) {
            list.push(synonym);
        }
    }

    pub fn synonyms(&self, word: &str) -> &[Token] {
        self.synonyms.get(word).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.synonyms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.synonyms.len()
    }
}

/// `word TAB syn1,syn2,...`, one headword per line.
pub fn parse_thesaurus(text: &str) -> Result<Thesaurus> {
    let mut t = Thesaurus::default();
    for (i, line) in text.lines().enumerate() {
        let malformed = |reason: &str| Error::MalformedRow {
            line: i + 1,
            reason: reason.to_owned(),
        };
        let (word, syns) = line
            .split_once('\t')
            .ok_or_else(|| malformed("expected word TAB synonyms"))?;
        let word = word.trim();
        if word.is_empty() || word.chars().any(char::is_whitespace) || syns.contains('\t') {
            return Err(malformed("headword must be a single token"));
        }
        let mut any = false;
        for s in syns.split(',') {
            let tok = Token::new(s.trim()).map_err(|_| malformed("synonyms must be single non-empty tokens"))?;
            t.insert(word, tok);
            any = true;
        }
        if !any {
            return Err(malformed("no synonyms"));
        }
    }
    Ok(t)
}

pub fn load_thesaurus(path: &Path) -> Result<Thesaurus> {
    parse_thesaurus(&read_utf8(path)?)
}

#[derive(Debug, Clone)]
pub struct EdaSpec {
    pub alpha: f64,
    pub operations: Vec<EdaOp>,
    pub thesaurus: Option<Thesaurus>,
}

impl EdaSpec {
    pub fn new(alpha: f64, thesaurus: Option<Thesaurus>) -> Self {
        EdaSpec {
            alpha,
            operations: EdaOp::ALL.to_vec(),
            thesaurus,
        }
    }

    /// Operations actually available, in canonical order.
    pub fn effective_operations(&self) -> Result<Vec<EdaOp>> {
        check_fraction("alpha", self.alpha)?;
        if self.operations.is_empty() {
            return Err(Error::InvalidParameter("at least one EDA operation is required".into()));
        }
        let mut ops = Vec::new();
        for op in EdaOp::ALL.into_iter().filter(|op| self.operations.contains(op)) {
            if op.needs_thesaurus() {
                match &self.thesaurus {
                    None => {
                        warn!("no thesaurus supplied; disabling {op}");
                        continue;
                    }
                    Some(t) if t.is_empty() => return Err(Error::EmptyThesaurus),
                    Some(_) => {}
                }
            }
            ops.push(op);
        }
        if ops.is_empty() {
            return Err(Error::EmptyThesaurus);
        }
        Ok(ops)
    }
}

/// Applies one EDA operation to the target side.
pub fn eda_pair(
    pair: &SentencePair,
    op: EdaOp,
    alpha: f64,
    thesaurus: Option<&Thesaurus>,
    rng: &mut Rng,
) -> SentencePair {
    let mut tokens = pair.target.tokens().to_vec();
    let t = tokens.len();
    let empty = Thesaurus::default();
    let thesaurus = thesaurus.unwrap_or(&empty);
    match op {
        EdaOp::SynonymReplacement => {
            let candidates: Vec<usize> = (0..t)
                .filter(|&i| !thesaurus.synonyms(tokens[i].as_str()).is_empty())
                .collect();
            let n = scaled_count(alpha, t).min(candidates.len());
            for ci in sample_without_replacement(rng, candidates.len(), n).expect("n <= candidates") {
                let pos = candidates[ci];
                let syns = thesaurus.synonyms(tokens[pos].as_str());
                tokens[pos] = syns[rng.below(syns.len())].clone();
            }
        }
        EdaOp::RandomInsertion => {
            for _ in 0..scaled_count(alpha, t) {
                let candidates: Vec<usize> = (0..tokens.len())
                    .filter(|&i| !thesaurus.synonyms(tokens[i].as_str()).is_empty())
                    .collect();
                if candidates.is_empty() {
                    break;
                }
                let from = candidates[rng.below(candidates.len())];
                let syns = thesaurus.synonyms(tokens[from].as_str());
                let syn = syns[rng.below(syns.len())].clone();
                let at = rng.below(tokens.len() + 1);
                tokens.insert(at, syn);
            }
        }
        EdaOp::RandomSwap => {
            let k = (alpha * t as f64 / 2.0).floor() as usize;
            swap_disjoint(&mut tokens, k, rng);
        }
        EdaOp::RandomDeletion => {
            if t > 0 {
                let kept: Vec<Token> = tokens
                    .iter()
                    .filter(|_| uniform_real(rng, 0.0f64, 1.0) >= alpha)
                    .cloned()
                    .collect();
                tokens = if kept.is_empty() {
                    vec![tokens[rng.below(t)].clone()]
                } else {
                    kept
                };
            }
        }
    }
    pair.with_target(Sentence::new(tokens))
}

pub fn eda_augment(corpus: &ParallelCorpus, spec: &EdaSpec, seed: SeedSpec) -> Result<ParallelCorpus> {
    let ops = spec.effective_operations()?;
    let out = corpus
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            let mut rng = seed.rng_for(STREAM, i);
            let op = ops[rng.below(ops.len())];
            eda_pair(pair, op, spec.alpha, spec.thesaurus.as_ref(), &mut rng)
        })
        .collect();
    Ok(corpus.with_pairs(out))
}
