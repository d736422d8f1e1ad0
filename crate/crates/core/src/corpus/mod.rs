//! Parallel-corpus data model and file formats.
//!
//! Text is assumed to be pre-tokenized: a token is any maximal run of
//! non-whitespace characters. No linguistic tokenization is applied.

mod alignment;
mod dictionary;
mod embeddings;
mod parallel;
mod stats;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub use alignment::{load_alignments, naive_align, parse_alignments, AlignmentSet, Link};
pub use dictionary::{extract_dictionary, load_dictionary, parse_dictionary, BilingualDictionary, DictEntry};
pub use embeddings::{cosine, load_embeddings, parse_embeddings, EmbeddingTable};
pub use parallel::{load_parallel, read_lines, read_utf8, save_parallel, write_lines_atomic};
pub use stats::{corpus_stats, CorpusStats, LengthSummary};

/// A whitespace-free, non-empty piece of text.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token(Arc<str>);

impl Serialize for Token {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl Token {
    pub fn new(text: &str) -> Result<Self> {
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return Err(Error::InvalidToken(text.to_owned()));
        }
        Ok(Token(Arc::from(text)))
    }

    // Caller guarantees the invariant.
    fn from_run(text: &str) -> Self {
        debug_assert!(!text.is_empty() && !text.chars().any(char::is_whitespace));
        Token(Arc::from(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_numeric(&self) -> bool {
        self.0.chars().all(|c| c.is_ascii_digit())
    }
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Sentence {
    tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence { tokens }
    }

    pub fn empty() -> Self {
        Sentence::default()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<Token> {
        self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl From<Vec<Token>> for Sentence {
    fn from(tokens: Vec<Token>) -> Self {
        Sentence { tokens }
    }
}

impl FromIterator<Token> for Sentence {
    fn from_iter<I: IntoIterator<Item = Token>>(iter: I) -> Self {
        Sentence {
            tokens: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&detokenize(self))
    }
}

pub fn tokenize(text: &str) -> Sentence {
    text.split_whitespace().map(Token::from_run).collect()
}

pub fn detokenize(sentence: &Sentence) -> String {
    let mut out = String::new();
    for (i, tok) in sentence.tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(tok.as_str());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentencePair {
    pub source: Sentence,
    pub target: Sentence,
    pub index: usize,
}

impl SentencePair {
    pub fn new(source: Sentence, target: Sentence, index: usize) -> Self {
        SentencePair { source, target, index }
    }

    /// Convenience constructor from raw text.
    pub fn from_text(source: &str, target: &str, index: usize) -> Self {
        SentencePair::new(tokenize(source), tokenize(target), index)
    }

    pub fn with_target(&self, target: Sentence) -> Self {
        SentencePair {
            source: self.source.clone(),
            target,
            index: self.index,
        }
    }
}

/// Ordered sentence pairs plus language tags. Indices always equal positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParallelCorpus {
    pairs: Vec<SentencePair>,
    source_tag: String,
    target_tag: String,
}

impl ParallelCorpus {
    pub fn new(source_tag: &str, target_tag: &str) -> Result<Self> {
        Self::from_pairs(source_tag, target_tag, Vec::new())
    }

    /// Builds a corpus, renumbering pair indices to their positions.
    pub fn from_pairs(source_tag: &str, target_tag: &str, mut pairs: Vec<SentencePair>) -> Result<Self> {
        if source_tag == target_tag {
            return Err(Error::InvalidParameter(format!(
                "source and target tags must differ (both {source_tag:?})"
            )));
        }
        for (i, p) in pairs.iter_mut().enumerate() {
            p.index = i;
        }
        Ok(ParallelCorpus {
            pairs,
            source_tag: source_tag.to_owned(),
            target_tag: target_tag.to_owned(),
        })
    }

    pub fn from_sentences<I>(source_tag: &str, target_tag: &str, sentences: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Sentence, Sentence)>,
    {
        let pairs = sentences
            .into_iter()
            .enumerate()
            .map(|(i, (s, t))| SentencePair::new(s, t, i))
            .collect();
        Self::from_pairs(source_tag, target_tag, pairs)
    }

    /// Empty corpus with the same tags.
    pub fn empty_like(&self) -> Self {
        ParallelCorpus {
            pairs: Vec::new(),
            source_tag: self.source_tag.clone(),
            target_tag: self.target_tag.clone(),
        }
    }

    pub fn with_pairs(&self, pairs: Vec<SentencePair>) -> Self {
        let mut out = self.empty_like();
        for (i, mut p) in pairs.into_iter().enumerate() {
            p.index = i;
            out.pairs.push(p);
        }
        out
    }

    pub fn pairs(&self) -> &[SentencePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn source_tag(&self) -> &str {
        &self.source_tag
    }

    pub fn target_tag(&self) -> &str {
        &self.target_tag
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SentencePair> {
        self.pairs.iter()
    }
}

impl<'a> IntoIterator for &'a ParallelCorpus {
    type Item = &'a SentencePair;
    type IntoIter = std::slice::Iter<'a, SentencePair>;

    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}

/// Pairs of `a` followed by pairs of `b`, renumbered.
pub fn concat_corpora(a: &ParallelCorpus, b: &ParallelCorpus) -> Result<ParallelCorpus> {
    if a.source_tag != b.source_tag || a.target_tag != b.target_tag {
        return Err(Error::TagMismatch {
            left: format!("{}-{}", a.source_tag, a.target_tag),
            right: format!("{}-{}", b.source_tag, b.target_tag),
        });
    }
    let mut pairs = Vec::with_capacity(a.len() + b.len());
    pairs.extend(a.pairs.iter().cloned());
    pairs.extend(b.pairs.iter().cloned());
    Ok(a.with_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(s: &Sentence) -> Vec<&str> {
        s.tokens().iter().map(Token::as_str).collect()
    }

    #[test]
    fn tokenize_examples() {
        let s = tokenize("Bố Điêu bị ốm nặng");
        assert_eq!(texts(&s), ["Bố", "Điêu", "bị", "ốm", "nặng"]);
        assert_eq!(s.len(), 5);
        assert!(tokenize("").is_empty());
        assert_eq!(texts(&tokenize("  a \t b\n")), ["a", "b"]);
    }

    #[test]
    fn detokenize_examples() {
        assert_eq!(detokenize(&tokenize("adrin jĭ Diêu đe Bă")), "adrin jĭ Diêu đe Bă");
        assert_eq!(detokenize(&Sentence::empty()), "");
        assert_eq!(detokenize(&tokenize("x")), "x");
    }

    #[test]
    fn token_rejects_whitespace() {
        assert!(Token::new("").is_err());
        assert!(Token::new("a b").is_err());
        assert!(Token::new("a\tb").is_err());
        assert!(Token::new("'brơu").is_ok());
    }

    #[test]
    fn corpus_requires_distinct_tags() {
        assert!(ParallelCorpus::new("vi", "vi").is_err());
        assert!(ParallelCorpus::new("vi", "ba").is_ok());
    }

    #[test]
    fn concat_renumbers_and_checks_tags() {
        let a = ParallelCorpus::from_sentences("vi", "ba", vec![(tokenize("a"), tokenize("b"))]).unwrap();
        let b = ParallelCorpus::from_sentences("vi", "ba", vec![(tokenize("c"), tokenize("d")); 2]).unwrap();
        let ab = concat_corpora(&a, &b).unwrap();
        assert_eq!(ab.len(), 3);
        assert!(ab.pairs().iter().enumerate().all(|(i, p)| p.index == i));
        let empty = a.empty_like();
        assert_eq!(concat_corpora(&a, &empty).unwrap(), a);

        let other = ParallelCorpus::new("en", "ba").unwrap();
        assert!(matches!(concat_corpora(&a, &other), Err(Error::TagMismatch { .. })));
    }

    #[test]
    fn concat_sizes_add_up() {
        let one = (tokenize("s"), tokenize("t"));
        let a = ParallelCorpus::from_sentences("vi", "ba", vec![one.clone(); 16105]).unwrap();
        let b = ParallelCorpus::from_sentences("vi", "ba", vec![one; 8052]).unwrap();
        assert_eq!(concat_corpora(&a, &a).unwrap().len(), 32210);
        assert_eq!(concat_corpora(&a, &b).unwrap().len(), 24157);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn corpus_strategy() -> impl Strategy<Value = ParallelCorpus> {
            proptest::collection::vec(("[a-c ]{0,8}", "[x-z ]{0,8}"), 0..6).prop_map(|v| {
                ParallelCorpus::from_sentences("s", "t", v.iter().map(|(a, b)| (tokenize(a), tokenize(b)))).unwrap()
            })
        }

        proptest! {
            #[test]
            fn tokenize_is_stable_through_detokenize(text in "\\PC{0,40}") {
                let once = tokenize(&text);
                prop_assert_eq!(tokenize(&detokenize(&once)), once);
            }

            #[test]
            fn concat_is_associative(a in corpus_strategy(), b in corpus_strategy(), c in corpus_strategy()) {
                let left = concat_corpora(&concat_corpora(&a, &b).unwrap(), &c).unwrap();
                let right = concat_corpora(&a, &concat_corpora(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(left.len(), a.len() + b.len() + c.len());
                prop_assert_eq!(left, right);
            }
        }
    }
}
