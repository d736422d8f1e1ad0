//! word2vec text-format embedding tables.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::path::Path;

use super::read_utf8;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable<F> {
    dimension: usize,
    words: Vec<String>,
    vectors: Vec<Vec<F>>,
    index: HashMap<String, usize>,
}

impl<F: Real> EmbeddingTable<F> {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::HeaderMismatch("dimension must be positive".into()));
        }
        Ok(EmbeddingTable {
            dimension,
            words: Vec::new(),
            vectors: Vec::new(),
            index: HashMap::new(),
        })
    }

    pub fn insert(&mut self, word: &str, vector: Vec<F>) -> Result<()> {
        if vector.len() != self.dimension {
            return Err(Error::MalformedVector {
                line: self.words.len() + 2,
                reason: format!("{word:?} has {} components, expected {}", vector.len(), self.dimension),
            });
        }
        if self.index.contains_key(word) {
            return Err(Error::HeaderMismatch(format!("duplicate key {word:?}")));
        }
        self.index.insert(word.to_owned(), self.words.len());
        self.words.push(word.to_owned());
        self.vectors.push(vector);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn get(&self, word: &str) -> Option<&[F]> {
        self.index.get(word).map(|&i| self.vectors[i].as_slice())
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    /// Every other entry ranked by cosine similarity to `word`, highest
    /// first; ties go to the lexicographically smaller word.
    pub fn neighbors(&self, word: &str) -> Option<Vec<(&str, F)>> {
        let query = self.get(word)?;
        let mut ranked: Vec<(&str, F)> = self
            .words
            .iter()
            .zip(&self.vectors)
            .filter(|(w, _)| w.as_str() != word)
            .map(|(w, v)| (w.as_str(), cosine(query, v)))
            .collect();
        ranked.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.cmp(b.0))
        });
        Some(ranked)
    }

    /// The `rank`-th nearest neighbor (1-based).
    pub fn nearest(&self, word: &str, rank: usize) -> Option<&str> {
        if rank == 0 {
            return None;
        }
        self.neighbors(word)?.get(rank - 1).map(|&(w, _)| w)
    }
}

/// Cosine similarity; zero when either vector has zero norm.
pub fn cosine<F: Real>(a: &[F], b: &[F]) -> F {
    let mut dot = F::zero();
    let mut na = F::zero();
    let mut nb = F::zero();
    for (&x, &y) in a.iter().zip(b) {
        dot = dot + x * y;
        na = na + x * x;
        nb = nb + y * y;
    }
    if na == F::zero() || nb == F::zero() {
        return F::zero();
    }
    dot / (na.sqrt() * nb.sqrt())
}

pub fn parse_embeddings<F: Real>(text: &str) -> Result<EmbeddingTable<F>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::HeaderMismatch("missing \"V D\" header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (count, dimension) = match fields.as_slice() {
        [v, d] => match (v.parse::<usize>(), d.parse::<usize>()) {
            (Ok(v), Ok(d)) => (v, d),
            _ => return Err(Error::HeaderMismatch(format!("unparsable header {header:?}"))),
        },
        _ => return Err(Error::HeaderMismatch(format!("header must be \"V D\", got {header:?}"))),
    };
    let mut table = EmbeddingTable::new(dimension)?;
    for (i, line) in lines {
        let mut parts = line.split_whitespace();
        let word = parts.next().expect("non-blank line");
        let mut vector = Vec::with_capacity(dimension);
        for c in parts {
            let x: F = c.parse().map_err(|_| Error::MalformedVector {
                line: i + 1,
                reason: format!("non-numeric component {c:?}"),
            })?;
            vector.push(x);
        }
        if vector.len() != dimension {
            return Err(Error::MalformedVector {
                line: i + 1,
                reason: format!("{word:?} has {} components, header declares {dimension}", vector.len()),
            });
        }
        table.insert(word, vector)?;
    }
    if table.len() != count {
        return Err(Error::HeaderMismatch(format!(
            "header declares {count} vectors, body has {}",
            table.len()
        )));
    }
    Ok(table)
}

pub fn load_embeddings<F: Real>(path: &Path) -> Result<EmbeddingTable<F>> {
    parse_embeddings(&read_utf8(path)?)
}
