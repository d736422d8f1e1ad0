use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sentence_bleu;
use crate::corpus::{read_utf8, Sentence};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueCategory {
    Collocation,
    WordByWord,
    NumberAmbiguity,
    Unknown,
}

impl IssueCategory {
    pub const ALL: [IssueCategory; 4] = [
        IssueCategory::Collocation,
        IssueCategory::WordByWord,
        IssueCategory::NumberAmbiguity,
        IssueCategory::Unknown,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IssueCategory::Collocation => "collocation",
            IssueCategory::WordByWord => "word-by-word",
            IssueCategory::NumberAmbiguity => "number-ambiguity",
            IssueCategory::Unknown => "unknown",
        }
    }
}

impl fmt::Display for IssueCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IssueCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        IssueCategory::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown issue category {s:?}")))
    }
}

/// `pair_index TAB category` rows.
pub fn parse_labels(text: &str) -> Result<HashMap<usize, IssueCategory>> {
    let mut labels = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let malformed = |reason: String| Error::MalformedRow { line: i + 1, reason };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 2 {
            return Err(malformed(format!(
                "expected 2 tab-separated columns, found {}",
                cols.len()
            )));
        }
        let index: usize = cols[0]
            .trim()
            .parse()
            .map_err(|_| malformed(format!("bad pair index {:?}", cols[0])))?;
        let category = cols[1]
            .parse()
            .map_err(|_| malformed(format!("unknown category {:?}", cols[1])))?;
        labels.insert(index, category);
    }
    Ok(labels)
}

pub fn load_labels(path: &Path) -> Result<HashMap<usize, IssueCategory>> {
    parse_labels(&read_utf8(path)?)
}

/// True iff exactly one side has an all-digit token.
pub fn detect_number_ambiguity(hypothesis: &Sentence, reference: &Sentence) -> bool {
    let has_digits = |s: &Sentence| s.tokens().iter().any(|t| t.is_numeric());
    has_digits(hypothesis) != has_digits(reference)
}

/// Indices whose score lies in the closed band `[lo, hi]`.
pub fn select_band<F: Real>(scores: &[F], lo: F, hi: F) -> Vec<usize> {
    scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| lo <= s && s <= hi)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectedSentence<F> {
    pub index: usize,
    pub score: F,
    pub category: IssueCategory,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriageReport<F> {
    pub band: (F, F),
    pub total: usize,
    pub selected: Vec<SelectedSentence<F>>,
    pub counts: BTreeMap<IssueCategory, usize>,
}

/// Picks sentences whose smoothed sentence BLEU falls in `[lo, hi]`.
///
/// Selected pairs take their category from `labels` when present, else
/// NumberAmbiguity if [`detect_number_ambiguity`] fires, else Unknown.
pub fn triage<F: Real>(
    hypotheses: &[Sentence],
    references: &[Sentence],
    lo: F,
    hi: F,
    labels: Option<&HashMap<usize, IssueCategory>>,
) -> Result<TriageReport<F>> {
    let in_unit = |x: F| x >= F::zero() && x <= F::one();
    if !(in_unit(lo) && in_unit(hi) && lo <= hi) {
        return Err(Error::InvalidParameter(format!(
            "band [{lo}, {hi}] must satisfy 0 <= lo <= hi <= 1"
        )));
    }
    if hypotheses.len() != references.len() {
        return Err(Error::LengthMismatch {
            hypotheses: hypotheses.len(),
            references: references.len(),
        });
    }
    let scores = hypotheses
        .iter()
        .zip(references)
        .map(|(h, r)| sentence_bleu::<F>(h, r))
        .collect::<Result<Vec<F>>>()?;

    let mut counts: BTreeMap<IssueCategory, usize> = IssueCategory::ALL.iter().map(|&c| (c, 0)).collect();
    let mut selected = Vec::new();
    for index in select_band(&scores, lo, hi) {
        let category = labels.and_then(|l| l.get(&index).copied()).unwrap_or_else(|| {
            if detect_number_ambiguity(&hypotheses[index], &references[index]) {
                IssueCategory::NumberAmbiguity
            } else {
                IssueCategory::Unknown
            }
        });
        *counts.entry(category).or_default() += 1;
        selected.push(SelectedSentence {
            index,
            score: scores[index],
            category,
        });
    }
    Ok(TriageReport {
        band: (lo, hi),
        total: hypotheses.len(),
        selected,
        counts,
    })
}
