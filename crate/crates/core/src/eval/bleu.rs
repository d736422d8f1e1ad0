use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::corpus::{Sentence, Token};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BleuBucket {
    AlmostUseless,
    HardToGetTheGist,
    GistClearWithErrors,
    Understandable,
    HighQuality,
    VeryHighQuality,
    BetterThanHuman,
}

impl BleuBucket {
    pub fn label(self) -> &'static str {
        match self {
            BleuBucket::AlmostUseless => "Almost useless",
            BleuBucket::HardToGetTheGist => "Hard to get the gist",
            BleuBucket::GistClearWithErrors => {
                "The gist is clear, but there are substantial grammatical errors present"
            }
            BleuBucket::Understandable => "Understandable to good translations",
            BleuBucket::HighQuality => "High quality translations",
            BleuBucket::VeryHighQuality => "Very high quality, adequate, and fluent translations",
            BleuBucket::BetterThanHuman => "Quality often better than human",
        }
    }
}

impl fmt::Display for BleuBucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for BleuBucket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Maps a 0–1 score onto the seven interpretation ranges.
///
/// Ranges are half-open on the upper edge, except that 0.40 belongs to
/// "Understandable to good translations": `[0, .1)`, `[.1, .2)`, `[.2, .3)`,
/// `[.3, .4]`, `(.4, .5)`, `[.5, .6)`, `[.6, 1]`.
pub fn interpret_bleu<F: Real>(score: F) -> Result<BleuBucket> {
    let x = score.to_f64().unwrap_or(f64::NAN);
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(x));
    }
    let bucket = if x < 0.10 {
        BleuBucket::AlmostUseless
    } else if x < 0.20 {
        BleuBucket::HardToGetTheGist
    } else if x < 0.30 {
        BleuBucket::GistClearWithErrors
    } else if x <= 0.40 {
        BleuBucket::Understandable
    } else if x < 0.50 {
        BleuBucket::HighQuality
    } else if x < 0.60 {
        BleuBucket::VeryHighQuality
    } else {
        BleuBucket::BetterThanHuman
    };
    Ok(bucket)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BleuReport<F> {
    pub score: F,
    pub precisions: [F; MAX_ORDER],
    pub brevity_penalty: F,
    pub hyp_length: usize,
    pub ref_length: usize,
    pub bucket: BleuBucket,
}

/// Clipped matches and hypothesis n-gram totals per order.
#[derive(Debug, Default, Clone, Copy)]
struct NgramStats {
    matches: [usize; MAX_ORDER],
    totals: [usize; MAX_ORDER],
}

fn ngram_stats(hyp: &[Token], reference: &[Token]) -> NgramStats {
    let mut stats = NgramStats::default();
    for n in 1..=MAX_ORDER {
        if hyp.len() < n {
            continue;
        }
        let mut ref_counts: HashMap<&[Token], usize> = HashMap::new();
        for g in reference.windows(n) {
            *ref_counts.entry(g).or_default() += 1;
        }
        let mut hyp_counts: HashMap<&[Token], usize> = HashMap::new();
        for g in hyp.windows(n) {
            *hyp_counts.entry(g).or_default() += 1;
        }
        stats.totals[n - 1] = hyp.len() + 1 - n;
        stats.matches[n - 1] = hyp_counts
            .iter()
            .map(|(g, &c)| c.min(ref_counts.get(g).copied().unwrap_or(0)))
            .sum();
    }
    stats
}

fn brevity_penalty<F: Real>(hyp_len: usize, ref_len: usize) -> F {
    if hyp_len == 0 {
        F::zero()
    } else if hyp_len < ref_len {
        (F::one() - F::from_usize_lossy(ref_len) / F::from_usize_lossy(hyp_len)).exp()
    } else {
        F::one()
    }
}

fn combine<F: Real>(precisions: &[F; MAX_ORDER], bp: F) -> F {
    if precisions.iter().any(|&p| p <= F::zero()) {
        return F::zero();
    }
    let mean_log = precisions.iter().map(|p| p.ln()).fold(F::zero(), |a, b| a + b) / F::from_usize_lossy(MAX_ORDER);
    bp * mean_log.exp()
}

/// Corpus-level BLEU-4: clipped n-gram counts summed over all pairs,
/// uniform weights, no smoothing.
pub fn corpus_bleu<F: Real>(hypotheses: &[Sentence], references: &[Sentence]) -> Result<BleuReport<F>> {
    if hypotheses.len() != references.len() {
        return Err(Error::LengthMismatch {
            hypotheses: hypotheses.len(),
            references: references.len(),
        });
    }
    if hypotheses.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut total = NgramStats::default();
    let (mut hyp_length, mut ref_length) = (0, 0);
    for (h, r) in hypotheses.iter().zip(references) {
        let s = ngram_stats(h.tokens(), r.tokens());
        for n in 0..MAX_ORDER {
            total.matches[n] += s.matches[n];
            total.totals[n] += s.totals[n];
        }
        hyp_length += h.len();
        ref_length += r.len();
    }
    let precisions: [F; MAX_ORDER] = std::array::from_fn(|n| {
        if total.totals[n] > 0 {
            F::from_usize_lossy(total.matches[n]) / F::from_usize_lossy(total.totals[n])
        } else {
            F::zero()
        }
    });
    let brevity_penalty = brevity_penalty(hyp_length, ref_length);
    let score = combine(&precisions, brevity_penalty);
    Ok(BleuReport {
        score,
        precisions,
        brevity_penalty,
        hyp_length,
        ref_length,
        bucket: interpret_bleu(score)?,
    })
}

/// Sentence-level BLEU-4 with add-one smoothing for orders 2–4.
///
/// Smoothing fires only for an order with zero clipped matches, where the
/// precision becomes `1 / (total + 1)`; orders with matches use the plain
/// ratio, so a sentence with every precision positive scores exactly as
/// [`corpus_bleu`] does on a one-element corpus. A zero unigram precision
/// or an empty hypothesis gives 0.
pub fn sentence_bleu<F: Real>(hypothesis: &Sentence, reference: &Sentence) -> Result<F> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    if hypothesis.is_empty() {
        return Ok(F::zero());
    }
    let s = ngram_stats(hypothesis.tokens(), reference.tokens());
    let precisions: [F; MAX_ORDER] = std::array::from_fn(|n| {
        let (m, c) = (s.matches[n], s.totals[n]);
        if n == 0 || m > 0 {
            F::from_usize_lossy(m) / F::from_usize_lossy(c)
        } else {
            F::one() / F::from_usize_lossy(c + 1)
        }
    });
    Ok(combine(&precisions, brevity_penalty(hypothesis.len(), reference.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;

    fn sents(lines: &[&str]) -> Vec<Sentence> {
        lines.iter().map(|l| tokenize(l)).collect()
    }

    #[test]
    fn identity_scores_one() {
        let h = sents(&["Bă đe Diêu jĭ adrin", "a b c d e f"]);
        let r: BleuReport<f64> = corpus_bleu(&h, &h).unwrap();
        assert_eq!(r.score, 1.0);
        assert_eq!(r.precisions, [1.0; 4]);
        assert_eq!(r.brevity_penalty, 1.0);
        assert_eq!(r.bucket, BleuBucket::BetterThanHuman);
    }

    #[test]
    fn one_substitution_kills_four_grams() {
        let r: BleuReport<f64> = corpus_bleu(&sents(&["a b c d"]), &sents(&["a b c e"])).unwrap();
        assert_eq!(r.precisions, [0.75, 2.0 / 3.0, 0.5, 0.0]);
        assert_eq!(r.score, 0.0);
    }

    #[test]
    fn brevity_penalty_half_length() {
        let r: BleuReport<f64> = corpus_bleu(&sents(&["a b"]), &sents(&["a b c d"])).unwrap();
        assert!((r.brevity_penalty - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn corpus_errors() {
        assert!(matches!(
            corpus_bleu::<f64>(&sents(&["a"]), &sents(&["a", "b"])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(corpus_bleu::<f64>(&[], &[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn sentence_level() {
        let r = tokenize("Bă đe Diêu jĭ adrin");
        assert_eq!(sentence_bleu::<f64>(&r, &r).unwrap(), 1.0);
        let disjoint = tokenize("v w x y z");
        assert!(sentence_bleu::<f64>(&disjoint, &r).unwrap() < 0.1);
        assert_eq!(sentence_bleu::<f64>(&Sentence::empty(), &r).unwrap(), 0.0);
        assert!(matches!(
            sentence_bleu::<f64>(&r, &Sentence::empty()),
            Err(Error::EmptyReference)
        ));
        let short = tokenize("a b");
        assert_eq!(sentence_bleu::<f32>(&short, &short).unwrap(), 1.0);
    }

    #[test]
    fn smoothing_rescues_missing_higher_orders() {
        // unigrams 4/4, bigrams 1/3, trigrams 0/2 -> 1/3, 4-grams 0/1 -> 1/2
        let h = tokenize("a b d c");
        let r = tokenize("a b c d");
        let expected = ((1.0f64).ln() + (1.0f64 / 3.0).ln() + (1.0f64 / 3.0).ln() + 0.5f64.ln()) / 4.0;
        let got: f64 = sentence_bleu(&h, &r).unwrap();
        assert!((got - expected.exp()).abs() < 1e-12);
    }

    #[test]
    fn bucket_examples_and_edges() {
        assert_eq!(
            interpret_bleu(0.35).unwrap().label(),
            "Understandable to good translations"
        );
        assert_eq!(interpret_bleu(0.05).unwrap().label(), "Almost useless");
        assert_eq!(interpret_bleu(0.65).unwrap().label(), "Quality often better than human");
        assert_eq!(interpret_bleu(0.40).unwrap(), BleuBucket::Understandable);
        assert_eq!(interpret_bleu(0.10f32).unwrap(), BleuBucket::HardToGetTheGist);
        assert_eq!(interpret_bleu(0.19).unwrap(), BleuBucket::HardToGetTheGist);
        assert_eq!(interpret_bleu(0.60).unwrap(), BleuBucket::BetterThanHuman);
        assert_eq!(interpret_bleu(0.0).unwrap(), BleuBucket::AlmostUseless);
        assert_eq!(interpret_bleu(1.0).unwrap(), BleuBucket::BetterThanHuman);
        assert!(matches!(interpret_bleu(1.5), Err(Error::OutOfRange(_))));
        assert!(interpret_bleu(-0.1).is_err());
        assert!(interpret_bleu(f64::NAN).is_err());
    }

    mod props {
        use super::super::*;
        use crate::corpus::tokenize;
        use proptest::prelude::*;

        fn sentence() -> impl Strategy<Value = Sentence> {
            proptest::collection::vec("[a-e]", 1..10).prop_map(|v| tokenize(&v.join(" ")))
        }

        proptest! {
            #[test]
            fn corpus_score_is_bounded_and_order_free(
                pairs in proptest::collection::vec((sentence(), sentence()), 1..6),
                rot in 0usize..6,
            ) {
                let (h, r): (Vec<_>, Vec<_>) = pairs.iter().cloned().unzip();
                let a: BleuReport<f64> = corpus_bleu(&h, &r).unwrap();
                prop_assert!((0.0..=1.0).contains(&a.score));
                let mut rotated = pairs.clone();
                rotated.rotate_left(rot % pairs.len());
                let (h2, r2): (Vec<_>, Vec<_>) = rotated.into_iter().unzip();
                let b: BleuReport<f64> = corpus_bleu(&h2, &r2).unwrap();
                prop_assert!((a.score - b.score).abs() < 1e-12);
            }

            #[test]
            fn sentence_matches_corpus_when_no_smoothing(h in sentence(), r in sentence()) {
                let c: BleuReport<f64> = corpus_bleu(std::slice::from_ref(&h), std::slice::from_ref(&r)).unwrap();
                let s: f64 = sentence_bleu(&h, &r).unwrap();
                prop_assert!((0.0..=1.0).contains(&s));
                if c.precisions.iter().all(|&p| p > 0.0) {
                    prop_assert!((c.score - s).abs() < 1e-12);
                }
            }

            #[test]
            fn every_score_has_one_bucket(x in 0.0f64..=1.0) {
                prop_assert!(interpret_bleu(x).is_ok());
            }
        }
    }
}
