//! BLEU scoring, interpretation buckets and band triage.

mod bleu;
mod triage;

pub use bleu::{corpus_bleu, interpret_bleu, sentence_bleu, BleuBucket, BleuReport, MAX_ORDER};
pub use triage::{
    detect_number_ambiguity, load_labels, parse_labels, select_band, triage, IssueCategory, SelectedSentence,
    TriageReport,
};
