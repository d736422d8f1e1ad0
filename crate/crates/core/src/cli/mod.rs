//! `paraug` command-line interface.
//!
//! Subcommands print a single JSON document on stdout. Failures print
//! `{"error": {"kind": ..., "message": ...}}` on stderr and exit with
//! 1 (usage), 2 (data or format) or 3 (I/O).

mod config;
mod manifest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::baseline::{eda_augment, embed_replace, load_thesaurus, EdaSpec, EmbedReplaceSpec};
use crate::boundary::{augment_boundary, BoundarySpec};
use crate::corpus::{
    concat_corpora, corpus_stats, detokenize, load_alignments, load_dictionary, load_embeddings, read_lines, read_utf8,
    tokenize, write_lines_atomic, CorpusStats, ParallelCorpus, Sentence, Token,
};
use crate::error::{Error, Result};
use crate::eval::{corpus_bleu, load_labels, triage, BleuReport};
use crate::mtl::{run_mtl, MtlSpec};

pub use config::{resolve_tags, AugmentConfig, AugmentationSpec, Method, MethodParams, ResolvedAugment};
pub use manifest::{sha256_hex, FileChecksum, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "paraug", version, about = "Parallel-corpus augmentation and BLEU evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Augment a parallel corpus and write the result with a run manifest
    Augment(Box<AugmentArgs>),
    /// Corpus BLEU-4 of a hypothesis file against a reference file
    Evaluate(EvaluateArgs),
    /// Size, token and vocabulary statistics of a parallel corpus
    Stats(StatsArgs),
    /// Select sentences in a sentence-BLEU band and count issue categories
    Triage(TriageArgs),
}

#[derive(Debug, Args, Default)]
pub struct AugmentArgs {
    /// JSON file with any of the settings below; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub source: Option<PathBuf>,
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long)]
    pub out_source: Option<PathBuf>,
    #[arg(long)]
    pub out_target: Option<PathBuf>,
    /// Defaults to <out-source>.manifest.json
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub source_tag: Option<String>,
    #[arg(long)]
    pub target_tag: Option<String>,
    /// mtl, boundary, eda or embed
    #[arg(long)]
    pub method: Option<String>,
    /// Comma-separated MTL tasks: swap, token, source, reverse, replace
    #[arg(long)]
    pub tasks: Option<String>,
    /// Fraction of target words affected (default 0.5)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Upper bound of the truncation proportion (default 0.3)
    #[arg(long)]
    pub p_max: Option<f64>,
    #[arg(long)]
    pub unk: Option<String>,
    /// Bilingual dictionary TSV for the replace task
    #[arg(long)]
    pub dict: Option<PathBuf>,
    /// Pharaoh alignments for the replace task
    #[arg(long)]
    pub align: Option<PathBuf>,
    /// word2vec text-format vectors for the embed method
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Synonym TSV for EDA
    #[arg(long)]
    pub thesaurus: Option<PathBuf>,
    /// Comma-separated EDA operations: sr, ri, rs, rd
    #[arg(long)]
    pub eda_ops: Option<String>,
    #[arg(long)]
    pub neighbor_rank: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write only the synthetic pairs
    #[arg(long)]
    pub no_append_original: bool,
}

impl AugmentArgs {
    fn to_config(&self) -> AugmentConfig {
        AugmentConfig {
            source: self.source.clone(),
            target: self.target.clone(),
            out_source: self.out_source.clone(),
            out_target: self.out_target.clone(),
            manifest: self.manifest.clone(),
            source_tag: self.source_tag.clone(),
            target_tag: self.target_tag.clone(),
            method: self.method.clone(),
            tasks: self.tasks.clone(),
            alpha: self.alpha,
            p_max: self.p_max,
            unk: self.unk.clone(),
            dict: self.dict.clone(),
            align: self.align.clone(),
            embeddings: self.embeddings.clone(),
            thesaurus: self.thesaurus.clone(),
            eda_ops: self.eda_ops.clone(),
            neighbor_rank: self.neighbor_rank,
            seed: self.seed,
            append_original: self.no_append_original.then_some(false),
        }
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub hyp: PathBuf,
    #[arg(long = "ref")]
    pub reference: PathBuf,
    /// Also report the score on the 0-100 scale
    #[arg(long)]
    pub percent: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub source: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
}

#[derive(Debug, Args)]
pub struct TriageArgs {
    #[arg(long)]
    pub hyp: PathBuf,
    #[arg(long = "ref")]
    pub reference: PathBuf,
    #[arg(long, default_value_t = 0.2)]
    pub lo: f64,
    #[arg(long, default_value_t = 0.4)]
    pub hi: f64,
    /// TSV of pair_index TAB category
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::InvalidParameter(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

pub fn error_json(err: &Error) -> String {
    json!({ "error": { "kind": err.kind(), "message": err.to_string() } }).to_string()
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            println!("{report}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            exit_code(&e)
        }
    }
}

/// Runs a command and returns its JSON report.
pub fn execute(command: &Command) -> Result<String> {
    let value = match command {
        Command::Augment(args) => to_json(&cmd_augment(args)?),
        Command::Evaluate(args) => cmd_evaluate(args)?,
        Command::Stats(args) => to_json(&cmd_stats(args)?),
        Command::Triage(args) => to_json(&cmd_triage(args)?),
    };
    Ok(serde_json::to_string_pretty(&value).expect("reports serialize"))
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn load_sentences(path: &Path) -> Result<Vec<Sentence>> {
    Ok(read_lines(path)?.iter().map(|l| tokenize(l)).collect())
}

fn render(sentences: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for s in sentences {
        out.push_str(&s);
        out.push('\n');
    }
    out
}

fn synthesize(corpus: &ParallelCorpus, spec: &AugmentationSpec) -> Result<ParallelCorpus> {
    let seed = spec.seed;
    match &spec.params {
        MethodParams::Mtl {
            tasks,
            alpha,
            unk,
            dict,
            align,
        } => {
            let mut mtl = MtlSpec::new(tasks.clone(), *alpha);
            mtl.unk_token =
                Token::new(unk).map_err(|_| Error::InvalidParameter(format!("invalid UNK token {unk:?}")))?;
            if let Some(path) = dict {
                mtl.dictionary = Some(load_dictionary(path)?);
            }
            if let Some(path) = align {
                mtl.alignments = Some(load_alignments(path, corpus)?);
            }
            run_mtl(corpus, &mtl, seed)
        }
        MethodParams::Boundary { p_max } => augment_boundary(corpus, &BoundarySpec::new(*p_max, seed)),
        MethodParams::Eda {
            alpha,
            operations,
            thesaurus,
        } => {
            let mut eda = EdaSpec::new(*alpha, thesaurus.as_deref().map(load_thesaurus).transpose()?);
            eda.operations = operations.clone();
            eda_augment(corpus, &eda, seed)
        }
        MethodParams::Embed {
            alpha,
            embeddings,
            neighbor_rank,
        } => {
            let mut spec = EmbedReplaceSpec::new(*alpha, load_embeddings::<f64>(embeddings)?);
            spec.neighbor_rank = *neighbor_rank;
            embed_replace(corpus, &spec, seed)
        }
    }
}

/// Load, augment, optionally append to the original, and write the corpus
/// plus manifest. Nothing is written unless every step succeeds.
pub fn cmd_augment(args: &AugmentArgs) -> Result<RunManifest> {
    let started = Instant::now();
    let flags = args.to_config();
    let config = match &args.config {
        Some(path) => flags.over(AugmentConfig::load(path)?),
        None => flags,
    };
    let run = config.resolve()?;

    let src_bytes = read_utf8(&run.source)?;
    let tgt_bytes = read_utf8(&run.target)?;
    let src_lines: Vec<&str> = src_bytes.lines().collect();
    let tgt_lines: Vec<&str> = tgt_bytes.lines().collect();
    if src_lines.len() != tgt_lines.len() {
        return Err(Error::LineCountMismatch {
            left_name: run.source.display().to_string(),
            left: src_lines.len(),
            right_name: run.target.display().to_string(),
            right: tgt_lines.len(),
        });
    }
    let corpus = ParallelCorpus::from_sentences(
        &run.source_tag,
        &run.target_tag,
        src_lines
            .iter()
            .zip(&tgt_lines)
            .map(|(s, t)| (tokenize(s), tokenize(t))),
    )?;

    let synthetic = synthesize(&corpus, &run.spec)?;
    let output = if run.spec.append_original {
        concat_corpora(&corpus, &synthetic)?
    } else {
        synthetic.clone()
    };

    let out_src = render(output.iter().map(|p| detokenize(&p.source)));
    let out_tgt = render(output.iter().map(|p| detokenize(&p.target)));
    let checksum = |path: &Path, bytes: &[u8]| FileChecksum {
        path: path.display().to_string(),
        sha256: sha256_hex(bytes),
    };
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_owned(),
        version: env!("CARGO_PKG_VERSION").to_owned(),
        method: run.spec.params.method().name().to_owned(),
        parameters: run.spec.params.to_json(),
        master_seed: run.spec.seed.master_seed,
        append_original: run.spec.append_original,
        source_tag: run.source_tag.clone(),
        target_tag: run.target_tag.clone(),
        input_pairs: corpus.len(),
        synthetic_pairs: synthetic.len(),
        output_pairs: output.len(),
        inputs: vec![
            checksum(&run.source, src_bytes.as_bytes()),
            checksum(&run.target, tgt_bytes.as_bytes()),
        ],
        outputs: vec![
            checksum(&run.out_source, out_src.as_bytes()),
            checksum(&run.out_target, out_tgt.as_bytes()),
        ],
        duration_ms: started.elapsed().as_millis(),
    };
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_lines_atomic(&[
        (run.out_source.as_path(), out_src.as_bytes()),
        (run.out_target.as_path(), out_tgt.as_bytes()),
        (run.manifest.as_path(), manifest_text.as_bytes()),
    ])?;
    Ok(manifest)
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<serde_json::Value> {
    let hyps = load_sentences(&args.hyp)?;
    let refs = load_sentences(&args.reference)?;
    let report: BleuReport<f64> = corpus_bleu(&hyps, &refs)?;
    let mut value = to_json(&report);
    if args.percent {
        value["score_percent"] = json!(report.score * 100.0);
    }
    Ok(value)
}

pub fn cmd_stats(args: &StatsArgs) -> Result<CorpusStats<f64>> {
    let (s, t) = resolve_tags(&args.source, &args.target, None, None);
    let corpus = crate::corpus::load_parallel(&args.source, &args.target, &s, &t)?;
    Ok(corpus_stats(&corpus))
}

pub fn cmd_triage(args: &TriageArgs) -> Result<crate::eval::TriageReport<f64>> {
    let hyps = load_sentences(&args.hyp)?;
    let refs = load_sentences(&args.reference)?;
    let labels = args.labels.as_deref().map(load_labels).transpose()?;
    triage(&hyps, &refs, args.lo, args.hi, labels.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn exit_codes_by_class() {
        assert_eq!(exit_code(&Error::InvalidParameter("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::EmptyDictionary), EXIT_DATA);
        assert_eq!(exit_code(&Error::Io(std::io::Error::other("x"))), EXIT_IO);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["paraug", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["paraug", "stats", "--source"]), EXIT_USAGE);
    }

    #[test]
    fn augment_boundary_writes_outputs_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let p = |n: &str| dir.path().join(n);
        fs::write(p("in.vi"), "a b c d\ne f g h\ni j\n").unwrap();
        fs::write(p("in.ba"), "a b c d\ne f g h\nk l\n").unwrap();
        let args = AugmentArgs {
            source: Some(p("in.vi")),
            target: Some(p("in.ba")),
            out_source: Some(p("out.vi")),
            out_target: Some(p("out.ba")),
            method: Some("boundary".into()),
            seed: Some(3),
            ..Default::default()
        };
        let m = cmd_augment(&args).unwrap();
        assert_eq!((m.input_pairs, m.synthetic_pairs, m.output_pairs), (3, 1, 4));
        assert_eq!(fs::read_to_string(p("out.vi")).unwrap().lines().count(), 4);
        let written: RunManifest =
            serde_json::from_str(&fs::read_to_string(p("out.vi.manifest.json")).unwrap()).unwrap();
        assert_eq!(written.outputs[0].sha256, sha256_hex(&fs::read(p("out.vi")).unwrap()));
        assert_eq!(written.source_tag, "vi");
    }
}
