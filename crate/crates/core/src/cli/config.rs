//! Augmentation settings: JSON config merged under command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::baseline::EdaOp;
use crate::corpus::read_utf8;
use crate::error::{Error, Result};
use crate::mtl::MtlTask;
use crate::sampling::SeedSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mtl,
    Boundary,
    Eda,
    Embed,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Mtl => "mtl",
            Method::Boundary => "boundary",
            Method::Eda => "eda",
            Method::Embed => "embed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mtl" => Ok(Method::Mtl),
            "boundary" => Ok(Method::Boundary),
            "eda" => Ok(Method::Eda),
            "embed" => Ok(Method::Embed),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

/// Every setting of `augment`, all optional. Used for both the JSON config
/// file and the parsed flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugmentConfig {
    pub source: Option<PathBuf>,
    pub target: Option<PathBuf>,
    pub out_source: Option<PathBuf>,
    pub out_target: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub source_tag: Option<String>,
    pub target_tag: Option<String>,
    pub method: Option<String>,
    pub tasks: Option<String>,
    pub alpha: Option<f64>,
    pub p_max: Option<f64>,
    pub unk: Option<String>,
    pub dict: Option<PathBuf>,
    pub align: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub thesaurus: Option<PathBuf>,
    pub eda_ops: Option<String>,
    pub neighbor_rank: Option<usize>,
    pub seed: Option<u64>,
    pub append_original: Option<bool>,
}

impl AugmentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_str(&read_utf8(path)?)
            .map_err(|e| Error::InvalidParameter(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: AugmentConfig) -> AugmentConfig {
        AugmentConfig {
            source: self.source.or(base.source),
            target: self.target.or(base.target),
            out_source: self.out_source.or(base.out_source),
            out_target: self.out_target.or(base.out_target),
            manifest: self.manifest.or(base.manifest),
            source_tag: self.source_tag.or(base.source_tag),
            target_tag: self.target_tag.or(base.target_tag),
            method: self.method.or(base.method),
            tasks: self.tasks.or(base.tasks),
            alpha: self.alpha.or(base.alpha),
            p_max: self.p_max.or(base.p_max),
            unk: self.unk.or(base.unk),
            dict: self.dict.or(base.dict),
            align: self.align.or(base.align),
            embeddings: self.embeddings.or(base.embeddings),
            thesaurus: self.thesaurus.or(base.thesaurus),
            eda_ops: self.eda_ops.or(base.eda_ops),
            neighbor_rank: self.neighbor_rank.or(base.neighbor_rank),
            seed: self.seed.or(base.seed),
            append_original: self.append_original.or(base.append_original),
        }
    }
}

/// Method parameters after defaults, before auxiliary files are loaded.
#[derive(Debug, Clone, PartialEq)]
pub enum MethodParams {
    Mtl {
        tasks: Vec<MtlTask>,
        alpha: f64,
        unk: String,
        dict: Option<PathBuf>,
        align: Option<PathBuf>,
    },
    Boundary {
        p_max: f64,
    },
    Eda {
        alpha: f64,
        operations: Vec<EdaOp>,
        thesaurus: Option<PathBuf>,
    },
    Embed {
        alpha: f64,
        embeddings: PathBuf,
        neighbor_rank: usize,
    },
}

impl MethodParams {
    pub fn method(&self) -> Method {
        match self {
            MethodParams::Mtl { .. } => Method::Mtl,
            MethodParams::Boundary { .. } => Method::Boundary,
            MethodParams::Eda { .. } => Method::Eda,
            MethodParams::Embed { .. } => Method::Embed,
        }
    }

    /// Parameter echo for the run manifest.
    pub fn to_json(&self) -> Value {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        match self {
            MethodParams::Mtl {
                tasks,
                alpha,
                unk,
                dict,
                align,
            } => json!({
                "tasks": tasks.iter().map(|t| t.name()).collect::<Vec<_>>(),
                "alpha": alpha,
                "unk": unk,
                "dict": path(dict),
                "align": path(align),
            }),
            MethodParams::Boundary { p_max } => json!({ "p_max": p_max }),
            MethodParams::Eda {
                alpha,
                operations,
                thesaurus,
            } => json!({
                "alpha": alpha,
                "operations": operations.iter().map(|o| o.short_name()).collect::<Vec<_>>(),
                "thesaurus": path(thesaurus),
            }),
            MethodParams::Embed {
                alpha,
                embeddings,
                neighbor_rank,
            } => json!({
                "alpha": alpha,
                "embeddings": embeddings.display().to_string(),
                "neighbor_rank": neighbor_rank,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationSpec {
    pub params: MethodParams,
    pub seed: SeedSpec,
    pub append_original: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedAugment {
    pub source: PathBuf,
    pub target: PathBuf,
    pub out_source: PathBuf,
    pub out_target: PathBuf,
    pub manifest: PathBuf,
    pub source_tag: String,
    pub target_tag: String,
    pub spec: AugmentationSpec,
}

pub const DEFAULT_ALPHA: f64 = 0.5;
pub const DEFAULT_P_MAX: f64 = 0.3;

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| usage(format!("missing required setting --{}", name.replace('_', "-"))))
}

fn parse_list<T: FromStr<Err = Error>>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

fn extension_tag(path: &Path) -> Option<String> {
    path.extension()
        .and_then(|e| e.to_str())
        .filter(|e| !e.is_empty())
        .map(str::to_owned)
}

/// Chooses language tags: explicit values, else file extensions, else src/tgt.
pub fn resolve_tags(
    source: &Path,
    target: &Path,
    source_tag: Option<String>,
    target_tag: Option<String>,
) -> (String, String) {
    let s = source_tag.or_else(|| extension_tag(source));
    let t = target_tag.or_else(|| extension_tag(target));
    match (s, t) {
        (Some(s), Some(t)) if s != t => (s, t),
        _ => ("src".to_owned(), "tgt".to_owned()),
    }
}

impl AugmentConfig {
    pub fn resolve(self) -> Result<ResolvedAugment> {
        let method: Method = require(self.method.as_deref(), "method")?.parse()?;
        let irrelevant: Vec<&str> = [
            ("tasks", self.tasks.is_some(), Method::Mtl == method),
            ("unk", self.unk.is_some(), Method::Mtl == method),
            ("dict", self.dict.is_some(), Method::Mtl == method),
            ("align", self.align.is_some(), Method::Mtl == method),
            ("p-max", self.p_max.is_some(), Method::Boundary == method),
            ("alpha", self.alpha.is_some(), Method::Boundary != method),
            ("thesaurus", self.thesaurus.is_some(), Method::Eda == method),
            ("eda-ops", self.eda_ops.is_some(), Method::Eda == method),
            ("embeddings", self.embeddings.is_some(), Method::Embed == method),
            ("neighbor-rank", self.neighbor_rank.is_some(), Method::Embed == method),
        ]
        .into_iter()
        .filter(|&(_, set, allowed)| set && !allowed)
        .map(|(name, _, _)| name)
        .collect();
        if !irrelevant.is_empty() {
            return Err(usage(format!(
                "setting(s) {} do not apply to method {method}",
                irrelevant.join(", ")
            )));
        }

        let alpha = self.alpha.unwrap_or(DEFAULT_ALPHA);
        let params = match method {
            Method::Mtl => MethodParams::Mtl {
                tasks: parse_list(&require(self.tasks, "tasks")?)?,
                alpha,
                unk: self.unk.unwrap_or_else(|| "UNK".to_owned()),
                dict: self.dict,
                align: self.align,
            },
            Method::Boundary => MethodParams::Boundary {
                p_max: self.p_max.unwrap_or(DEFAULT_P_MAX),
            },
            Method::Eda => MethodParams::Eda {
                alpha,
                operations: match &self.eda_ops {
                    Some(ops) => parse_list(ops)?,
                    None => EdaOp::ALL.to_vec(),
                },
                thesaurus: self.thesaurus,
            },
            Method::Embed => MethodParams::Embed {
                alpha,
                embeddings: require(self.embeddings, "embeddings")?,
                neighbor_rank: self.neighbor_rank.unwrap_or(1),
            },
        };

        let source = require(self.source, "source")?;
        let target = require(self.target, "target")?;
        let out_source = require(self.out_source, "out_source")?;
        let out_target = require(self.out_target, "out_target")?;
        if out_source == out_target {
            return Err(usage("output source and target paths must differ"));
        }
        let manifest = self.manifest.unwrap_or_else(|| {
            let mut name = out_source.clone().into_os_string();
            name.push(".manifest.json");
            PathBuf::from(name)
        });
        let (source_tag, target_tag) = resolve_tags(&source, &target, self.source_tag, self.target_tag);
        Ok(ResolvedAugment {
            source,
            target,
            out_source,
            out_target,
            manifest,
            source_tag,
            target_tag,
            spec: AugmentationSpec {
                params,
                seed: SeedSpec::new(self.seed.unwrap_or(0)),
                append_original: self.append_original.unwrap_or(true),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> AugmentConfig {
        AugmentConfig {
            source: Some("train.vi".into()),
            target: Some("train.ba".into()),
            out_source: Some("aug.vi".into()),
            out_target: Some("aug.ba".into()),
            ..Default::default()
        }
    }

    #[test]
    fn flags_win_over_config() {
        let file = AugmentConfig {
            alpha: Some(0.1),
            seed: Some(5),
            method: Some("eda".into()),
            ..base()
        };
        let flags = AugmentConfig {
            alpha: Some(0.7),
            ..Default::default()
        };
        let r = flags.over(file).resolve().unwrap();
        assert_eq!(r.spec.seed, SeedSpec::new(5));
        match r.spec.params {
            MethodParams::Eda {
                alpha, ref operations, ..
            } => {
                assert_eq!(alpha, 0.7);
                assert_eq!(operations.len(), 4);
            }
            ref other => panic!("unexpected {other:?}"),
        }
        assert_eq!((r.source_tag.as_str(), r.target_tag.as_str()), ("vi", "ba"));
        assert_eq!(r.manifest, PathBuf::from("aug.vi.manifest.json"));
        assert!(r.spec.append_original);
    }

    #[test]
    fn mtl_defaults_and_requirements() {
        let cfg = AugmentConfig {
            method: Some("mtl".into()),
            tasks: Some("token,swap".into()),
            ..base()
        };
        let r = cfg.resolve().unwrap();
        assert_eq!(
            r.spec.params,
            MethodParams::Mtl {
                tasks: vec![MtlTask::Token, MtlTask::Swap],
                alpha: 0.5,
                unk: "UNK".into(),
                dict: None,
                align: None,
            }
        );
        let missing = AugmentConfig {
            method: Some("mtl".into()),
            ..base()
        };
        assert!(matches!(missing.resolve(), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn irrelevant_flags_are_rejected() {
        let cfg = AugmentConfig {
            method: Some("boundary".into()),
            alpha: Some(0.5),
            ..base()
        };
        assert!(matches!(cfg.resolve(), Err(Error::InvalidParameter(m)) if m.contains("alpha")));
    }

    #[test]
    fn tag_fallbacks() {
        assert_eq!(
            resolve_tags(Path::new("a.txt"), Path::new("b.txt"), None, None),
            ("src".into(), "tgt".into())
        );
        assert_eq!(
            resolve_tags(Path::new("a"), Path::new("b"), Some("vi".into()), Some("ba".into())),
            ("vi".into(), "ba".into())
        );
    }

    #[test]
    fn config_json_rejects_unknown_keys() {
        let ok: AugmentConfig = serde_json::from_str(r#"{"method":"boundary","p_max":0.7,"seed":3}"#).unwrap();
        assert_eq!(ok.p_max, Some(0.7));
        assert!(serde_json::from_str::<AugmentConfig>(r#"{"pmax":0.7}"#).is_err());
    }
}
