//! End-to-end checks of the `paraug` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn paraug(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paraug"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("JSON report")
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const SRC: &str = "Bố Điêu bị ốm nặng\nBố đi chợ\nMẹ nấu cơm\n";
const TGT: &str = "Bă đe Diêu jĭ adrin\nBă năm tơ chợ\nMĕ tơ̆ng por\n";

#[test]
fn augment_writes_corpus_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "train.vi", SRC);
    let tgt = write(dir.path(), "train.ba", TGT);
    let out_s = dir.path().join("aug.vi");
    let out_t = dir.path().join("aug.ba");
    let out = paraug(&[
        "augment",
        "--method",
        "mtl",
        "--tasks",
        "source,reverse",
        "--source",
        s(&src),
        "--target",
        s(&tgt),
        "--out-source",
        s(&out_s),
        "--out-target",
        s(&out_t),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let target = fs::read_to_string(&out_t).unwrap();
    let lines: Vec<&str> = target.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[3], "Bố Điêu bị ốm nặng");
    assert_eq!(lines[6], "adrin jĭ Diêu đe Bă");

    let manifest = json(&fs::read(dir.path().join("aug.vi.manifest.json")).unwrap());
    assert_eq!(manifest, json(&out.stdout));
    assert_eq!(manifest["method"], "mtl");
    assert_eq!(manifest["source_tag"], "vi");
    assert_eq!(manifest["target_tag"], "ba");
    assert_eq!(manifest["input_pairs"], 3);
    assert_eq!(manifest["synthetic_pairs"], 6);
    assert_eq!(manifest["output_pairs"], 9);
    assert_eq!(
        manifest["outputs"][1]["sha256"],
        paraug::cli::sha256_hex(target.as_bytes())
    );
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "train.vi", SRC);
    let tgt = write(dir.path(), "train.ba", TGT);
    let out_s = dir.path().join("aug.vi");
    let out_t = dir.path().join("aug.ba");
    let config = serde_json::json!({
        "source": src, "target": tgt, "out_source": out_s, "out_target": out_t,
        "method": "boundary", "p_max": 0.5, "seed": 3,
    });
    let config = write(dir.path(), "run.json", &config.to_string());
    let out = paraug(&["augment", "--config", s(&config), "--no-append-original", "--seed", "9"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = json(&out.stdout);
    assert_eq!(manifest["master_seed"], 9);
    assert_eq!(manifest["append_original"], false);
    assert_eq!(manifest["parameters"]["p_max"], 0.5);
    assert_eq!(fs::read_to_string(&out_s).unwrap().lines().count(), 1);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "train.vi", SRC);
    let tgt = write(dir.path(), "train.ba", TGT);
    let out_s = dir.path().join("aug.vi");
    let out_t = dir.path().join("aug.ba");
    let base = [
        "augment",
        "--source",
        s(&src),
        "--target",
        s(&tgt),
        "--out-source",
        s(&out_s),
        "--out-target",
        s(&out_t),
    ];
    for extra in [
        &["--method", "mtl"][..],
        &["--method", "boundary", "--p-max", "1.5"],
        &["--method", "boundary", "--alpha", "0.2"],
        &["--method", "nope"],
    ] {
        let args: Vec<&str> = base.iter().chain(extra).copied().collect();
        let out = paraug(&args);
        assert_eq!(out.status.code(), Some(1), "{extra:?}");
        let err = json(String::from_utf8_lossy(&out.stderr).trim().as_bytes());
        assert_eq!(err["error"]["kind"], "InvalidParameter");
        assert!(!out_s.exists() && !out_t.exists());
    }
    assert_eq!(paraug(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn missing_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.vi");
    let out = paraug(&["stats", "--source", s(&missing), "--target", s(&missing)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        json(String::from_utf8_lossy(&out.stderr).trim().as_bytes())["error"]["kind"],
        "Io"
    );
}

#[test]
fn evaluate_reports_corpus_bleu() {
    let dir = tempfile::tempdir().unwrap();
    let refs = write(dir.path(), "ref.txt", "a b c d e f g h i j k l m n o p\n");
    let hyps = write(dir.path(), "hyp.txt", "a b c d e f g h\n");
    let out = paraug(&["evaluate", "--hyp", s(&hyps), "--ref", s(&refs), "--percent"]);
    assert!(out.status.success());
    let report = json(&out.stdout);
    let e_inv = (-1.0f64).exp();
    assert!((report["score"].as_f64().unwrap() - e_inv).abs() < 1e-12);
    assert!((report["score_percent"].as_f64().unwrap() - 100.0 * e_inv).abs() < 1e-9);
    assert_eq!(report["hyp_length"], 8);
    assert_eq!(report["ref_length"], 16);
    assert_eq!(report["bucket"], "Understandable to good translations");
}

#[test]
fn stats_summarizes_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "train.vi", SRC);
    let tgt = write(dir.path(), "train.ba", TGT);
    let out = paraug(&["stats", "--source", s(&src), "--target", s(&tgt)]);
    assert!(out.status.success());
    let report = json(&out.stdout);
    assert_eq!(report["pair_count"], 3);
    assert_eq!(report["source_length"]["min"], 3.0);
    assert_eq!(report["source_length"]["max"], 5.0);
}

#[test]
fn invalid_utf8_is_reported_with_offset() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("bad.vi");
    fs::write(&src, b"ok\n\xff\n").unwrap();
    let tgt = write(dir.path(), "bad.ba", "a\nb\n");
    let out = paraug(&["stats", "--source", s(&src), "--target", s(&tgt)]);
    assert_eq!(out.status.code(), Some(2));
    let err = json(String::from_utf8_lossy(&out.stderr).trim().as_bytes());
    assert_eq!(err["error"]["kind"], "Encoding");
}
