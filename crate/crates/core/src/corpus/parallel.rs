use std::fs;
use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use super::{detokenize, tokenize, ParallelCorpus, Sentence};
use crate::error::{Error, Result};

/// Reads a whole file as strict UTF-8.
pub fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path)?;
    String::from_utf8(bytes).map_err(|e| Error::Encoding {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

/// Lines of a UTF-8 file. A final newline does not open an extra line.
pub fn read_lines(path: &Path) -> Result<Vec<String>> {
    Ok(read_utf8(path)?.lines().map(str::to_owned).collect())
}

pub fn load_parallel(
    source_path: &Path,
    target_path: &Path,
    source_tag: &str,
    target_tag: &str,
) -> Result<ParallelCorpus> {
    let source = read_utf8(source_path)?;
    let target = read_utf8(target_path)?;
    let src_lines: Vec<&str> = source.lines().collect();
    let tgt_lines: Vec<&str> = target.lines().collect();
    if src_lines.len() != tgt_lines.len() {
        return Err(Error::LineCountMismatch {
            left_name: source_path.display().to_string(),
            left: src_lines.len(),
            right_name: target_path.display().to_string(),
            right: tgt_lines.len(),
        });
    }
    ParallelCorpus::from_sentences(
        source_tag,
        target_tag,
        src_lines
            .into_iter()
            .zip(tgt_lines)
            .map(|(s, t)| (tokenize(s), tokenize(t))),
    )
}

/// Writes both sides; either both files are replaced or neither is.
pub fn save_parallel(corpus: &ParallelCorpus, source_path: &Path, target_path: &Path) -> Result<()> {
    let src = render(corpus.pairs().iter().map(|p| &p.source));
    let tgt = render(corpus.pairs().iter().map(|p| &p.target));
    write_lines_atomic(&[(source_path, src.as_bytes()), (target_path, tgt.as_bytes())])
}

fn render<'a>(sentences: impl Iterator<Item = &'a Sentence>) -> String {
    let mut out = String::new();
    for s in sentences {
        out.push_str(&detokenize(s));
        out.push('\n');
    }
    out
}

/// Stages every file in a sibling temp file, then renames them into place.
/// On failure, files already renamed by this call are removed.
pub fn write_lines_atomic(files: &[(&Path, &[u8])]) -> Result<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, bytes) in files {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        staged.push((tmp, *path));
    }
    let mut done: Vec<&Path> = Vec::new();
    for (tmp, path) in staged {
        if let Err(e) = tmp.persist(path) {
            for p in done {
                let _ = fs::remove_file(p);
            }
            return Err(e.error.into());
        }
        done.push(path);
    }
    Ok(())
}
