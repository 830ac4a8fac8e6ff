use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Reads a plain text file, dropping exactly one trailing newline.
pub fn read_text(path: &Path) -> Result<String> {
    let mut s = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if s.ends_with('\n') {
        s.pop();
        if s.ends_with('\r') {
            s.pop();
        }
    }
    Ok(s)
}

/// Sequence of the first FASTA record in `path`.
pub fn read_fasta(path: &Path) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_fasta(&text).with_context(|| format!("malformed FASTA in {}", path.display()))
}

pub fn parse_fasta(text: &str) -> Result<String> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
    match lines.by_ref().find(|l| !l.trim().is_empty()) {
        Some(header) if header.starts_with('>') => {}
        Some(_) => bail!("expected a '>' header line"),
        None => bail!("no FASTA record found"),
    }
    let mut seq = String::new();
    for line in lines {
        if line.starts_with('>') {
            break;
        }
        if line.starts_with(';') {
            continue;
        }
        seq.extend(line.chars().filter(|c| !c.is_whitespace()));
    }
    Ok(seq)
}
