//! Minimal FASTA reader and SNP substitution.

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub name: String,
    pub seq: Vec<u8>,
}

pub fn parse_fasta(data: &[u8]) -> Result<Vec<Record>> {
    let mut records: Vec<Record> = Vec::new();
    for (no, line) in data.split(|&b| b == b'\n').enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if let Some(name) = line.strip_prefix(b">") {
            records.push(Record { name: String::from_utf8_lossy(name).trim().to_string(), seq: Vec::new() });
            continue;
        }
        let seq: Vec<u8> = line.iter().copied().filter(|b| !b.is_ascii_whitespace()).collect();
        if seq.is_empty() {
            continue;
        }
        match records.last_mut() {
            Some(r) => r.seq.extend_from_slice(&seq),
            None => bail!(crate::FormatError(format!("line {}: sequence data before the first '>' header", no + 1))),
        }
    }
    if records.is_empty() {
        bail!(crate::FormatError("no FASTA records".into()));
    }
    if let Some(r) = records.iter().find(|r| r.seq.is_empty()) {
        bail!(crate::FormatError(format!("record '{}' has no sequence", r.name)));
    }
    Ok(records)
}

/// Joins records with `sep`; returns the text and each record's 1-based start.
pub fn join_records(records: &[Record], sep: u8, wildcard: u8) -> Result<(Vec<u8>, Vec<usize>)> {
    let mut text = Vec::new();
    let mut offsets = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        if let Some(&b) = r.seq.iter().find(|&&b| b == sep || b == wildcard) {
            bail!(crate::FormatError(format!("record '{}' contains reserved byte {:?}", r.name, b as char)));
        }
        if i > 0 {
            text.push(sep);
        }
        offsets.push(text.len() + 1);
        text.extend_from_slice(&r.seq);
    }
    Ok((text, offsets))
}

/// Parses newline-separated 1-based positions.
pub fn parse_snps(data: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (no, line) in data.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p: usize = line
            .parse()
            .with_context(|| crate::FormatError(format!("SNP file line {}: not a position: {line:?}", no + 1)))?;
        out.push(p);
    }
    Ok(out)
}

/// Replaces every SNP position of `text` with `wildcard`.
pub fn apply_snps(text: &mut [u8], snps: &[usize], wildcard: u8, sep: u8) -> Result<()> {
    for &p in snps {
        if p == 0 || p > text.len() {
            bail!(crate::FormatError(format!("SNP position {p} out of range 1..={}", text.len())));
        }
        if text[p - 1] == sep {
            bail!(crate::FormatError(format!("SNP position {p} falls on a record separator")));
        }
        text[p - 1] = wildcard;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_records() {
        let recs = parse_fasta(b">r1 desc\nACGT\nAC\r\n\n>r2\nGG\n").unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].name, "r1 desc");
        assert_eq!(recs[0].seq, b"ACGTAC");
        let (text, offs) = join_records(&recs, b'|', b'?').unwrap();
        assert_eq!(text, b"ACGTAC|GG");
        assert_eq!(offs, vec![1, 8]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_fasta(b"ACGT\n").is_err());
        assert!(parse_fasta(b"").is_err());
        assert!(parse_fasta(b">a\n>b\nAC\n").is_err());
    }

    #[test]
    fn snp_substitution() {
        let mut t = b"ACGTACGTAC".to_vec();
        apply_snps(&mut t, &parse_snps("2\n\n5\n").unwrap(), b'?', b'|').unwrap();
        assert_eq!(t, b"A?GT?CGTAC");
        assert!(apply_snps(&mut t, &[11], b'?', b'|').is_err());
        assert!(parse_snps("x\n").is_err());
    }
}
