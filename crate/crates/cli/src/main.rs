//! `wcix`: build, query and inspect wildcard text indexes.

mod fasta;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wcix::wildcard::parse_wildcard_text;
use wcix::{TypeThreeWorkspace, WildcardIndex};

/// Separator placed between FASTA records. Never matched by a pattern.
const RECORD_SEPARATOR: u8 = b'|';

/// Input that cannot be parsed (exit code 2).
#[derive(Debug)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

/// Bad arguments discovered after parsing (exit code 1).
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(name = "wcix", version, about = "Exact pattern matching over texts with wildcard positions")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a plain text or a FASTA file with SNP positions.
    #[command(group(ArgGroup::new("input").required(true).args(["text", "fasta"])))]
    Build {
        #[arg(long)]
        text: Option<PathBuf>,
        #[arg(long, requires = "snps")]
        fasta: Option<PathBuf>,
        /// Newline-separated 1-based positions to replace by the wildcard.
        #[arg(long, requires = "fasta")]
        snps: Option<PathBuf>,
        #[arg(long, default_value_t = '?')]
        wildcard: char,
        #[arg(long, default_value_t = 32)]
        sample_rate: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Report every occurrence of one or more patterns.
    #[command(group(ArgGroup::new("source").required(true).args(["index", "text"])))]
    #[command(group(ArgGroup::new("pat").required(true).args(["pattern", "patterns"])))]
    Query {
        #[arg(long)]
        index: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<String>,
        /// One pattern per line; blank lines are skipped.
        #[arg(long)]
        patterns: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Answer with the brute-force matcher over a raw text file.
        #[arg(long, hide = true, requires = "text")]
        oracle: bool,
        #[arg(long, hide = true, requires = "oracle")]
        text: Option<PathBuf>,
        #[arg(long, hide = true, default_value_t = '?')]
        wildcard: char,
    },
    /// Print per-component space usage of an index.
    Stats {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = String::new();
    let res = match cli.cmd {
        Command::Build { text, fasta, snps, wildcard, sample_rate, out: path, format } => {
            cmd_build(text, fasta, snps, wildcard, sample_rate, &path, format, &mut out)
        }
        Command::Query { index, pattern, patterns, format, oracle, text, wildcard } => {
            cmd_query(index, text, oracle, wildcard, pattern, patterns, format, &mut out)
        }
        Command::Stats { index, format } => cmd_stats(&index, format, &mut out),
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(out.as_bytes());
    let _ = lock.flush();
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wcix: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<UsageError>() {
            return 1;
        }
        if cause.is::<FormatError>() || cause.is::<std::io::Error>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<wcix::Error>() {
            return match err {
                wcix::Error::Corrupt(_) => 3,
                wcix::Error::Format(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn byte_of(c: char, what: &str) -> Result<u8> {
    if c.is_ascii() {
        Ok(c as u8)
    } else {
        bail!(UsageError(format!("{what} must be a single ASCII character")))
    }
}

/// Raw text from `--text`, with one trailing newline removed.
fn load_text(path: &Path) -> Result<Vec<u8>> {
    let mut raw = read(path)?;
    if raw.last() == Some(&b'\n') {
        raw.pop();
        if raw.last() == Some(&b'\r') {
            raw.pop();
        }
    }
    Ok(raw)
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    text: Option<PathBuf>,
    fasta: Option<PathBuf>,
    snps: Option<PathBuf>,
    wildcard: char,
    sample_rate: usize,
    out_path: &Path,
    format: Format,
    out: &mut String,
) -> Result<()> {
    let wildcard = byte_of(wildcard, "--wildcard")?;
    if sample_rate == 0 {
        bail!(UsageError("--sample-rate must be positive".into()));
    }
    let (raw, barrier, records) = match (text, fasta, snps) {
        (Some(t), _, _) => (load_text(&t)?, None, Vec::new()),
        (None, Some(f), Some(s)) => {
            if wildcard == RECORD_SEPARATOR {
                bail!(UsageError(format!("--wildcard may not be {:?}", RECORD_SEPARATOR as char)));
            }
            let recs = fasta::parse_fasta(&read(&f)?)?;
            let (mut joined, offsets) = fasta::join_records(&recs, RECORD_SEPARATOR, wildcard)?;
            let snp_text = String::from_utf8(read(&s)?).map_err(|_| FormatError("SNP file is not UTF-8".into()))?;
            fasta::apply_snps(&mut joined, &fasta::parse_snps(&snp_text)?, wildcard, RECORD_SEPARATOR)?;
            let barrier = (recs.len() > 1).then_some(RECORD_SEPARATOR);
            let names: Vec<(String, usize)> = recs.into_iter().map(|r| r.name).zip(offsets).collect();
            (joined, barrier, names)
        }
        _ => bail!(UsageError("give --text, or --fasta with --snps".into())),
    };
    let parsed = parse_wildcard_text(&raw, wildcard, barrier)?;
    drop(raw);
    let ix = WildcardIndex::from_parsed(parsed, wildcard, sample_rate)?;
    let bytes = ix.to_bytes();
    std::fs::write(out_path, &bytes).with_context(|| format!("cannot write {}", out_path.display()))?;
    let stats = ix.stats();
    match format {
        Format::Tsv => {
            for (name, off) in &records {
                let _ = writeln!(out, "record\t{name}\t{off}");
            }
            write_stats_tsv(&stats, out);
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Rec<'a> {
                name: &'a str,
                offset: usize,
            }
            let recs: Vec<Rec> = records.iter().map(|(n, o)| Rec { name: n, offset: *o }).collect();
            let mut v = stats_json(&stats);
            v["records"] = serde_json::to_value(recs)?;
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v)?);
        }
    }
    Ok(())
}

fn load_index(path: &Path) -> Result<WildcardIndex> {
    let bytes = read(path)?;
    WildcardIndex::from_bytes(&bytes).with_context(|| format!("cannot load {}", path.display()))
}

fn load_patterns(pattern: Option<String>, patterns: Option<PathBuf>) -> Result<Vec<Vec<u8>>> {
    let list: Vec<Vec<u8>> = match (pattern, patterns) {
        (Some(p), _) => vec![p.into_bytes()],
        (None, Some(f)) => read(&f)?
            .split(|&b| b == b'\n')
            .map(|l| l.strip_suffix(b"\r").unwrap_or(l).to_vec())
            .filter(|l| !l.is_empty())
            .collect(),
        _ => bail!(UsageError("give --pattern or --patterns".into())),
    };
    if list.is_empty() || list.iter().any(|p| p.is_empty()) {
        bail!(UsageError("empty pattern".into()));
    }
    Ok(list)
}

#[derive(Serialize)]
struct JsonMatch {
    position: usize,
    #[serde(rename = "type")]
    mtype: u8,
}

#[derive(Serialize)]
struct PatternReport {
    pattern_id: usize,
    pattern: String,
    matches: Vec<JsonMatch>,
    occ1: usize,
    occ2: usize,
    occ3: usize,
    gamma: usize,
}

fn worker_count(jobs: usize) -> usize {
    let avail = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let cap = std::env::var("WCIX_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&v| v > 0);
    cap.map_or(avail, |c| c.min(avail)).min(jobs).max(1)
}

/// Runs `f` over every pattern with one workspace per worker; results keep input order.
fn run_batch<F>(pats: &[Vec<u8>], f: F) -> Result<Vec<wcix::QueryOutput>>
where
    F: Fn(&[u8], &mut TypeThreeWorkspace) -> Result<wcix::QueryOutput> + Sync,
{
    let workers = worker_count(pats.len());
    let chunk = pats.len().div_ceil(workers);
    let parts: Vec<Result<Vec<wcix::QueryOutput>>> = std::thread::scope(|s| {
        let handles: Vec<_> = pats
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || {
                    let mut ws = TypeThreeWorkspace::new();
                    c.iter().map(|p| f(p, &mut ws)).collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("query worker panicked")).collect()
    });
    let mut all = Vec::with_capacity(pats.len());
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

fn oracle_query(raw: &[u8], wildcard: u8, p: &[u8]) -> Result<wcix::QueryOutput> {
    use wcix::oracle::{naive_match, naive_prefix_segments};
    if p.contains(&wildcard) {
        bail!(UsageError("pattern contains the wildcard byte".into()));
    }
    let mut q = wcix::QueryOutput::default();
    let wild: Vec<bool> = raw.iter().map(|&b| b == wildcard).collect();
    for pos in naive_match(raw, p, wildcard) {
        let win = &wild[pos - 1..pos - 1 + p.len()];
        let groups = win.iter().enumerate().filter(|&(i, &w)| w && (i == 0 || !win[i - 1])).count();
        let mtype = groups.min(2) as u8 + 1;
        match mtype {
            1 => q.occ1 += 1,
            2 => q.occ2 += 1,
            _ => q.occ3 += 1,
        }
        q.matches.push(wcix::MatchResult { position: pos, mtype });
    }
    let segs: Vec<Vec<u32>> = raw
        .split(|&b| b == wildcard)
        .filter(|s| !s.is_empty())
        .map(|s| s.iter().map(|&b| b as u32).collect())
        .collect();
    let pat: Vec<u32> = p.iter().map(|&b| b as u32).collect();
    q.gamma = naive_prefix_segments(&segs, &pat).len();
    Ok(q)
}

#[allow(clippy::too_many_arguments)]
fn cmd_query(
    index: Option<PathBuf>,
    text: Option<PathBuf>,
    oracle: bool,
    wildcard: char,
    pattern: Option<String>,
    patterns: Option<PathBuf>,
    format: Format,
    out: &mut String,
) -> Result<()> {
    let pats = load_patterns(pattern, patterns)?;
    let results = if oracle {
        let raw = load_text(text.as_deref().expect("clap requires --text"))?;
        let wildcard = byte_of(wildcard, "--wildcard")?;
        parse_wildcard_text(&raw, wildcard, None)?;
        run_batch(&pats, |p, _| oracle_query(&raw, wildcard, p))?
    } else {
        let Some(path) = index else { bail!(UsageError("--index is required".into())) };
        let ix = load_index(&path)?;
        run_batch(&pats, |p, ws| {
            ix.query_with(p, ws).map_err(|e| match e {
                wcix::Error::Argument(m) => UsageError(m).into(),
                e => e.into(),
            })
        })?
    };
    match format {
        Format::Tsv => {
            for (i, (p, q)) in pats.iter().zip(&results).enumerate() {
                for m in &q.matches {
                    let _ = writeln!(out, "{}\t{}\t{}", i + 1, m.position, m.mtype);
                }
                let _ = writeln!(
                    out,
                    "# pattern_id={} pattern={} occ1={} occ2={} occ3={} gamma={}",
                    i + 1,
                    String::from_utf8_lossy(p),
                    q.occ1,
                    q.occ2,
                    q.occ3,
                    q.gamma
                );
            }
        }
        Format::Json => {
            let reports: Vec<PatternReport> = pats
                .iter()
                .zip(results)
                .enumerate()
                .map(|(i, (p, q))| PatternReport {
                    pattern_id: i + 1,
                    pattern: String::from_utf8_lossy(p).into_owned(),
                    matches: q.matches.iter().map(|m| JsonMatch { position: m.position, mtype: m.mtype }).collect(),
                    occ1: q.occ1,
                    occ2: q.occ2,
                    occ3: q.occ3,
                    gamma: q.gamma,
                })
                .collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&serde_json::json!({ "patterns": reports }))?);
        }
    }
    Ok(())
}

fn write_stats_tsv(s: &wcix::wildcard::IndexStats, out: &mut String) {
    let _ = writeln!(out, "n\t{}\nsigma\t{}\nd\t{}\nk\t{}", s.n, s.sigma, s.d, s.k);
    let _ = writeln!(out, "header_bits\t{}\nframing_bits\t{}", s.header_bits, s.framing_bits);
    for (name, bits) in &s.sections {
        let _ = writeln!(out, "section.{name}\t{bits}");
    }
    for (name, bits) in &s.components {
        let _ = writeln!(out, "component.{name}\t{bits}");
    }
    let _ = writeln!(out, "payload_bits\t{}\ntotal_bits\t{}", s.payload_bits(), s.total_bits);
    let _ = writeln!(out, "bits_per_symbol\t{:.4}", s.bits_per_symbol());
}

fn stats_json(s: &wcix::wildcard::IndexStats) -> serde_json::Value {
    let map = |v: &[(&str, usize)]| {
        v.iter().map(|(k, b)| ((*k).to_string(), serde_json::json!(b))).collect::<serde_json::Map<_, _>>()
    };
    serde_json::json!({
        "n": s.n,
        "sigma": s.sigma,
        "d": s.d,
        "k": s.k,
        "header_bits": s.header_bits,
        "framing_bits": s.framing_bits,
        "sections": map(&s.sections),
        "components": map(&s.components),
        "payload_bits": s.payload_bits(),
        "total_bits": s.total_bits,
        "bits_per_symbol": s.bits_per_symbol(),
    })
}

fn cmd_stats(path: &Path, format: Format, out: &mut String) -> Result<()> {
    let stats = load_index(path)?.stats();
    match format {
        Format::Tsv => write_stats_tsv(&stats, out),
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&stats_json(&stats))?);
        }
    }
    Ok(())
}
