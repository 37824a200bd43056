//! Index over a text with wildcard positions, `T = T_1 φ^k_1 T_2 … φ^k_d T_{d+1}`.
//!
//! Matches are split by how many wildcard groups they overlap: none
//! (Type 1, plain backward search), one (Type 2, range reporting over the
//! group grid) or several (Type 3, a left-to-right sweep that carries
//! verified prefixes forward in the `W` bit rows).

mod file;
mod table;
mod workspace;

pub use file::{IndexStats, FORMAT_VERSION, MAGIC};
pub use table::SegmentTable;
pub use workspace::TypeThreeWorkspace;

use table::SegmentRow;

use crate::bits::CompressedIntegerArray;
use crate::dictionary::FullTextDictionary;
use crate::error::{Error, Result};
use crate::grid::PointGrid;
use crate::suffix::{
    Alphabet, IndexOptions, MsEntry, SequenceIndex, SuffixRange, Symbol, FIRST_CODE, SENTINEL, WILDCARD,
};

/// A wildcard text split into segments. Positions are 0-based here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedText {
    pub alphabet: Alphabet,
    /// The text mapped to codes, without the sentinel.
    pub symbols: Vec<Symbol>,
    pub starts: Vec<usize>,
    pub lengths: Vec<usize>,
    /// Size of each wildcard group, `d` entries.
    pub groups: Vec<usize>,
}

impl ParsedText {
    pub fn d(&self) -> usize {
        self.groups.len()
    }

    pub fn k_total(&self) -> usize {
        self.groups.iter().sum()
    }
}

pub fn parse_wildcard_text(raw: &[u8], wildcard: u8, barrier: Option<u8>) -> Result<ParsedText> {
    match (raw.first(), raw.last()) {
        (None, _) => return Err(Error::Format("empty text".into())),
        (Some(&b), _) if b == wildcard => return Err(Error::Format("leading wildcard".into())),
        (_, Some(&b)) if b == wildcard => return Err(Error::Format("trailing wildcard".into())),
        _ => {}
    }
    let alphabet = Alphabet::from_text(raw, Some(wildcard), barrier)?;
    let symbols: Vec<Symbol> =
        raw.iter().map(|&b| if b == wildcard { WILDCARD } else { alphabet.code(b).unwrap() }).collect();
    let (mut starts, mut lengths, mut groups) = (Vec::new(), Vec::new(), Vec::new());
    let mut p = 0;
    while p < raw.len() {
        let s = p;
        while p < raw.len() && raw[p] != wildcard {
            p += 1;
        }
        starts.push(s);
        lengths.push(p - s);
        let g = p;
        while p < raw.len() && raw[p] == wildcard {
            p += 1;
        }
        if p > g {
            groups.push(p - g);
        }
    }
    Ok(ParsedText { alphabet, symbols, starts, lengths, groups })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub sample_rate: usize,
    /// Record separator byte: present in the text, matched by nothing.
    pub barrier: Option<u8>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { sample_rate: crate::suffix::DEFAULT_SAMPLE_RATE, barrier: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchResult {
    /// 1-based start in the text.
    pub position: usize,
    /// 1, 2 or 3: the match overlaps no, one, or several wildcard groups.
    pub mtype: u8,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryOutput {
    /// Sorted by position.
    pub matches: Vec<MatchResult>,
    pub occ1: usize,
    pub occ2: usize,
    pub occ3: usize,
    /// `(i, segment)` pairs with the segment a prefix of `P[i..]`.
    pub gamma: usize,
}

/// Start-row rank for a segmented text indexed by `idx`; see the
/// dictionary module for the definition of lex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct StartRank {
    l0: usize,
    below: usize,
}

impl StartRank {
    fn new(idx: &SequenceIndex) -> Self {
        let l0 = idx.count_less(FIRST_CODE);
        StartRank { l0, below: idx.char_rank(WILDCARD, l0) + idx.char_rank(SENTINEL, l0) }
    }

    #[inline]
    fn rank(&self, idx: &SequenceIndex, i: usize) -> usize {
        if i <= self.l0 {
            0
        } else {
            idx.char_rank(WILDCARD, i) + idx.char_rank(SENTINEL, i) - self.below
        }
    }

    fn ids(&self, idx: &SequenceIndex, r: SuffixRange) -> Option<(u32, u32)> {
        if r.is_empty() {
            return None;
        }
        let (a, b) = (self.rank(idx, r.lo - 1) + 1, self.rank(idx, r.hi));
        (a <= b).then_some((a as u32, b as u32))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WildcardIndex {
    alphabet: Alphabet,
    wildcard: u8,
    sample_rate: usize,
    fwd: FullTextDictionary,
    rev: SequenceIndex,
    rev_starts: StartRank,
    seg: SegmentTable,
    /// Lex id (0-based) to position-order segment index.
    pi: CompressedIntegerArray,
    /// One grid per distinct group length, ascending. A group between
    /// segments `s` and `s + 1` is the point (reverse lex id of `s`,
    /// forward lex id of `s + 1`).
    grids: Vec<(usize, PointGrid)>,
}

impl WildcardIndex {
    pub fn build(raw: &[u8], wildcard: u8, opts: BuildOptions) -> Result<Self> {
        let parsed = parse_wildcard_text(raw, wildcard, opts.barrier)?;
        Self::from_parsed(parsed, wildcard, opts.sample_rate)
    }

    pub fn from_parsed(parsed: ParsedText, wildcard: u8, sample_rate: usize) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::Argument("sample rate must be at least 1".into()));
        }
        let ParsedText { alphabet, symbols, starts, lengths, groups } = parsed;
        let segs: Vec<&[Symbol]> = starts.iter().zip(&lengths).map(|(&s, &l)| &symbols[s..s + l]).collect();
        let opts = IndexOptions { sample_rate: Some(sample_rate), lcp: true };
        let (fwd, info) = FullTextDictionary::build(&segs, &groups, false, opts)?;
        debug_assert_eq!(info.starts, starts);
        drop(info.text);
        let pi = info.pi;
        let count = segs.len();
        let mut fwd_lex = vec![0u32; count];
        for (t, &s) in pi.iter().enumerate() {
            fwd_lex[s] = t as u32 + 1;
        }

        let n0 = symbols.len();
        let mut rtext: Vec<Symbol> = symbols.iter().rev().copied().collect();
        rtext.push(SENTINEL);
        let (rev, rsa) = SequenceIndex::build_with_sa(&rtext, IndexOptions { sample_rate: None, lcp: false })?;
        let mut seg_at = vec![0u32; n0 + 1];
        for s in 0..count {
            seg_at[n0 - (starts[s] + lengths[s])] = s as u32 + 1;
        }
        let mut rev_lex = vec![0u32; count];
        let mut t = 0;
        for &p in &rsa {
            if seg_at[p] != 0 {
                t += 1;
                rev_lex[seg_at[p] as usize - 1] = t;
            }
        }
        drop(seg_at);
        drop(rsa);

        let fidx = fwd.index();
        let rows: Vec<SegmentRow> = (0..count)
            .map(|s| {
                let rseg = &rtext[n0 - (starts[s] + lengths[s])..n0 - starts[s]];
                SegmentRow {
                    x: starts[s] + 1,
                    len: lengths[s],
                    k: groups.get(s).copied().unwrap_or(0),
                    rsa: fidx.find_range(segs[s]),
                    rev_rsa: rev.find_range(rseg),
                }
            })
            .collect();
        let seg = SegmentTable::new(&rows);
        drop(segs);
        drop(symbols);

        let mut by_len: std::collections::BTreeMap<usize, Vec<(u32, u32)>> = Default::default();
        for (s, &g) in groups.iter().enumerate() {
            by_len.entry(g).or_default().push((rev_lex[s], fwd_lex[s + 1]));
        }
        let grids = by_len.into_iter().map(|(g, pts)| Ok((g, PointGrid::build(&pts)?))).collect::<Result<Vec<_>>>()?;
        let rev_starts = StartRank::new(&rev);
        Ok(WildcardIndex {
            alphabet,
            wildcard,
            sample_rate,
            fwd,
            rev,
            rev_starts,
            seg,
            pi: CompressedIntegerArray::from_slice(&pi.iter().map(|&s| s as u64).collect::<Vec<_>>()),
            grids,
        })
    }

    /// Text length, sentinel excluded.
    pub fn n(&self) -> usize {
        self.seg.text_len()
    }

    /// Number of wildcard groups.
    pub fn d(&self) -> usize {
        self.seg.len() - 1
    }

    /// Number of wildcard positions.
    pub fn k_total(&self) -> usize {
        (0..self.seg.len()).map(|s| self.seg.k(s)).sum()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn wildcard(&self) -> u8 {
        self.wildcard
    }

    pub fn sample_rate(&self) -> usize {
        self.sample_rate
    }

    pub fn dictionary(&self) -> &FullTextDictionary {
        &self.fwd
    }

    pub fn reverse_index(&self) -> &SequenceIndex {
        &self.rev
    }

    pub fn segments(&self) -> &SegmentTable {
        &self.seg
    }

    /// Position-order segment index (0-based) of lex id `t` (1-based).
    #[inline]
    pub fn pi(&self, t: usize) -> usize {
        self.pi.get(t - 1) as usize
    }

    /// Distinct group lengths, ascending.
    pub fn group_lengths(&self) -> Vec<usize> {
        self.grids.iter().map(|g| g.0).collect()
    }

    /// All grid points as `(group length, x, y)`.
    pub fn grid_points(&self) -> Vec<(usize, u32, u32)> {
        self.grids.iter().flat_map(|(g, grid)| grid.points().into_iter().map(move |(x, y)| (*g, x, y))).collect()
    }

    /// Reverse lex ids of the occurrences of segment `s`'s string.
    pub fn reverse_lex_ids(&self, s: usize) -> Option<(u32, u32)> {
        self.rev_starts.ids(&self.rev, self.seg.rev_rsa(s))
    }

    pub fn overlap_group_count(&self, position: usize, m: usize) -> Result<usize> {
        self.seg.overlap_group_count(position, m)
    }

    pub fn encode_pattern(&self, pattern: &[u8]) -> Result<Vec<Symbol>> {
        if pattern.is_empty() {
            return Err(Error::Argument("empty pattern".into()));
        }
        if pattern.contains(&self.wildcard) {
            return Err(Error::Argument("pattern contains the wildcard byte".into()));
        }
        Ok(self.alphabet.encode_pattern(pattern))
    }

    /// `out[s]` = reverse-index range of `reverse(P[1..s])`, for `s` in `0..=m`.
    pub fn rev_ranges_into(&self, p: &[Symbol], out: &mut Vec<SuffixRange>) {
        out.clear();
        let mut r = self.rev.full_range();
        out.push(r);
        for &c in p {
            r = self.rev.backward_extend(r, c);
            out.push(r);
        }
    }

    pub fn rev_ranges(&self, p: &[Symbol]) -> Vec<SuffixRange> {
        let mut v = Vec::with_capacity(p.len() + 1);
        self.rev_ranges_into(p, &mut v);
        v
    }

    /// Forward range of `P[i..m]` for each 1-based `i` (slot 0 unused),
    /// empty where the whole suffix does not occur.
    fn full_suffix_ranges(ms: &[MsEntry], out: &mut Vec<SuffixRange>) {
        let m = ms.len();
        out.clear();
        out.push(SuffixRange::EMPTY);
        out.extend(ms.iter().enumerate().map(|(i, e)| if e.len == m - i { e.range } else { SuffixRange::EMPTY }));
    }

    pub fn match_type1(&self, p: &[Symbol]) -> Vec<usize> {
        self.fwd.locate_pattern(p).expect("forward index keeps SA samples")
    }

    /// Matches overlapping exactly one group.
    pub fn match_type2(&self, p: &[Symbol], ms: &[MsEntry], rev: &[SuffixRange]) -> Vec<usize> {
        let mut fwd = Vec::with_capacity(p.len() + 1);
        Self::full_suffix_ranges(ms, &mut fwd);
        let mut out = Vec::new();
        self.type2_into(p.len(), &fwd, rev, &mut out);
        out
    }

    fn type2_into(&self, m: usize, fwd: &[SuffixRange], rev: &[SuffixRange], out: &mut Vec<usize>) {
        let start = out.len();
        let y_ids = |i: usize| self.fwd.segments_with_prefix(fwd[i]).map(|(a, b)| (a as u32, b as u32));
        let x_ids = |s: usize| self.rev_starts.ids(&self.rev, rev[s]);
        let next_x = |y: u32| self.seg.x(self.pi(y as usize));

        // P[1..i-1-g] ends T_s, g wildcards, P[i..m] starts T_{s+1}.
        for i in 2..=m {
            let Some((y1, y2)) = y_ids(i) else { continue };
            for (g, grid) in self.grids.iter().take_while(|(g, _)| *g + 2 <= i) {
                if let Some((x1, x2)) = x_ids(i - 1 - g) {
                    grid.report_with(x1, x2, y1, y2, |_, y| out.push(next_x(y) + 1 - i));
                }
            }
        }
        let kmax = self.grids.last().map_or(0, |g| g.0);
        for t in 1..m.min(kmax + 1) {
            let big = self.grids.iter().skip_while(|(g, _)| *g < t);
            // Starts `t` places before the end of a group.
            if let Some((y1, y2)) = y_ids(t + 1) {
                for (_, grid) in big.clone() {
                    grid.report_with(0, u32::MAX, y1, y2, |_, y| out.push(next_x(y) - t));
                }
            }
            // Ends `t` places into a group.
            if let Some((x1, x2)) = x_ids(m - t) {
                for (g, grid) in big {
                    grid.report_with(x1, x2, 0, u32::MAX, |_, y| out.push(next_x(y) - g - (m - t)));
                }
            }
        }
        // Inside a single group.
        for (g, grid) in self.grids.iter().skip_while(|(g, _)| *g < m) {
            grid.report_with(0, u32::MAX, 0, u32::MAX, |_, y| {
                let end = next_x(y);
                out.extend(end - g..=end - m);
            });
        }
        out[start..].sort_unstable();
        let mut w = start;
        for r in start..out.len() {
            if r == start || out[r] != out[w - 1] {
                out[w] = out[r];
                w += 1;
            }
        }
        out.truncate(w);
        debug_assert!(out[start..].iter().all(|&q| self.seg.overlap_group_count(q, m) == Ok(1)));
    }

    /// Matches overlapping two or more groups. Any prior contents of `ws` are discarded.
    pub fn match_type3(
        &self,
        p: &[Symbol],
        ms: &[MsEntry],
        rev: &[SuffixRange],
        ws: &mut TypeThreeWorkspace,
    ) -> Vec<usize> {
        ws.prepare(self.seg.len(), p.len());
        let mut fwd = Vec::with_capacity(p.len() + 1);
        Self::full_suffix_ranges(ms, &mut fwd);
        let mut out = Vec::new();
        self.type3_into(ms, &fwd, rev, ws, &mut out);
        out
    }

    /// Returns γ.
    fn type3_into(
        &self,
        ms: &[MsEntry],
        fwd: &[SuffixRange],
        rev: &[SuffixRange],
        ws: &mut TypeThreeWorkspace,
        out: &mut Vec<usize>,
    ) -> usize {
        let m = ms.len();
        let last = self.seg.len() - 1;
        let start = out.len();
        let mut gamma = 0;
        for i in 1..=m {
            let e = ms[i - 1];
            if e.len == 0 {
                continue;
            }
            let iv = self.fwd.smallest_enclosing_interval(e.range.lo, e.len);
            gamma += self.fwd.chain_len(iv);
            for t in self.fwd.enclosing_chain(iv) {
                let s = self.pi(t);
                let (x, l, k) = (self.seg.x(s), self.seg.seg_len(s), self.seg.k(s));
                let prefix_ok = if s == 0 {
                    i == 1
                } else {
                    let (lp, kp) = (self.seg.seg_len(s - 1), self.seg.k(s - 1));
                    if i - 1 < lp + kp {
                        i - 1 <= kp || rev[i - 1 - kp].encloses(&self.seg.rev_rsa(s - 1))
                    } else {
                        ws.get(s, i)
                    }
                };
                if !prefix_ok {
                    continue;
                }
                let rest = m + 1 - i - l;
                if rest <= k {
                    out.push(x + 1 - i);
                } else if s < last {
                    let next = i + l + k;
                    if rest - k < self.seg.seg_len(s + 1) {
                        if fwd[next].encloses(&self.seg.rsa(s + 1)) {
                            out.push(x + 1 - i);
                        }
                    } else {
                        ws.set(s + 1, next);
                    }
                }
            }
        }
        let kept: Vec<usize> = out[start..]
            .iter()
            .copied()
            .filter(|&q| self.seg.overlap_group_count(q, m).is_ok_and(|c| c >= 2))
            .collect();
        out.truncate(start);
        out.extend(kept);
        out[start..].sort_unstable();
        let mut w = start;
        for r in start..out.len() {
            if r == start || out[r] != out[w - 1] {
                out[w] = out[r];
                w += 1;
            }
        }
        out.truncate(w);
        gamma
    }

    pub fn query(&self, pattern: &[u8]) -> Result<QueryOutput> {
        let mut ws = TypeThreeWorkspace::new();
        self.query_with(pattern, &mut ws)
    }

    /// As [`query`](Self::query), reusing `ws` across calls.
    pub fn query_with(&self, pattern: &[u8], ws: &mut TypeThreeWorkspace) -> Result<QueryOutput> {
        let p = self.encode_pattern(pattern)?;
        self.query_symbols(&p, ws)
    }

    pub fn query_symbols(&self, p: &[Symbol], ws: &mut TypeThreeWorkspace) -> Result<QueryOutput> {
        let m = p.len();
        if m == 0 {
            return Err(Error::Argument("empty pattern".into()));
        }
        ws.prepare(self.seg.len(), m);
        let mut ms = std::mem::take(&mut ws.ms);
        let mut rev = std::mem::take(&mut ws.rev);
        let mut fwd = std::mem::take(&mut ws.fwd);
        self.fwd.index().matching_statistics_into(p, &mut ms)?;
        self.rev_ranges_into(p, &mut rev);
        Self::full_suffix_ranges(&ms, &mut fwd);

        let mut out = QueryOutput::default();
        let r = fwd[1];
        let fidx = self.fwd.index();
        let mut t1: Vec<usize> = r.rows().map(|row| fidx.locate(row)).collect::<Result<_>>()?;
        t1.sort_unstable();
        let mut t2 = Vec::new();
        if m <= self.n() {
            self.type2_into(m, &fwd, &rev, &mut t2);
        }
        let mut t3 = Vec::new();
        out.gamma = self.type3_into(&ms, &fwd, &rev, ws, &mut t3);
        out.occ1 = t1.len();
        out.occ2 = t2.len();
        out.occ3 = t3.len();
        out.matches.reserve(t1.len() + t2.len() + t3.len());
        out.matches.extend(t1.into_iter().map(|position| MatchResult { position, mtype: 1 }));
        out.matches.extend(t2.into_iter().map(|position| MatchResult { position, mtype: 2 }));
        out.matches.extend(t3.into_iter().map(|position| MatchResult { position, mtype: 3 }));
        out.matches.sort_unstable();
        ws.ms = ms;
        ws.rev = rev;
        ws.fwd = fwd;
        Ok(out)
    }

    /// Reconstructs the original text bytes from the forward index.
    pub fn extract_text(&self) -> Vec<u8> {
        let syms = self.fwd.index().extract_text();
        syms[..syms.len() - 1]
            .iter()
            .map(|&c| if c == WILDCARD { self.wildcard } else { self.alphabet.decode(c).unwrap_or(b'?') })
            .collect()
    }

    pub fn component_bits(&self) -> Vec<(&'static str, usize)> {
        let mut v = self.fwd.component_bits();
        for (name, bits) in self.rev.component_bits() {
            v.push((rev_name(name), bits));
        }
        v.push(("segment_table", self.seg.size_bits()));
        v.push(("pi", self.pi.size_bits()));
        v.push(("grid", self.grids.iter().map(|g| g.1.size_bits()).sum()));
        v
    }
}

fn rev_name(name: &str) -> &'static str {
    match name {
        "bwt" => "rev_bwt",
        "c_table" => "rev_c_table",
        "sa_samples" => "rev_sa_samples",
        _ => "rev_lcp",
    }
}

#[cfg(test)]
mod tests;
