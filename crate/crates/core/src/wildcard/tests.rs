use super::*;
use crate::oracle::naive_match;

const T: &[u8] = b"ab??ca?ab";

fn index(raw: &[u8]) -> WildcardIndex {
    WildcardIndex::build(raw, b'?', BuildOptions { sample_rate: 4, barrier: None }).unwrap()
}

fn positions(ix: &WildcardIndex, p: &[u8]) -> Vec<(usize, u8)> {
    ix.query(p).unwrap().matches.into_iter().map(|r| (r.position, r.mtype)).collect()
}

#[test]
fn parse_example() {
    let p = parse_wildcard_text(T, b'?', None).unwrap();
    assert_eq!(p.starts.iter().map(|s| s + 1).collect::<Vec<_>>(), vec![1, 5, 8]);
    assert_eq!(p.lengths, vec![2, 2, 2]);
    assert_eq!(p.groups, vec![2, 1]);
    assert_eq!((p.d(), p.k_total()), (2, 3));
    assert_eq!(parse_wildcard_text(b"abc", b'?', None).unwrap().d(), 0);
    assert_eq!(parse_wildcard_text(b"?ab", b'?', None), Err(Error::Format("leading wildcard".into())));
    assert_eq!(parse_wildcard_text(b"ab?", b'?', None), Err(Error::Format("trailing wildcard".into())));
    assert!(matches!(parse_wildcard_text(b"", b'?', None), Err(Error::Format(_))));
}

#[test]
fn build_example() {
    let ix = index(T);
    assert_eq!((ix.n(), ix.d(), ix.k_total()), (9, 2, 3));
    assert_eq!(ix.grid_points().len(), 2);
    assert_eq!(ix.group_lengths(), vec![1, 2]);
    assert_eq!(ix.extract_text(), T);
}

#[test]
fn query_examples() {
    let ix = index(T);
    // Groups also match whole patterns: "??" at 3 and "a?" at 6.
    assert_eq!(positions(&ix, b"ab"), vec![(1, 1), (3, 2), (6, 2), (8, 1)]);
    assert_eq!(positions(&ix, b"ca"), vec![(3, 2), (5, 1), (7, 2)]);
    assert_eq!(positions(&ix, b"abddcafa"), vec![(1, 3)]);
    assert_eq!(positions(&ix, b"aca"), vec![(4, 2), (6, 2)]);
    assert_eq!(positions(&ix, b"bca"), vec![(2, 2), (4, 2)]);
    assert_eq!(positions(&ix, b"aza"), vec![(6, 2)]);
    assert_eq!(positions(&ix, b"bxxcaya"), vec![(2, 3)]);
    assert_eq!(positions(&ix, b"abxxcayabq"), vec![]);
    let none = ix.query(b"zzz").unwrap();
    assert!(none.matches.is_empty());
    assert_eq!((none.occ1, none.occ2, none.occ3, none.gamma), (0, 0, 0, 0));
    assert!(matches!(ix.query(b""), Err(Error::Argument(_))));
    assert!(matches!(ix.query(b"a?"), Err(Error::Argument(_))));
}

#[test]
fn type_pipelines() {
    let ix = index(T);
    let p = ix.encode_pattern(b"ca").unwrap();
    let ms = ix.dictionary().index().matching_statistics(&p).unwrap();
    let rev = ix.rev_ranges(&p);
    let mut ws = TypeThreeWorkspace::with_shape(3, 2);
    assert!(ix.match_type3(&p, &ms.entries, &rev, &mut ws).is_empty());
    assert_eq!(ix.match_type1(&p), vec![5]);
    assert!(ix.match_type1(&ix.encode_pattern(b"abababababab").unwrap()).is_empty());
    let p = ix.encode_pattern(b"bca").unwrap();
    let ms = ix.dictionary().index().matching_statistics(&p).unwrap();
    assert_eq!(ix.match_type2(&p, &ms.entries, &ix.rev_ranges(&p)), vec![2, 4]);
    let p = ix.encode_pattern(b"qqqqq").unwrap();
    let ms = ix.dictionary().index().matching_statistics(&p).unwrap();
    assert!(ix.match_type2(&p, &ms.entries, &ix.rev_ranges(&p)).is_empty());
}

#[test]
fn overlap_counts() {
    let ix = index(T);
    assert_eq!(ix.overlap_group_count(5, 2), Ok(0));
    assert_eq!(ix.overlap_group_count(2, 3), Ok(1));
    assert_eq!(ix.overlap_group_count(1, 8), Ok(2));
    assert!(ix.overlap_group_count(9, 2).is_err());
    assert!(ix.overlap_group_count(0, 1).is_err());
}

#[test]
fn no_wildcards() {
    let ix = index(b"abcabc");
    assert_eq!(positions(&ix, b"bc"), vec![(2, 1), (5, 1)]);
    assert_eq!(ix.stats().sections[4].1, 0);
}

#[test]
fn long_groups_and_inside_group_matches() {
    let raw = b"ac????g??t";
    let ix = index(raw);
    for p in [&b"x"[..], b"xx", b"xxxx", b"xxxxx", b"cxx", b"xxg", b"cxxxxg", b"acxxxxgxxt", b"gx", b"xt", b"c"] {
        let want = naive_match(raw, p, b'?');
        let got: Vec<usize> = ix.query(p).unwrap().matches.iter().map(|r| r.position).collect();
        assert_eq!(got, want, "{}", String::from_utf8_lossy(p));
    }
}

#[test]
fn round_trip() {
    let ix = index(T);
    let bytes = ix.to_bytes();
    let back = WildcardIndex::from_bytes(&bytes).unwrap();
    assert_eq!(back, ix);
    let st = ix.stats();
    assert_eq!(st.total_bits, 8 * bytes.len());
    assert_eq!(st.header_bits + st.framing_bits + st.payload_bits(), st.total_bits);
    let mut bad = bytes.clone();
    bad[0] = b'X';
    assert!(matches!(WildcardIndex::from_bytes(&bad), Err(Error::Corrupt(_))));
    assert!(WildcardIndex::from_bytes(&bytes[..bytes.len() - 3]).is_err());
}
