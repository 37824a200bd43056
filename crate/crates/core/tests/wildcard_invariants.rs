mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use wcix::oracle::naive_match;
use wcix::wildcard::BuildOptions;
use wcix::{TypeThreeWorkspace, WildcardIndex};

fn build(t: &[u8]) -> WildcardIndex {
    WildcardIndex::build(t, b'?', BuildOptions { sample_rate: 8, barrier: None }).unwrap()
}

#[test]
fn w_bits_only_mark_verified_prefixes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for case in 0..150 {
        let alpha = common::ALPHABETS[case % 2];
        let (n, d) = (rng.gen_range(20..200), rng.gen_range(2..30));
        let t = common::wildcard_text(&mut rng, alpha, n, d);
        let ix = build(&t);
        let segs = ix.segments();
        for _ in 0..20 {
            let p = common::pattern(&mut rng, alpha, &t, 40);
            let sym = ix.encode_pattern(&p).unwrap();
            let ms = ix.dictionary().index().matching_statistics(&sym).unwrap();
            let rev = ix.rev_ranges(&sym);
            let mut ws = TypeThreeWorkspace::with_shape(segs.len(), p.len());
            ix.match_type3(&sym, &ms.entries, &rev, &mut ws);
            for (s, i) in ws.set_slots() {
                let x = segs.x(s);
                assert!(x >= i, "start before the text");
                let window = &t[x - i..x - 1];
                assert!(window.iter().zip(&p[..i - 1]).all(|(&a, &b)| a == b'?' || a == b));
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn pipelines_partition_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for case in 0..150 {
        let alpha = common::ALPHABETS[case % 3];
        let (n, d) = (rng.gen_range(10..150), rng.gen_range(0..20));
        let t = common::wildcard_text(&mut rng, alpha, n, d);
        let ix = build(&t);
        for _ in 0..20 {
            let p = common::pattern(&mut rng, alpha, &t, 30);
            let sym = ix.encode_pattern(&p).unwrap();
            let ms = ix.dictionary().index().matching_statistics(&sym).unwrap();
            let rev = ix.rev_ranges(&sym);
            let mut ws = TypeThreeWorkspace::with_shape(ix.segments().len(), p.len());
            let parts = [
                ix.match_type1(&sym),
                ix.match_type2(&sym, &ms.entries, &rev),
                ix.match_type3(&sym, &ms.entries, &rev, &mut ws),
            ];
            let mut all = BTreeSet::new();
            for (ty, part) in parts.iter().enumerate() {
                for &q in part {
                    assert!(all.insert(q), "position {q} reported twice");
                    assert_eq!(ix.overlap_group_count(q, p.len()).unwrap().min(2), ty);
                }
            }
            assert_eq!(all.into_iter().collect::<Vec<_>>(), naive_match(&t, &p, b'?'));
        }
    }
}

#[test]
fn pi_and_grid_round_trip_to_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let (n, d) = (rng.gen_range(10..300), rng.gen_range(0..40));
        let t = common::wildcard_text(&mut rng, b"acgt", n, d);
        let ix = build(&t);
        let segs = ix.segments();
        let perm: BTreeSet<usize> = (1..=segs.len()).map(|t| ix.pi(t)).collect();
        assert_eq!(perm, (0..segs.len()).collect());
        let points = ix.grid_points();
        assert_eq!(points.len(), ix.d());
        let mut groups = BTreeSet::new();
        for (g, x, y) in points {
            let s = ix.pi(y as usize) - 1;
            assert_eq!(segs.k(s), g);
            let (lo, hi) = ix.reverse_lex_ids(s).unwrap();
            assert!((lo..=hi).contains(&x));
            assert!(groups.insert(s));
        }
    }
}

#[test]
fn serialized_indexes_answer_identically() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for case in 0..40 {
        let alpha = common::ALPHABETS[case % 3];
        let (n, d) = (rng.gen_range(10..400), rng.gen_range(0..30));
        let t = common::wildcard_text(&mut rng, alpha, n, d);
        let ix = build(&t);
        let back = WildcardIndex::from_bytes(&ix.to_bytes()).unwrap();
        assert_eq!(back.extract_text(), t);
        for _ in 0..20 {
            let p = common::pattern(&mut rng, alpha, &t, 30);
            assert_eq!(back.query(&p).unwrap(), ix.query(&p).unwrap());
        }
    }
}

#[test]
fn corrupt_files_are_rejected() {
    let ix = build(b"acgt??acg?tta");
    let bytes = ix.to_bytes();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..300 {
        let mut b = bytes.clone();
        let i = rng.gen_range(0..b.len());
        b[i] ^= 1 << rng.gen_range(0..8);
        assert!(WildcardIndex::from_bytes(&b).is_err());
    }
    for cut in [0, 3, 8, bytes.len() / 2, bytes.len() - 1] {
        assert!(WildcardIndex::from_bytes(&bytes[..cut]).is_err());
    }
}
