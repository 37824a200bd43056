use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wcix::oracle::{naive_prefix_segments, NaiveIndex};
use wcix::suffix::{IndexOptions, Symbol, WILDCARD};
use wcix::FullTextDictionary;

fn random_dictionary(rng: &mut impl Rng) -> (Vec<Vec<Symbol>>, Vec<usize>, bool) {
    let sigma = if rng.gen_bool(0.5) { 2 } else { 4 };
    let count = rng.gen_range(1..=16);
    let segs: Vec<Vec<Symbol>> =
        (0..count).map(|_| (0..rng.gen_range(1..=8)).map(|_| rng.gen_range(2..2 + sigma)).collect()).collect();
    let leading = rng.gen_bool(0.5);
    let gaps = if leading { count } else { count - 1 };
    let groups = (0..gaps).map(|_| rng.gen_range(1..=3)).collect();
    (segs, groups, leading)
}

#[test]
fn dictionary_queries_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (segs, groups, leading) = random_dictionary(&mut rng);
        let (dict, info) = FullTextDictionary::build(&segs, &groups, leading, IndexOptions::default()).unwrap();
        let naive = NaiveIndex::new(&info.text);
        let seg_of = |t: usize| &segs[info.pi[t - 1]];
        for _ in 0..30 {
            let p: Vec<Symbol> = (0..rng.gen_range(1..=12)).map(|_| rng.gen_range(2..6)).collect();

            let mut got: Vec<(usize, usize)> =
                dict.segments_contained_in(&p).unwrap().into_iter().map(|(i, t)| (i, info.pi[t - 1] + 1)).collect();
            got.sort();
            assert_eq!(got, naive_prefix_segments(&segs, &p).into_iter().collect::<Vec<_>>());

            let r = dict.index().find_range(&p);
            assert_eq!(r, naive.find_range(&p));
            let with_prefix: Vec<usize> = (1..=segs.len()).filter(|&t| seg_of(t).starts_with(&p)).collect();
            match dict.segments_with_prefix(r) {
                Some((a, b)) => assert_eq!((a..=b).collect::<Vec<_>>(), with_prefix),
                None => assert!(with_prefix.is_empty()),
            }

            if !r.is_empty() {
                let want = (1..=segs.len()).rev().find(|&t| p.starts_with(seg_of(t)));
                let iv = dict.smallest_enclosing_interval(r.lo, p.len());
                assert_eq!(iv.map(|iv| dict.bp().rank(wcix::bits::Paren::Open, iv.open).unwrap()), want);
                let chain: Vec<usize> = dict.enclosing_chain(iv).collect();
                assert_eq!(chain.len(), dict.chain_len(iv));
                for w in chain.windows(2) {
                    assert!(w[0] > w[1]);
                    assert!(seg_of(w[0]).len() > seg_of(w[1]).len() || seg_of(w[0]) == seg_of(w[1]));
                }
            }

            let mut want: Vec<usize> = (1..=info.text.len()).filter(|&q| info.text[q - 1..].starts_with(&p)).collect();
            want.sort();
            assert_eq!(dict.locate_pattern(&p).unwrap(), want);
        }
    }
}

/// Between adjacent ones of B at rows c < d, the start marks in the BWT
/// count the intervals opening at c.
#[test]
fn b_array_marks_count_openings() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let (segs, groups, leading) = random_dictionary(&mut rng);
        let (dict, _) = FullTextDictionary::build(&segs, &groups, leading, IndexOptions::default()).unwrap();
        let idx = dict.index();
        let intervals: Vec<_> = segs.iter().map(|s| idx.find_range(s)).collect();
        let b = dict.b_vec();
        let ones: Vec<usize> = (1..=b.len()).filter(|&k| b.get(k - 1)).collect();
        for w in ones.windows(2) {
            let (c, d) = (w[0], w[1]);
            let opening = intervals.iter().filter(|r| r.lo == c).count();
            assert_eq!(dict.start_rank(d - 1) - dict.start_rank(c - 1), opening);
            if leading && groups.iter().all(|&g| g == 1) {
                let phis = (c..d).filter(|&r| idx.bwt_at(r) == WILDCARD).count();
                assert_eq!(phis, opening);
            }
        }
        for (k, &pos) in ones.iter().enumerate() {
            let closed = intervals.iter().filter(|r| r.hi < pos).count();
            assert_eq!(dict.closed_before().get(k) as usize, closed);
        }
    }
}
