mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wcix::oracle::naive_match;
use wcix::wildcard::BuildOptions;
use wcix::{TypeThreeWorkspace, WildcardIndex};

#[test]
fn random_small_texts_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut ws = TypeThreeWorkspace::new();
    for case in 0..400 {
        let alpha = common::ALPHABETS[case % 3];
        let n = rng.gen_range(4..80);
        let d = rng.gen_range(0..12);
        let t = common::wildcard_text(&mut rng, alpha, n, d);
        let ix = WildcardIndex::build(&t, b'?', BuildOptions { sample_rate: 3, barrier: None }).unwrap();
        for _ in 0..20 {
            let p = common::pattern(&mut rng, alpha, &t, 20);
            let got = ix.query_with(&p, &mut ws).unwrap();
            let pos: Vec<usize> = got.matches.iter().map(|r| r.position).collect();
            assert_eq!(
                pos,
                naive_match(&t, &p, b'?'),
                "text {} pattern {}",
                String::from_utf8_lossy(&t),
                String::from_utf8_lossy(&p)
            );
            for r in &got.matches {
                let c = ix.overlap_group_count(r.position, p.len()).unwrap();
                assert_eq!(r.mtype as usize, c.min(2) + 1);
            }
        }
    }
}
