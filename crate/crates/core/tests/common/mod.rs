#![allow(dead_code)]

use rand::Rng;

pub const ALPHABETS: [&[u8]; 3] = [b"ab", b"acgt", b"abcdefghijklmnopqrstuvwxyz"];

/// Random text over `alpha` with `d` interior wildcard groups of size 1..=5.
pub fn wildcard_text(rng: &mut impl Rng, alpha: &[u8], n: usize, d: usize) -> Vec<u8> {
    let mut t: Vec<u8> = (0..n).map(|_| alpha[rng.gen_range(0..alpha.len())]).collect();
    for _ in 0..d {
        let g = rng.gen_range(1..=5);
        if n < g + 3 {
            break;
        }
        let p = rng.gen_range(1..n - g - 1);
        t[p..p + g].fill(b'?');
    }
    t
}

/// Half the time a (mutated) substring of `t` with wildcards filled in,
/// otherwise random.
pub fn pattern(rng: &mut impl Rng, alpha: &[u8], t: &[u8], max_len: usize) -> Vec<u8> {
    let m = rng.gen_range(1..=max_len.min(t.len()));
    let fill = |rng: &mut dyn rand::RngCore| alpha[rng.gen_range(0..alpha.len())];
    if rng.gen_bool(0.5) {
        let s = rng.gen_range(0..=t.len() - m);
        let mut p: Vec<u8> = t[s..s + m].iter().map(|&c| if c == b'?' { fill(rng) } else { c }).collect();
        if rng.gen_bool(0.3) {
            let i = rng.gen_range(0..m);
            p[i] = fill(rng);
        }
        p
    } else {
        (0..m).map(|_| fill(rng)).collect()
    }
}
