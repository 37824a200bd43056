//! Suffix array construction by prefix doubling with radix passes.

use super::alphabet::Symbol;

/// 0-based suffix array of `text`. The text must end with a unique smallest
/// symbol (the sentinel) for the result to be a total order.
pub fn suffix_array(text: &[Symbol]) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let sigma = text.iter().copied().max().unwrap() as usize + 1;
    let mut sa = vec![0usize; n];
    let mut rank: Vec<usize> = text.iter().map(|&c| c as usize).collect();
    let mut next = vec![0usize; n];

    let mut counts = vec![0usize; sigma.max(n) + 1];
    counting_sort(&(0..n).collect::<Vec<_>>(), &rank, &mut sa, &mut counts[..sigma + 1]);
    let mut classes = relabel(&sa, &rank, 0, &mut next);
    std::mem::swap(&mut rank, &mut next);

    let mut k = 1;
    let mut order = Vec::with_capacity(n);
    while classes < n && k < n {
        // Order by the second key: suffixes lacking one come first.
        order.clear();
        order.extend(n - k..n);
        order.extend(sa.iter().filter(|&&i| i >= k).map(|&i| i - k));
        counting_sort(&order, &rank, &mut sa, &mut counts[..classes + 1]);
        classes = relabel(&sa, &rank, k, &mut next);
        std::mem::swap(&mut rank, &mut next);
        k *= 2;
    }
    sa
}

/// Stable sort of `items` by `key[item]` into `out`.
fn counting_sort(items: &[usize], key: &[usize], out: &mut [usize], counts: &mut [usize]) {
    counts.fill(0);
    for &i in items {
        counts[key[i] + 1] += 1;
    }
    for c in 1..counts.len() {
        counts[c] += counts[c - 1];
    }
    for &i in items {
        out[counts[key[i]]] = i;
        counts[key[i]] += 1;
    }
}

/// Assigns dense class ids to `sa` ordered by `(rank[i], rank[i + k])`;
/// returns the number of classes.
fn relabel(sa: &[usize], rank: &[usize], k: usize, out: &mut [usize]) -> usize {
    let n = sa.len();
    let key = |i: usize| (rank[i], if k > 0 && i + k < n { rank[i + k] as isize } else { -1 });
    let mut class = 0;
    out[sa[0]] = 0;
    for w in sa.windows(2) {
        if key(w[0]) != key(w[1]) {
            class += 1;
        }
        out[w[1]] = class;
    }
    class + 1
}

/// Kasai's algorithm. `lcp[r]` is the longest common prefix of the suffixes
/// at rows `r - 1` and `r` (0-based rows); `lcp[0] = 0`.
pub fn lcp_array(text: &[Symbol], sa: &[usize]) -> Vec<u32> {
    let n = text.len();
    let mut inv = vec![0usize; n];
    for (r, &p) in sa.iter().enumerate() {
        inv[p] = r;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = inv[p];
        if r > 0 {
            let q = sa[r - 1];
            while p + h < n && q + h < n && text[p + h] == text[q + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}
