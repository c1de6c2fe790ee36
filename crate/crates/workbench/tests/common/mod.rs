//! Brute-force oracle: numerical semigroups as closed gap sets.

/// Gap sets `G ⊆ [1, width]` whose complement in `N` is closed under
/// addition, i.e. every numerical semigroup with Frobenius number `<= width`.
pub fn gap_sets(width: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << width) {
        let gap = |k: usize| k >= 1 && k <= width && mask >> (k - 1) & 1 == 1;
        let closed = (1..=width).all(|a| gap(a) || (a..=width - a).all(|b| gap(b) || !gap(a + b)));
        if closed {
            out.push((1..=width).filter(|&k| gap(k)).collect());
        }
    }
    out
}

/// Semigroups per genus `0..=g_max`; every gap of a genus-`g` semigroup is below `2g`.
pub fn genus_counts(g_max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; g_max + 1];
    for g in gap_sets((2 * g_max).saturating_sub(1)) {
        if g.len() <= g_max {
            counts[g.len()] += 1;
        }
    }
    counts
}
