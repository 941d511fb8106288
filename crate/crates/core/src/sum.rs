//! Deterministic pairwise summation.
//!
//! Phase-space reductions go through [`pairwise`], which splits the index
//! range in halves down to blocks of [`BLOCK`] terms and sums each block left
//! to right. The tree depends only on the range length, so the result is the
//! same whatever thread evaluates it.

pub const BLOCK: usize = 32;

/// Pairwise sum of `N` accumulators whose per-index contributions are
/// produced by `term`.
pub fn pairwise<const N: usize, F>(start: usize, end: usize, term: &F) -> [f64; N]
where
    F: Fn(usize, &mut [f64; N]),
{
    if end - start <= BLOCK {
        let mut acc = [0.0; N];
        for i in start..end {
            term(i, &mut acc);
        }
        return acc;
    }
    let mid = start + (end - start) / 2;
    let mut left = pairwise(start, mid, term);
    let right = pairwise(mid, end, term);
    for (l, r) in left.iter_mut().zip(right.iter()) {
        *l += r;
    }
    left
}

/// Pairwise sum of a slice.
pub fn sum(values: &[f64]) -> f64 {
    pairwise::<1, _>(0, values.len(), &|i, acc| acc[0] += values[i])[0]
}
