//! Lexicographic enumeration of `k`-subsets of `0..n`.
//!
//! Exhaustive checks in this crate are expressed over subsets. To split the
//! work across threads without losing the lexicographic order, the sequence
//! is cut into contiguous rank ranges ([`SubsetChunk`]); each chunk unranks
//! its first subset and then steps with [`next_combination`].

use std::ops::ControlFlow;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Advances `comb` to the next `k`-subset of `0..n` in lexicographic order.
/// Returns `false` (leaving `comb` unspecified) when `comb` was the last one.
pub fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The subset of lexicographic rank `rank` among `k`-subsets of `0..n`.
pub fn unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    debug_assert!(rank < binomial(n, k));
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let with_next = binomial(n - next - 1, remaining);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// A contiguous run of subsets in lexicographic order.
#[derive(Debug, Clone)]
pub struct SubsetChunk {
    n: usize,
    k: usize,
    first_rank: u128,
    len: u128,
}

impl SubsetChunk {
    pub fn first_rank(&self) -> u128 {
        self.first_rank
    }

    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Visits every subset of the chunk in order, stopping at the first `Break`.
    pub fn try_for_each<B>(&self, mut f: impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        if self.len == 0 {
            return None;
        }
        let mut comb = unrank(self.n, self.k, self.first_rank);
        let mut left = self.len;
        loop {
            if let ControlFlow::Break(b) = f(&comb) {
                return Some(b);
            }
            left -= 1;
            if left == 0 || !next_combination(&mut comb, self.n) {
                return None;
            }
        }
    }

    pub fn for_each(&self, mut f: impl FnMut(&[usize])) {
        self.try_for_each::<()>(|c| {
            f(c);
            ControlFlow::Continue(())
        });
    }
}

/// Cuts the `C(n, k)` subsets into at most `parts` contiguous chunks.
pub fn chunks(n: usize, k: usize, parts: usize) -> Vec<SubsetChunk> {
    let total = binomial(n, k);
    if total == 0 {
        return Vec::new();
    }
    let parts = (parts.max(1) as u128).min(total);
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for p in 0..parts {
        let len = base + u128::from(p < extra);
        out.push(SubsetChunk {
            n,
            k,
            first_rank: start,
            len,
        });
        start += len;
    }
    out
}

/// Every `k`-subset of `0..n` in lexicographic order.
pub fn all(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state = if k <= n { Some((0..k).collect::<Vec<_>>()) } else { None };
    std::iter::from_fn(move || {
        let cur = state.take()?;
        let mut next = cur.clone();
        if next_combination(&mut next, n) {
            state = Some(next);
        }
        Some(cur)
    })
}
