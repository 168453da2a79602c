//! Fixtures and brute-force reference implementations shared by the
//! integration tests. None of these call the library's algorithms; they only
//! use its data types.
#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use mgtest_core::io::{parse_matrix, MatrixFile};
use mgtest_core::{Alphabet, QaryMatrix, Rational, SparseVector};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> MatrixFile {
    parse_matrix(fixture_path(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn a12() -> QaryMatrix {
    fixture("transversal_12x16.mgt").matrix
}

pub fn a9() -> QaryMatrix {
    fixture("additive_9x16.mgt").matrix
}

pub fn alphabet(s: &str) -> Alphabet {
    s.parse().unwrap()
}

pub fn rows_of(a: &QaryMatrix) -> Vec<Vec<i64>> {
    a.rows().map(|r| r.iter().map(|&e| e as i64).collect()).collect()
}

/// Dense `A x` by the textbook double loop.
pub fn naive_encode(a: &QaryMatrix, x: &[Rational]) -> Vec<Rational> {
    rows_of(a)
        .iter()
        .map(|row| {
            let mut acc = Rational::zero();
            for (j, &e) in row.iter().enumerate() {
                acc += Rational::integer(e) * x[j].clone();
            }
            acc
        })
        .collect()
}

/// All subsets of `0..n` with exactly `k` elements, by recursion.
pub fn subsets_rec(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            go(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The definition checked literally: every support of size `0..=d` and every
/// column outside it. `w = num / den`; integers only.
pub fn naive_additive_disjunct(a: &QaryMatrix, num: i64, den: i64, d: usize) -> bool {
    let rows = rows_of(a);
    let n = a.n();
    for size in 0..=d.min(n) {
        for s in subsets_rec(n, size) {
            for k in (0..n).filter(|k| !s.contains(k)) {
                let ok = rows.iter().any(|row| {
                    let sum: i64 = s.iter().map(|&j| row[j]).sum();
                    row[k] * den > num * sum
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Classic d-disjunctness: for every `S` with `|S| <= d` and `k` outside it,
/// some row has a one at `k` and zeros on `S`.
pub fn set_cover_disjunct(a: &QaryMatrix, d: usize) -> bool {
    let rows = rows_of(a);
    let n = a.n();
    (0..=d.min(n)).all(|size| {
        subsets_rec(n, size).iter().all(|s| {
            (0..n)
                .filter(|k| !s.contains(k))
                .all(|k| rows.iter().any(|r| r[k] == 1 && s.iter().all(|&j| r[j] == 0)))
        })
    })
}

/// Every `x` in `D^n` with at most `d` nonzero entries, supports in
/// lexicographic order by size.
pub fn all_sparse(n: usize, alphabet: &Alphabet, d: usize) -> Vec<SparseVector> {
    let nonzero: Vec<Rational> = alphabet.levels().iter().filter(|l| !l.is_zero()).cloned().collect();
    let mut out = Vec::new();
    for size in 0..=d.min(n) {
        for s in subsets_rec(n, size) {
            let mut idx = vec![0usize; size];
            loop {
                let mut dense = vec![Rational::zero(); n];
                for (p, &j) in s.iter().enumerate() {
                    dense[j] = nonzero[idx[p]].clone();
                }
                out.push(SparseVector::from_dense(&dense));
                let mut p = 0;
                while p < size && idx[p] + 1 == nonzero.len() {
                    idx[p] = 0;
                    p += 1;
                }
                if p == size {
                    break;
                }
                idx[p] += 1;
            }
        }
    }
    out
}

/// `|{i : a_ij > y_i}|` with rational comparison.
pub fn naive_t(a: &QaryMatrix, y: &[Rational], j: usize) -> usize {
    rows_of(a)
        .iter()
        .zip(y)
        .filter(|(row, yi)| Rational::integer(row[j]) > **yi)
        .count()
}

/// The one-sided decoder exactly as printed: `v^1 = v / c_1`, then
/// `v^k = (v^{k-1} - A s^{x^{k-1}, >= 1}) / ((c_k - c_{k-2}) / (c_{k-1} - c_{k-2}) - 1)`
/// for `k = 2..=m`, with `s^{x^k, >= 1} = {j : t_j(v^k) = 0}`.
///
/// Returns the rounds' indicators and the rescaled hidden vectors `x^k`
/// obtained by applying the same recursion to `x`.
pub fn printed_recursion(
    a: &QaryMatrix,
    x: &[Rational],
    alphabet: &Alphabet,
) -> (Vec<Vec<bool>>, Vec<Vec<Rational>>) {
    let c: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(alphabet.levels().iter().filter(|l| l.is_positive()).cloned())
        .collect();
    let m = c.len() - 1;
    let n = a.n();
    let inv1 = c[1].recip();
    let mut xk: Vec<Rational> = x.iter().map(|v| v.clone() * inv1.clone()).collect();
    let mut vk: Vec<Rational> = naive_encode(a, x).into_iter().map(|v| v * inv1.clone()).collect();
    let mut indicators = Vec::new();
    let mut xs = vec![xk.clone()];
    for k in 1..=m {
        let s: Vec<bool> = (0..n).map(|j| naive_t(a, &vk, j) == 0).collect();
        indicators.push(s.clone());
        if k == m {
            break;
        }
        let ratio = (c[k + 1].clone() - c[k - 1].clone()) / (c[k].clone() - c[k - 1].clone()) - Rational::one();
        let inv = ratio.recip();
        let sd: Vec<Rational> = s.iter().map(|&b| Rational::integer(b as i64)).collect();
        let as_ = naive_encode(a, &sd);
        vk = vk.iter().zip(&as_).map(|(v, w)| (v.clone() - w.clone()) * inv.clone()).collect();
        xk = xk.iter().zip(&sd).map(|(v, w)| (v.clone() - w.clone()) * inv.clone()).collect();
        xs.push(xk.clone());
    }
    (indicators, xs)
}
