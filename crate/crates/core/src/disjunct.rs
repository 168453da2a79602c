//! Exhaustive verification of additive `(w, d)`-disjunctness and the `w`
//! thresholds required by the decoders.
//!
//! A q-ary matrix `M` is additive `(w, d)`-disjunct when for every binary
//! `s` with at most `d` ones and every column `k` outside `s` some row `i`
//! satisfies `m_ik > w * sum_j m_ij s_j`.
//!
//! Only supports of size exactly `d` are enumerated. When `d <= n - 1`, any
//! smaller support `S` with `k` outside it extends to a size-`d` support
//! `S'` avoiding `k`; entries are nonnegative, so a row separating `k` from
//! `S'` separates it from `S` as well.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::alphabet::{Alphabet, Sidedness};
use crate::budget::{work, Budget};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::subsets::binomial;
use crate::vector::row_sums;

/// A violating `(S, k)` pair: no row has `m_ik > w * sum_{j in S} m_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// 0-based support columns, increasing.
    pub support: Vec<usize>,
    /// 0-based column outside the support.
    pub column: usize,
}

impl Witness {
    /// True when the pair violates the disjunctness inequality on every row.
    pub fn replay_violates(&self, a: &QaryMatrix, w: &Rational) -> bool {
        let sums = row_sums(a, &self.support);
        !self.support.contains(&self.column)
            && (0..a.t()).all(|i| Rational::from(a.get(i, self.column)) <= w * Rational::from(sums[i]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjunctReport {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// `(S, k)` pairs examined in lexicographic order up to the verdict.
    pub checks_performed: u128,
    /// Size of the supports that were enumerated (always `d`; smaller
    /// supports are dominated).
    pub support_size_checked: usize,
}

/// Options for the exhaustive verifier.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub exec: Execution,
    pub budget: Budget,
}

/// Evaluates `entry > w * sum` with integer arithmetic when `w` is small.
enum Weight {
    Small { num: i128, den: i128 },
    Big(Rational),
}

impl Weight {
    fn new(w: &Rational) -> Self {
        match (w.numer().to_i64(), w.denom().to_i64()) {
            (Some(num), Some(den)) => Weight::Small {
                num: num as i128,
                den: den as i128,
            },
            _ => Weight::Big(w.clone()),
        }
    }

    #[inline]
    fn exceeded_by(&self, entry: u32, sum: u64) -> bool {
        match self {
            Weight::Small { num, den } => {
                match num.checked_mul(sum as i128) {
                    Some(rhs) => entry as i128 * den > rhs,
                    None => {
                        BigInt::from(entry) * BigInt::from(*den) > BigInt::from(*num) * BigInt::from(sum)
                    }
                }
            }
            Weight::Big(w) => Rational::from(entry) > w * Rational::from(sum),
        }
    }
}

pub fn verify_additive_disjunct(a: &QaryMatrix, w: &Rational, d: usize) -> Result<DisjunctReport> {
    verify_additive_disjunct_with(a, w, d, VerifyOptions::default())
}

pub fn verify_additive_disjunct_with(
    a: &QaryMatrix,
    w: &Rational,
    d: usize,
    opts: VerifyOptions,
) -> Result<DisjunctReport> {
    let n = a.n();
    if d < 1 || d + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "d must satisfy 1 <= d <= n - 1 (d = {d}, n = {n})"
        )));
    }
    if !w.is_positive() {
        return Err(Error::InvalidParameter(format!("w must be positive, got {w}")));
    }
    let subsets = binomial(n, d);
    opts.budget
        .check(work(&[subsets, n as u128, a.t() as u128]))?;

    let weight = Weight::new(w);
    let chunks = opts.exec.subset_chunks(n, d);
    let found = opts.exec.find_map_first(&chunks, |chunk| {
        let mut rank = chunk.first_rank();
        let mut sums = vec![0u64; a.t()];
        let mut in_support = vec![false; n];
        let hit = chunk.try_for_each(|support| {
            for (i, s) in sums.iter_mut().enumerate() {
                let row = a.row(i);
                *s = support.iter().map(|&j| row[j] as u64).sum();
            }
            for &j in support {
                in_support[j] = true;
            }
            let bad = (0..n).find(|&k| {
                !in_support[k] && !(0..a.t()).any(|i| weight.exceeded_by(a.get(i, k), sums[i]))
            });
            for &j in support {
                in_support[j] = false;
            }
            match bad {
                Some(k) => ControlFlow::Break((rank, support.to_vec(), k)),
                None => {
                    rank += 1;
                    ControlFlow::Continue(())
                }
            }
        });
        hit
    });

    let outside = (n - d) as u128;
    Ok(match found {
        None => DisjunctReport {
            holds: true,
            witness: None,
            checks_performed: subsets * outside,
            support_size_checked: d,
        },
        Some((rank, support, column)) => {
            let before = (0..column).filter(|j| !support.contains(j)).count() as u128;
            DisjunctReport {
                holds: false,
                witness: Some(Witness { support, column }),
                checks_performed: rank * outside + before + 1,
                support_size_checked: d,
            }
        }
    })
}

/// Classic `d`-disjunctness of a binary matrix, checked as additive
/// `(1, d)`-disjunctness.
pub fn verify_binary_disjunct(a: &QaryMatrix, d: usize) -> Result<DisjunctReport> {
    verify_binary_disjunct_with(a, d, VerifyOptions::default())
}

pub fn verify_binary_disjunct_with(a: &QaryMatrix, d: usize, opts: VerifyOptions) -> Result<DisjunctReport> {
    a.ensure_binary()?;
    verify_additive_disjunct_with(a, &Rational::one(), d, opts)
}

/// `max_k (c_m - c_{k-1}) / (c_k - c_{k-1})` with `c_0 = 0`.
///
/// A nonpositive alphabet is handled through its negation.
pub fn required_w_one_sided(alphabet: &Alphabet) -> Result<Rational> {
    let levels = match alphabet.sidedness() {
        Sidedness::OneSidedPos => alphabet.clone(),
        Sidedness::OneSidedNeg => alphabet.negate(),
        Sidedness::General => return Err(Error::NotOneSided),
    };
    let c = levels.levels();
    let top = c.last().expect("nonempty");
    let w = c
        .windows(2)
        .map(|pair| (top - &pair[0]) / (&pair[1] - &pair[0]))
        .max()
        .expect("at least one nonzero level");
    Ok(w)
}

/// The threshold for two-sided alphabets:
/// `max({(c_m1 - c_i - z_m2) / (c_{i+1} - c_i)}_{0<=i<m1} U {(z_{i-1} - z_m2) / (z_{i-1} - z_i)}_{1<=i<=m2})`.
pub fn required_w_general(alphabet: &Alphabet) -> Result<Rational> {
    if alphabet.sidedness() != Sidedness::General {
        return Err(Error::NotTwoSided);
    }
    let (m1, m2) = (alphabet.m1(), alphabet.m2());
    let c_top = alphabet.positive(m1);
    let z_bottom = alphabet.negative(m2);
    let positive_terms = (0..m1).map(|i| {
        (c_top - alphabet.positive(i) - z_bottom) / (alphabet.positive(i + 1) - alphabet.positive(i))
    });
    let negative_terms = (1..=m2).map(|i| {
        (alphabet.negative(i - 1) - z_bottom) / (alphabet.negative(i - 1) - alphabet.negative(i))
    });
    Ok(positive_terms.chain(negative_terms).max().expect("m1 >= 1"))
}

/// The threshold for whichever decoder applies to `alphabet`.
pub fn required_w(alphabet: &Alphabet) -> Rational {
    match alphabet.sidedness() {
        Sidedness::General => required_w_general(alphabet),
        _ => required_w_one_sided(alphabet),
    }
    .expect("sidedness checked")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignTransform {
    Identity,
    Negate,
}

/// Picks the sign of the alphabet with the smaller required `w`. Ties keep
/// the identity.
pub fn optimize_w_by_negation(alphabet: &Alphabet) -> (SignTransform, Rational) {
    let plain = required_w(alphabet);
    let negated = required_w(&alphabet.negate());
    if negated < plain {
        (SignTransform::Negate, negated)
    } else {
        (SignTransform::Identity, plain)
    }
}
