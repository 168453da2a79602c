//! Brute-force ground truth: every `x` in `D^n` with `phi(x) <= d`.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::budget::{work, Budget};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::subsets::binomial;
use crate::vector::{OutcomeVector, SparseVector};

use super::check_outcome_len;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OracleVerdict {
    Unique { x: SparseVector },
    /// The first two solutions in enumeration order.
    Ambiguous { first: SparseVector, second: SparseVector },
    None,
}

pub fn oracle_decode(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
) -> Result<OracleVerdict> {
    oracle_decode_with(a, v, alphabet, d, Execution::default(), Budget::default())
}

/// Enumerates supports by increasing size, then lexicographically, then level
/// assignments in odometer order, and keeps the first two vectors whose
/// encoding equals `v`.
pub fn oracle_decode_with(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
    exec: Execution,
    budget: Budget,
) -> Result<OracleVerdict> {
    check_outcome_len(a, v)?;
    let n = a.n();
    let d = d.min(n);
    let nonzero: Vec<Rational> = alphabet.nonzero().cloned().collect();
    let m = nonzero.len() as u128;
    let candidates = (0..=d).fold(0u128, |acc, k| {
        acc.saturating_add(work(&[binomial(n, k), m.saturating_pow(k as u32)]))
    });
    budget.check(work(&[candidates, a.t() as u128]))?;

    // Scale everything by the common denominator of the levels.
    let lcm = nonzero
        .iter()
        .fold(BigInt::one(), |acc, l| acc.lcm(l.denom()));
    let scale = Rational::from(lcm);
    let to_i128 = |r: &Rational| -> Result<i128> {
        r.numer()
            .to_i128()
            .ok_or_else(|| Error::InvalidParameter("value too large for the oracle".into()))
    };
    let levels: Vec<i128> = nonzero
        .iter()
        .map(|l| to_i128(&(l * &scale)))
        .collect::<Result<_>>()?;
    let mut target = Vec::with_capacity(a.t());
    for vi in v.iter() {
        let s = vi * &scale;
        if !s.is_integer() {
            return Ok(OracleVerdict::None);
        }
        target.push(to_i128(&s)?);
    }

    let matches = |support: &[usize], choice: &[usize]| -> bool {
        (0..a.t()).all(|i| {
            let row = a.row(i);
            let sum: i128 = support
                .iter()
                .zip(choice)
                .map(|(&j, &c)| row[j] as i128 * levels[c])
                .sum();
            sum == target[i]
        })
    };

    let mut found: Vec<SparseVector> = Vec::new();
    for k in 0..=d {
        let chunks = exec.subset_chunks(n, k);
        let per_chunk = exec.map(&chunks, |chunk| {
            let mut hits = Vec::new();
            let mut choice = vec![0usize; k];
            chunk.try_for_each(|support| {
                choice.iter_mut().for_each(|c| *c = 0);
                loop {
                    if matches(support, &choice) {
                        hits.push(
                            SparseVector::new(
                                n,
                                support
                                    .iter()
                                    .zip(&choice)
                                    .map(|(&j, &c)| (j, nonzero[c].clone()))
                                    .collect(),
                            )
                            .expect("support indices are distinct"),
                        );
                        if hits.len() == 2 {
                            return ControlFlow::Break(());
                        }
                    }
                    if !advance(&mut choice, nonzero.len()) {
                        return ControlFlow::Continue(());
                    }
                }
            });
            hits
        });
        found.extend(per_chunk.into_iter().flatten().take(2));
        if found.len() >= 2 {
            break;
        }
    }
    found.truncate(2);
    let mut it = found.into_iter();
    Ok(match (it.next(), it.next()) {
        (None, _) => OracleVerdict::None,
        (Some(x), None) => OracleVerdict::Unique { x },
        (Some(first), Some(second)) => OracleVerdict::Ambiguous { first, second },
    })
}

fn advance(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::encode;

    #[test]
    fn zero_row_is_ambiguous() {
        let a = QaryMatrix::from_rows(2, vec![vec![0, 0]]).unwrap();
        let d: Alphabet = "0,1".parse().unwrap();
        // 0 itself is the first solution, e_1 the second.
        let v = OutcomeVector::zeros(1);
        match oracle_decode(&a, &v, &d, 1).unwrap() {
            OracleVerdict::Ambiguous { first, second } => {
                assert_eq!(first, SparseVector::zero(2));
                assert_eq!(second, SparseVector::from_integers(&[1, 0]));
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn negative_outcome_with_nonnegative_levels_has_no_solution() {
        let a = QaryMatrix::identity(3);
        let d: Alphabet = "0,1,2".parse().unwrap();
        let v = OutcomeVector::from_integers(&[-1, -1, -1]);
        assert_eq!(oracle_decode(&a, &v, &d, 2).unwrap(), OracleVerdict::None);
    }

    #[test]
    fn unique_on_identity_with_fractions() {
        let a = QaryMatrix::identity(4);
        let d: Alphabet = "-1/3,0,1/2".parse().unwrap();
        let x = SparseVector::new(
            4,
            vec![(1, Rational::new(-1, 3)), (3, Rational::new(1, 2))],
        )
        .unwrap();
        let v = encode(&a, &x).unwrap();
        assert_eq!(oracle_decode(&a, &v, &d, 2).unwrap(), OracleVerdict::Unique { x });
        let off = OutcomeVector::new(vec![Rational::new(1, 5); 4]);
        assert_eq!(oracle_decode(&a, &off, &d, 2).unwrap(), OracleVerdict::None);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = QaryMatrix::from_rows(3, vec![vec![1, 1, 0, 2, 1, 0, 1, 2, 0, 1]]).unwrap();
        let d: Alphabet = "0,1,2".parse().unwrap();
        let v = OutcomeVector::from_integers(&[2]);
        let seq = oracle_decode_with(&a, &v, &d, 2, Execution::Sequential, Budget::default()).unwrap();
        let par = oracle_decode_with(&a, &v, &d, 2, Execution::Parallel, Budget::default()).unwrap();
        assert_eq!(seq, par);
    }
}
