use crate::alphabet::{Alphabet, Sidedness};
use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::vector::{OutcomeVector, SparseVector};

use super::{check_outcome_len, confirm, stages_from_vector, DecodeResult};

/// Recovers a nonnegative `d`-sparse `x` from `v = A x` for a binary
/// `d`-disjunct `A`.
///
/// An item outside the support has a row covering it and no support item, so
/// that row's outcome is zero; a support item sees only positive outcomes.
/// Each support item also has a row isolating it from the rest of the
/// support, so its value is the minimum outcome over the rows covering it.
pub fn decode_quantitative(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
) -> Result<DecodeResult> {
    a.ensure_binary()?;
    check_outcome_len(a, v)?;
    if alphabet.sidedness() != Sidedness::OneSidedPos {
        return Err(Error::InvalidParameter(
            "quantitative decoding needs a nonnegative alphabet".into(),
        ));
    }
    let mut comparisons = 0u64;
    let mut support = Vec::new();
    for j in 0..a.n() {
        let mut value: Option<&Rational> = None;
        let mut covered_by_zero = false;
        for i in 0..a.t() {
            if a.get(i, j) == 0 {
                continue;
            }
            comparisons += 1;
            if v[i].is_zero() {
                covered_by_zero = true;
                break;
            }
            value = Some(match value {
                Some(cur) if cur <= &v[i] => cur,
                _ => &v[i],
            });
        }
        if covered_by_zero {
            continue;
        }
        match value {
            Some(val) => support.push((j, val.clone())),
            None => {
                return Err(Error::NoConsistentVector(format!(
                    "column {} is covered by no measurement",
                    j + 1
                )))
            }
        }
    }
    if support.len() > d {
        return Err(Error::NoConsistentVector(format!(
            "{} items have only positive outcomes, more than d = {d}",
            support.len()
        )));
    }
    let x_hat = SparseVector::new(a.n(), support)?;
    confirm(a, v, alphabet, d, &x_hat)?;

    let stage_log = stages_from_vector(&x_hat, alphabet);
    Ok(DecodeResult {
        x_hat,
        stage_log,
        comparisons,
    })
}
