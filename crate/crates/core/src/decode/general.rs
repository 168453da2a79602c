use std::ops::ControlFlow;

use crate::alphabet::{Alphabet, Sidedness};
use crate::budget::work;
use crate::disjunct::{required_w_general, verify_additive_disjunct_with, VerifyOptions};
use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::subsets::binomial;
use crate::vector::{indicator_weight, OutcomeVector, SparseVector};

use super::counting::shift_by_columns;
use super::one_sided::decode_one_sided_with;
use super::{
    check_outcome_len, confirm, floors, indicator_outcome, no_row_exceeds, DecodeOptions,
    DecodeResult, Relation, Stage,
};

pub fn decode_general(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
) -> Result<DecodeResult> {
    decode_general_with(a, v, alphabet, d, &DecodeOptions::default())
}

/// Decoder for two-sided alphabets.
///
/// For each positive level `c_i`, the residual instance encodes a vector whose
/// smallest positive value is `c_i - c_{i-1}`. After rescaling by that value,
/// `s^{x, >= c_i}` is `{k : t*_k(v, -z_m2 / (c_i - c_{i-1}), d) = 0}` with the
/// minimum taken over shifts `r` that leave `k` out (see
/// [`t_star_avoiding`](super::t_star_avoiding)); this requires `A` to be
/// additive `(w, 2d)`-disjunct and `d <= n - 1`. Once the positive part
/// `p = sum_i c_i s^{x,=c_i}` is known, `p - x` is a nonnegative vector over
/// `{0, -z_1, ..., -z_m2}` observed through `A p - v` and is finished by the
/// one-sided decoder.
pub fn decode_general_with(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
    opts: &DecodeOptions,
) -> Result<DecodeResult> {
    if alphabet.sidedness() != Sidedness::General {
        return Err(Error::NotTwoSided);
    }
    check_outcome_len(a, v)?;
    let n = a.n();
    if d + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "d must be at most n - 1 (d = {d}, n = {n})"
        )));
    }
    let subsets = binomial(n, d);
    opts.budget.check(work(&[
        subsets,
        a.t() as u128,
        n as u128,
        alphabet.len() as u128,
    ]))?;
    if opts.check_hypothesis {
        let w = required_w_general(alphabet)?;
        let report = verify_additive_disjunct_with(
            a,
            &w,
            (2 * d).min(n.saturating_sub(1)),
            VerifyOptions {
                exec: opts.exec,
                budget: opts.budget,
            },
        )?;
        if !report.holds {
            return Err(Error::InvalidParameter(format!(
                "matrix is not additive ({w}, {})-disjunct",
                2 * d
            )));
        }
    }

    let bottom = alphabet.negative(alphabet.m2()).clone();
    let mut residual: Vec<Rational> = v.to_vec();
    let mut previous = vec![true; n];
    let mut stages = Vec::new();
    let mut comparisons = 0u64;

    for i in 1..=alphabet.m1() {
        let step = alphabet.positive(i) - alphabet.positive(i - 1);
        let inv = step.recip();
        let scaled: Vec<Rational> = residual.iter().map(|r| r * &inv).collect();
        let h = -(&bottom * &inv);
        let (indicator, cmp) = zero_t_star_columns(a, &scaled, &h, d, opts);
        comparisons += cmp;

        if indicator_weight(&indicator) > d {
            return Err(Error::NoConsistentVector(format!(
                "level {} flags more than d = {d} items",
                alphabet.positive(i)
            )));
        }
        if indicator.iter().zip(&previous).any(|(&now, &before)| now && !before) {
            return Err(Error::NoConsistentVector(format!(
                "level indicators are not nested at level {}",
                alphabet.positive(i)
            )));
        }
        for (r, s) in residual.iter_mut().zip(indicator_outcome(a, &indicator)) {
            if s != 0 {
                *r -= &(&step * Rational::from(s));
            }
        }
        previous.clone_from(&indicator);
        stages.push(Stage {
            relation: Relation::AtLeast,
            level: alphabet.positive(i).clone(),
            step,
            indicator,
        });
    }

    // residual = A (x - p); the flipped negative part p - x is observed as -residual.
    let flipped = Alphabet::new(
        std::iter::once(Rational::zero())
            .chain((1..=alphabet.m2()).map(|k| -alphabet.negative(k)))
            .collect(),
    )?;
    let minus = Rational::integer(-1);
    let negative_part = decode_one_sided_with(
        a,
        &OutcomeVector::new(residual.iter().map(|r| r * &minus).collect()),
        &flipped,
        d,
        &DecodeOptions {
            check_hypothesis: false,
            ..*opts
        },
    )
    .map_err(|e| match e {
        Error::NoConsistentVector(msg) => {
            Error::NoConsistentVector(format!("negative levels: {msg}"))
        }
        other => other,
    })?;
    comparisons += negative_part.comparisons;
    stages.extend(negative_part.negated().stage_log);

    let mut result = DecodeResult {
        x_hat: SparseVector::zero(n),
        stage_log: stages,
        comparisons,
    };
    result.x_hat = result.reconstruct();
    confirm(a, v, alphabet, d, &result.x_hat)?;
    Ok(result)
}

/// `{k : t*_k(y, h, d) = 0}`, scanning every `d`-subset `r` once and testing
/// each column outside `r` against the shifted outcome `y + h A r`.
fn zero_t_star_columns(
    a: &QaryMatrix,
    y: &[Rational],
    h: &Rational,
    d: usize,
    opts: &DecodeOptions,
) -> (Vec<bool>, u64) {
    let n = a.n();
    let chunks = opts.exec.subset_chunks(n, d);
    let partial = opts.exec.map(&chunks, |chunk| {
        let mut flagged = vec![false; n];
        let mut comparisons = 0u64;
        chunk.try_for_each::<()>(|r| {
            let shifted = shift_by_columns(a, y, h, r);
            let fl = floors(&shifted, a.q());
            for (k, f) in flagged.iter_mut().enumerate() {
                if r.contains(&k) {
                    continue;
                }
                if no_row_exceeds(a, &fl, k, &mut comparisons) {
                    *f = true;
                }
            }
            ControlFlow::Continue(())
        });
        (flagged, comparisons)
    });
    partial
        .into_iter()
        .fold((vec![false; n], 0u64), |(mut acc, total), (flags, cmp)| {
            for (x, f) in acc.iter_mut().zip(flags) {
                *x |= f;
            }
            (acc, total + cmp)
        })
}
