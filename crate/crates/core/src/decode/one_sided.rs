use crate::alphabet::{Alphabet, Sidedness};
use crate::disjunct::{required_w_one_sided, verify_additive_disjunct_with, VerifyOptions};
use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::vector::{indicator_weight, OutcomeVector, SparseVector};

use super::{
    check_outcome_len, confirm, floors, indicator_outcome, no_row_exceeds, DecodeOptions,
    DecodeResult, Relation, Stage,
};

pub fn decode_one_sided(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
) -> Result<DecodeResult> {
    decode_one_sided_with(a, v, alphabet, d, &DecodeOptions::default())
}

/// Peeling decoder for one-sided alphabets.
///
/// Round `k` works on the residual `v^k = (v - A min(x, c_{k-1})) / (c_k - c_{k-1})`,
/// which encodes a vector over `{0, 1, (c_{k+1} - c_{k-1}) / (c_k - c_{k-1}), ...}`.
/// Its support, `s^{x, >= c_k}`, is exactly `{j : t_j(v^k) = 0}` when `A` is
/// additive `(w, d)`-disjunct with `w >= required_w_one_sided(D)`.
///
/// Nonpositive alphabets are decoded through the negated instance.
pub fn decode_one_sided_with(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
    opts: &DecodeOptions,
) -> Result<DecodeResult> {
    match alphabet.sidedness() {
        Sidedness::OneSidedPos => decode_positive(a, v, alphabet, d, opts),
        Sidedness::OneSidedNeg => {
            let minus = Rational::integer(-1);
            decode_positive(a, &v.scale(&minus), &alphabet.negate(), d, opts)
                .map(DecodeResult::negated)
        }
        Sidedness::General => Err(Error::NotOneSided),
    }
}

fn decode_positive(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
    opts: &DecodeOptions,
) -> Result<DecodeResult> {
    check_outcome_len(a, v)?;
    if opts.check_hypothesis {
        let w = required_w_one_sided(alphabet)?;
        let report = verify_additive_disjunct_with(
            a,
            &w,
            d,
            VerifyOptions {
                exec: opts.exec,
                budget: opts.budget,
            },
        )?;
        if !report.holds {
            return Err(Error::InvalidParameter(format!(
                "matrix is not additive ({w}, {d})-disjunct"
            )));
        }
    }

    let n = a.n();
    let mut residual: Vec<Rational> = v.to_vec();
    let mut previous = vec![true; n];
    let mut stages = Vec::with_capacity(alphabet.m1());
    let mut comparisons = 0u64;

    for k in 1..=alphabet.m1() {
        let step = alphabet.positive(k) - alphabet.positive(k - 1);
        let inv = step.recip();
        let scaled: Vec<Rational> = residual.iter().map(|r| r * &inv).collect();
        let fl = floors(&scaled, a.q());
        let indicator: Vec<bool> = (0..n)
            .map(|j| no_row_exceeds(a, &fl, j, &mut comparisons))
            .collect();

        if indicator_weight(&indicator) > d {
            return Err(Error::NoConsistentVector(format!(
                "level {} flags more than d = {d} items",
                alphabet.positive(k)
            )));
        }
        if indicator.iter().zip(&previous).any(|(&now, &before)| now && !before) {
            return Err(Error::NoConsistentVector(format!(
                "level indicators are not nested at level {}",
                alphabet.positive(k)
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
            level: alphabet.positive(k).clone(),
            step,
            indicator,
        });
    }

    let mut result = DecodeResult {
        x_hat: SparseVector::zero(n),
        stage_log: stages,
        comparisons,
    };
    result.x_hat = result.reconstruct();
    confirm(a, v, alphabet, d, &result.x_hat)?;
    Ok(result)
}
