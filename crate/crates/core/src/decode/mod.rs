//! Exact decoders for `v = A x` with `x` a `d`-sparse vector over an alphabet.
//!
//! * [`decode_one_sided`] peels one level of a one-sided alphabet per round
//!   using the counting function `t_j(y) = |{i : a_ij > y_i}|`.
//! * [`decode_general`] handles two-sided alphabets: positive levels through
//!   the shifted minimum `t*_j`, negative levels by reduction to the
//!   one-sided decoder.
//! * [`decode_quantitative`] recovers nonnegative vectors through a binary
//!   `d`-disjunct matrix.
//! * [`oracle_decode`] is the brute-force ground truth.
//!
//! Every decoder re-encodes its answer and reports
//! [`Error::NoConsistentVector`](crate::Error::NoConsistentVector) instead of
//! returning a vector that does not reproduce the outcome.

mod counting;
mod general;
mod one_sided;
mod oracle;
mod quantitative;

pub use counting::{t_count, t_star, t_star_avoiding, v_shift};
pub use general::{decode_general, decode_general_with};
pub use one_sided::{decode_one_sided, decode_one_sided_with};
pub use oracle::{oracle_decode, oracle_decode_with, OracleVerdict};
pub use quantitative::decode_quantitative;

pub(crate) use counting::{floors, no_row_exceeds};

use serde::Serialize;

use crate::alphabet::{Alphabet, Sidedness};
use crate::budget::Budget;
use crate::disjunct::{optimize_w_by_negation, SignTransform};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::vector::{encode, Indicator, OutcomeVector, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `s^{x, >= level}`
    AtLeast,
    /// `s^{x, <= level}`
    AtMost,
}

/// One recovered level indicator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub relation: Relation,
    pub level: Rational,
    /// Contribution of each flagged item to `x_hat`.
    pub step: Rational,
    pub indicator: Indicator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub x_hat: SparseVector,
    /// `x_hat = sum over stages of step * indicator`.
    pub stage_log: Vec<Stage>,
    /// Entry-versus-outcome comparisons performed.
    pub comparisons: u64,
}

impl DecodeResult {
    /// Rebuilds the vector from the stage log.
    pub fn reconstruct(&self) -> SparseVector {
        let mut dense = vec![Rational::zero(); self.x_hat.len()];
        for stage in &self.stage_log {
            for (j, &on) in stage.indicator.iter().enumerate() {
                if on {
                    dense[j] += &stage.step;
                }
            }
        }
        SparseVector::from_dense(&dense)
    }

    /// The result for the negated instance.
    pub(crate) fn negated(self) -> DecodeResult {
        let minus = Rational::integer(-1);
        DecodeResult {
            x_hat: self.x_hat.scale(&minus),
            stage_log: self
                .stage_log
                .into_iter()
                .map(|s| Stage {
                    relation: match s.relation {
                        Relation::AtLeast => Relation::AtMost,
                        Relation::AtMost => Relation::AtLeast,
                    },
                    level: -s.level,
                    step: -s.step,
                    indicator: s.indicator,
                })
                .collect(),
            comparisons: self.comparisons,
        }
    }
}

/// Which decoder [`decode`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeMode {
    OneSided,
    General,
    /// By alphabet sidedness, negating two-sided alphabets when that lowers
    /// the required `w`.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecodeOptions {
    pub exec: Execution,
    pub budget: Budget,
    /// Verify the disjunctness hypothesis before decoding.
    pub check_hypothesis: bool,
}

/// Dispatches to the decoder selected by `mode`.
pub fn decode(
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
    mode: DecodeMode,
    opts: &DecodeOptions,
) -> Result<DecodeResult> {
    match mode {
        DecodeMode::OneSided => decode_one_sided_with(a, v, alphabet, d, opts),
        DecodeMode::General => decode_general_with(a, v, alphabet, d, opts),
        DecodeMode::Auto => match alphabet.sidedness() {
            Sidedness::OneSidedPos | Sidedness::OneSidedNeg => {
                decode_one_sided_with(a, v, alphabet, d, opts)
            }
            Sidedness::General => match optimize_w_by_negation(alphabet).0 {
                SignTransform::Identity => decode_general_with(a, v, alphabet, d, opts),
                SignTransform::Negate => {
                    let minus = Rational::integer(-1);
                    decode_general_with(a, &v.scale(&minus), &alphabet.negate(), d, opts)
                        .map(DecodeResult::negated)
                }
            },
        },
    }
}

pub(crate) fn check_outcome_len(a: &QaryMatrix, v: &[Rational]) -> Result<()> {
    if v.len() != a.t() {
        return Err(Error::DimensionMismatch {
            what: "outcome length vs matrix rows",
            expected: a.t(),
            found: v.len(),
        });
    }
    Ok(())
}

/// Final acceptance test shared by all decoders.
pub(crate) fn confirm(
    a: &QaryMatrix,
    v: &[Rational],
    alphabet: &Alphabet,
    d: usize,
    x_hat: &SparseVector,
) -> Result<()> {
    if x_hat.weight() > d {
        return Err(Error::NoConsistentVector(format!(
            "recovered vector has {} nonzero entries, more than d = {d}",
            x_hat.weight()
        )));
    }
    if !x_hat.is_over(alphabet) {
        return Err(Error::NoConsistentVector(
            "recovered vector leaves the alphabet".into(),
        ));
    }
    if *encode(a, x_hat)? != *v {
        return Err(Error::NoConsistentVector(
            "recovered vector does not reproduce the outcome".into(),
        ));
    }
    Ok(())
}

/// `sum_j a_ij s_j` for an indicator `s`.
pub(crate) fn indicator_outcome(a: &QaryMatrix, s: &[bool]) -> Vec<u64> {
    a.rows()
        .map(|row| {
            row.iter()
                .zip(s)
                .filter(|(_, &on)| on)
                .map(|(&e, _)| e as u64)
                .sum()
        })
        .collect()
}

/// Level indicators `s^{x, >= c_k}` of a nonnegative vector.
pub(crate) fn stages_from_vector(x: &SparseVector, alphabet: &Alphabet) -> Vec<Stage> {
    (1..=alphabet.m1())
        .map(|k| Stage {
            relation: Relation::AtLeast,
            level: alphabet.positive(k).clone(),
            step: alphabet.positive(k) - alphabet.positive(k - 1),
            indicator: (0..x.len()).map(|j| &x.get(j) >= alphabet.positive(k)).collect(),
        })
        .collect()
}
