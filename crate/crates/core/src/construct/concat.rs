use serde::Serialize;

use crate::alphabet::{Alphabet, Sidedness};
use crate::decode::{decode_quantitative, stages_from_vector, DecodeResult};
use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::vector::{encode, OutcomeVector, SparseVector};

/// `C = (A_1 A_2 ... A_{n'})` with `A_j = (1 + u + ... + u^{j-1}) A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatenationDesign {
    pub base: QaryMatrix,
    /// `u = c_m d`.
    pub u: u64,
    pub n_prime: usize,
    pub q: u32,
    pub matrix: QaryMatrix,
    /// `(u^j - 1) / (u - 1)` for `j = 1..=n'`.
    pub coeffs: Vec<u64>,
}

/// Builds the concatenation design over a binary `d`-disjunct `base`.
///
/// `n' = floor(log_u(1 + (u - 1)(q - 1)))` is the largest count of blocks
/// whose heaviest weight `(u^{n'} - 1) / (u - 1)` still fits below `q`.
pub fn build_concatenation(base: &QaryMatrix, c_m: u64, d: usize, q: u32) -> Result<ConcatenationDesign> {
    base.ensure_binary()?;
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be at least 2, got {q}")));
    }
    let u = c_m
        .checked_mul(d as u64)
        .filter(|&u| u >= 2)
        .ok_or_else(|| Error::InvalidParameter("u = c_m d must be at least 2".into()))?;
    let cap = 1 + (u as u128 - 1) * (q as u128 - 1);
    let mut n_prime = 0usize;
    let mut power: u128 = 1;
    while power * u as u128 <= cap {
        power *= u as u128;
        n_prime += 1;
    }
    let coeffs: Vec<u64> = (1..=n_prime as u32)
        .map(|j| ((u as u128).pow(j) - 1) / (u as u128 - 1))
        .map(|c| c as u64)
        .collect();
    let top = *coeffs.last().expect("n' >= 1 when q >= 2");
    if top > (q - 1) as u64 {
        return Err(Error::InvalidParameter(format!(
            "block weight {top} exceeds q - 1 = {}",
            q - 1
        )));
    }
    let matrix = assemble(base, &coeffs, q)?;
    Ok(ConcatenationDesign {
        base: base.clone(),
        u,
        n_prime,
        q,
        matrix,
        coeffs,
    })
}

fn assemble(base: &QaryMatrix, coeffs: &[u64], q: u32) -> Result<QaryMatrix> {
    let n = base.n() * coeffs.len();
    let mut entries = Vec::with_capacity(base.t() * n);
    for row in base.rows() {
        for &c in coeffs {
            entries.extend(row.iter().map(|&e| e * c as u32));
        }
    }
    QaryMatrix::new(q, base.t(), n, entries)
}

impl ConcatenationDesign {
    /// Recovers a design from its matrix and block weights, checking that
    /// every block is the stated multiple of the first.
    pub fn from_matrix(matrix: QaryMatrix, coeffs: Vec<u64>, u: u64) -> Result<Self> {
        if coeffs.is_empty() || coeffs[0] != 1 || !matrix.n().is_multiple_of(coeffs.len()) {
            return Err(Error::InvalidParameter(
                "block weights must start at 1 and divide the column count".into(),
            ));
        }
        let expected: Vec<u64> = (1..=coeffs.len() as u32)
            .map(|j| (u.pow(j) - 1) / (u - 1).max(1))
            .collect();
        if u < 2 || expected != coeffs {
            return Err(Error::InvalidParameter(format!(
                "block weights {coeffs:?} are not the base-{u} repunits"
            )));
        }
        let base_n = matrix.n() / coeffs.len();
        let base = matrix.column_block(0, base_n).with_q(2)?;
        let rebuilt = assemble(&base, &coeffs, matrix.q())?;
        if rebuilt.entries() != matrix.entries() {
            return Err(Error::InvalidParameter(
                "matrix blocks are not the declared multiples of the base".into(),
            ));
        }
        Ok(ConcatenationDesign {
            base,
            u,
            n_prime: coeffs.len(),
            q: matrix.q(),
            matrix,
            coeffs,
        })
    }
}

/// The residual check made before each floor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FloorCheck {
    /// 1-based block index.
    pub block: usize,
    pub coefficient: u64,
    /// Largest entry of `v_k - coefficient * A x_k`, the contribution of the
    /// lighter blocks; must stay below `coefficient`.
    pub max_remainder: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcatDecode {
    pub result: DecodeResult,
    pub floor_checks: Vec<FloorCheck>,
}

/// Peels blocks `n', ..., 1`: `floor(v_k / w_k) = A x_k` where `w_k` is the
/// block weight, then `v_{k-1} = v_k - w_k A x_k`.
///
/// The floor is exact because the lighter blocks contribute at most
/// `w_{k-1} c_m d = w_{k-1} u < w_k` to any entry; this is checked at every
/// stage.
pub fn decode_concatenation(
    design: &ConcatenationDesign,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
) -> Result<ConcatDecode> {
    if alphabet.sidedness() != Sidedness::OneSidedPos || !alphabet.levels().iter().all(Rational::is_integer) {
        return Err(Error::InvalidParameter(
            "concatenation decoding needs nonnegative integer levels".into(),
        ));
    }
    if alphabet.max_level() * Rational::from(d) > Rational::from(design.u) {
        return Err(Error::InvalidParameter(format!(
            "c_m d = {} exceeds the design's u = {}",
            alphabet.max_level() * Rational::from(d),
            design.u
        )));
    }
    if v.len() != design.matrix.t() {
        return Err(Error::DimensionMismatch {
            what: "outcome length vs matrix rows",
            expected: design.matrix.t(),
            found: v.len(),
        });
    }
    if !v.iter().all(Rational::is_integer) {
        return Err(Error::NoConsistentVector("outcome has non-integer entries".into()));
    }

    let base = &design.base;
    let mut residual: Vec<Rational> = v.to_vec();
    let mut blocks = vec![SparseVector::zero(base.n()); design.n_prime];
    let mut floor_checks = Vec::with_capacity(design.n_prime);
    let mut comparisons = 0u64;
    let mut weight_left = d;

    for k in (1..=design.n_prime).rev() {
        let coef = Rational::from(design.coeffs[k - 1]);
        let inv = coef.recip();
        let floored = OutcomeVector::new(
            residual
                .iter()
                .map(|r| (r * &inv).floor_rational())
                .collect(),
        );
        let part = decode_quantitative(base, &floored, alphabet, weight_left).map_err(|e| match e {
            Error::NoConsistentVector(msg) => {
                Error::NoConsistentVector(format!("block {k}: {msg}"))
            }
            other => other,
        })?;
        comparisons += part.comparisons;
        let ax = encode(base, &part.x_hat)?;
        for (r, a) in residual.iter_mut().zip(ax.iter()) {
            *r -= &(&coef * a);
        }
        let max_remainder = residual.iter().max().cloned().unwrap_or_else(Rational::zero);
        let min_remainder = residual.iter().min().cloned().unwrap_or_else(Rational::zero);
        if max_remainder >= coef || min_remainder.is_negative() {
            return Err(Error::NoConsistentVector(format!(
                "floor residual bound violated at block {k}: remainder {max_remainder} vs weight {coef}"
            )));
        }
        floor_checks.push(FloorCheck {
            block: k,
            coefficient: design.coeffs[k - 1],
            max_remainder,
        });
        weight_left -= part.x_hat.weight();
        blocks[k - 1] = part.x_hat;
    }
    if residual.iter().any(|r| !r.is_zero()) {
        return Err(Error::NoConsistentVector(
            "outcome not exhausted after the last block".into(),
        ));
    }

    let x_hat = SparseVector::concat(&blocks);
    if *encode(&design.matrix, &x_hat)? != **v {
        return Err(Error::NoConsistentVector(
            "recovered vector does not reproduce the outcome".into(),
        ));
    }
    let stage_log = stages_from_vector(&x_hat, alphabet);
    Ok(ConcatDecode {
        result: DecodeResult {
            x_hat,
            stage_log,
            comparisons,
        },
        floor_checks,
    })
}
