//! Sparse status vectors, outcome vectors and the encoder `v = A x`.

use std::ops::Deref;

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;

/// An element of `D^n` stored by its support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SparseVector {
    n: usize,
    support: Vec<(usize, Rational)>,
}

impl SparseVector {
    /// Builds a vector of length `n`. Zero values are dropped; indices must be
    /// distinct and below `n`.
    pub fn new(n: usize, mut support: Vec<(usize, Rational)>) -> Result<Self> {
        support.retain(|(_, v)| !v.is_zero());
        support.sort_by_key(|(j, _)| *j);
        for w in support.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "index {} appears twice in support",
                    w[0].0
                )));
            }
        }
        if let Some((j, _)) = support.last() {
            if *j >= n {
                return Err(Error::IndexOutOfRange { index: *j, len: n });
            }
        }
        Ok(SparseVector { n, support })
    }

    pub fn zero(n: usize) -> Self {
        SparseVector {
            n,
            support: Vec::new(),
        }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let support = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        SparseVector {
            n: values.len(),
            support,
        }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        let dense: Vec<Rational> = values.iter().map(|&v| Rational::integer(v)).collect();
        SparseVector::from_dense(&dense)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `phi(x)`, the number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[(usize, Rational)] {
        &self.support
    }

    pub fn get(&self, j: usize) -> Rational {
        self.support
            .binary_search_by_key(&j, |(i, _)| *i)
            .map(|pos| self.support[pos].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (j, v) in &self.support {
            out[*j] = v.clone();
        }
        out
    }

    /// True when every entry belongs to `alphabet`.
    pub fn is_over(&self, alphabet: &Alphabet) -> bool {
        self.support.iter().all(|(_, v)| alphabet.contains(v))
    }

    pub fn scale(&self, a: &Rational) -> SparseVector {
        if a.is_zero() {
            return SparseVector::zero(self.n);
        }
        SparseVector {
            n: self.n,
            support: self.support.iter().map(|(j, v)| (*j, v * a)).collect(),
        }
    }

    /// Splits into consecutive blocks of length `block`.
    pub fn blocks(&self, block: usize) -> Vec<SparseVector> {
        assert!(block > 0 && self.n.is_multiple_of(block));
        let mut out: Vec<SparseVector> = (0..self.n / block)
            .map(|_| SparseVector::zero(block))
            .collect();
        for (j, v) in &self.support {
            out[j / block].support.push((j % block, v.clone()));
        }
        out
    }

    /// Concatenates equally sized blocks back into one vector.
    pub fn concat(blocks: &[SparseVector]) -> SparseVector {
        let mut support = Vec::new();
        let mut offset = 0;
        for b in blocks {
            support.extend(b.support.iter().map(|(j, v)| (offset + j, v.clone())));
            offset += b.n;
        }
        SparseVector { n: offset, support }
    }
}

/// The outcome `v = A x`. Entries are exact and may exceed `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OutcomeVector(Vec<Rational>);

impl OutcomeVector {
    pub fn new(values: Vec<Rational>) -> Self {
        OutcomeVector(values)
    }

    pub fn zeros(t: usize) -> Self {
        OutcomeVector(vec![Rational::zero(); t])
    }

    pub fn from_integers(values: &[i64]) -> Self {
        OutcomeVector(values.iter().map(|&v| Rational::integer(v)).collect())
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn scale(&self, a: &Rational) -> OutcomeVector {
        OutcomeVector(self.0.iter().map(|v| v * a).collect())
    }

    pub fn add(&self, other: &[Rational]) -> OutcomeVector {
        assert_eq!(self.0.len(), other.len());
        OutcomeVector(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &[Rational]) -> OutcomeVector {
        assert_eq!(self.0.len(), other.len());
        OutcomeVector(self.0.iter().zip(other).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

impl Deref for OutcomeVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for OutcomeVector {
    fn from(v: Vec<Rational>) -> Self {
        OutcomeVector(v)
    }
}

/// `v_i = sum_j a_ij x_j`, computed exactly.
pub fn encode(a: &QaryMatrix, x: &SparseVector) -> Result<OutcomeVector> {
    if x.len() != a.n() {
        return Err(Error::DimensionMismatch {
            what: "vector length vs matrix columns",
            expected: a.n(),
            found: x.len(),
        });
    }
    let values = (0..a.t())
        .map(|i| {
            let row = a.row(i);
            x.support()
                .iter()
                .filter(|(j, _)| row[*j] != 0)
                .map(|(j, v)| v * Rational::from(row[*j]))
                .sum()
        })
        .collect();
    Ok(OutcomeVector(values))
}

/// `A y` for an arbitrary dense rational vector.
pub fn encode_dense(a: &QaryMatrix, y: &[Rational]) -> Result<OutcomeVector> {
    if y.len() != a.n() {
        return Err(Error::DimensionMismatch {
            what: "vector length vs matrix columns",
            expected: a.n(),
            found: y.len(),
        });
    }
    encode(a, &SparseVector::from_dense(y))
}

/// Integer row sums `sum_{j in cols} a_ij`.
pub(crate) fn row_sums(a: &QaryMatrix, cols: &[usize]) -> Vec<u64> {
    a.rows()
        .map(|row| cols.iter().map(|&j| row[j] as u64).sum())
        .collect()
}

/// A `{0,1}` indicator over item indices.
pub type Indicator = Vec<bool>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThresholdMode {
    Eq,
    Ge,
    Le,
}

/// `s^{y,=delta}`, `s^{y,>=delta}` or `s^{y,<=delta}`.
pub fn threshold_indicator(y: &[Rational], delta: &Rational, mode: ThresholdMode) -> Indicator {
    y.iter()
        .map(|v| match mode {
            ThresholdMode::Eq => v == delta,
            ThresholdMode::Ge => v >= delta,
            ThresholdMode::Le => v <= delta,
        })
        .collect()
}

/// `x >= y` componentwise.
pub fn dominates(x: &[Rational], y: &[Rational]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            what: "dominance operands",
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(x.iter().zip(y).all(|(a, b)| a >= b))
}

pub fn indicator_weight(s: &[bool]) -> usize {
    s.iter().filter(|&&b| b).count()
}

pub fn indicator_support(s: &[bool]) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter_map(|(j, &b)| b.then_some(j))
        .collect()
}
