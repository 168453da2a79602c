//! Affine equivalence of learning problems.
//!
//! If `v = A x` then `x' = a x + b` is observed through `v' = a v + A b`, so
//! recovering `x` from `v` and recovering `x'` from `v'` are the same problem.
//! The decoders use this to rescale levels (`a = 1/c_1`) and to flip the sign
//! of an alphabet (`a = -1`).

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::vector::{encode_dense, OutcomeVector, SparseVector};

/// `x -> a x + b` with `a != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    scale: Rational,
    shift: Option<Vec<Rational>>,
}

impl AffineMap {
    pub fn new(scale: Rational, shift: Vec<Rational>) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidParameter("affine scale must be nonzero".into()));
        }
        let shift = if shift.iter().all(Rational::is_zero) {
            None
        } else {
            Some(shift)
        };
        Ok(AffineMap { scale, shift })
    }

    pub fn scaling(scale: Rational) -> Result<Self> {
        AffineMap::new(scale, Vec::new())
    }

    pub fn identity() -> Self {
        AffineMap {
            scale: Rational::one(),
            shift: None,
        }
    }

    pub fn negation() -> Self {
        AffineMap {
            scale: Rational::integer(-1),
            shift: None,
        }
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn shift(&self) -> Option<&[Rational]> {
        self.shift.as_deref()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        match &self.shift {
            Some(b) if b.len() != n => Err(Error::DimensionMismatch {
                what: "affine shift",
                expected: n,
                found: b.len(),
            }),
            _ => Ok(()),
        }
    }

    /// `a x + b`.
    pub fn map_vector(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x.len())?;
        Ok(match &self.shift {
            None => x.iter().map(|v| v * &self.scale).collect(),
            Some(b) => x.iter().zip(b).map(|(v, s)| v * &self.scale + s).collect(),
        })
    }

    pub fn map_sparse(&self, x: &SparseVector) -> Result<SparseVector> {
        match &self.shift {
            None => Ok(x.scale(&self.scale)),
            Some(_) => Ok(SparseVector::from_dense(&self.map_vector(&x.to_dense())?)),
        }
    }

    /// `a v + A b`.
    pub fn map_outcome(&self, a: &QaryMatrix, v: &[Rational]) -> Result<OutcomeVector> {
        if v.len() != a.t() {
            return Err(Error::DimensionMismatch {
                what: "outcome length vs matrix rows",
                expected: a.t(),
                found: v.len(),
            });
        }
        let scaled = OutcomeVector::new(v.iter().map(|x| x * &self.scale).collect());
        match &self.shift {
            None => Ok(scaled),
            Some(b) => {
                self.check_len(a.n())?;
                Ok(scaled.add(&encode_dense(a, b)?))
            }
        }
    }

    /// `a D`. Only defined for maps without a shift, since a shift moves each
    /// coordinate's alphabet differently.
    pub fn map_alphabet(&self, alphabet: &Alphabet) -> Result<Alphabet> {
        if self.shift.is_some() {
            return Err(Error::InvalidParameter(
                "alphabet image is only defined for pure scalings".into(),
            ));
        }
        Ok(alphabet.scale(&self.scale))
    }

    /// `x -> (x - b) / a`.
    pub fn inverse(&self) -> AffineMap {
        let inv = self.scale.recip();
        let shift = self
            .shift
            .as_ref()
            .map(|b| b.iter().map(|s| -(s * &inv)).collect());
        AffineMap { scale: inv, shift }
    }
}
