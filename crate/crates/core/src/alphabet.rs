//! Level alphabets `D = {z_m2 < ... < z_1 < 0 < c_1 < ... < c_m1}`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    /// Every nonzero level is positive.
    OneSidedPos,
    /// Every nonzero level is negative.
    OneSidedNeg,
    /// Levels of both signs are present.
    General,
}

impl Sidedness {
    pub fn is_one_sided(self) -> bool {
        !matches!(self, Sidedness::General)
    }
}

/// A strictly increasing set of rational levels that contains zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    levels: Vec<Rational>,
    zero: usize,
}

impl Alphabet {
    pub fn new(levels: Vec<Rational>) -> Result<Self> {
        if let Some(w) = levels.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidAlphabet(format!(
                "levels must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let zero = levels
            .iter()
            .position(Rational::is_zero)
            .ok_or_else(|| Error::InvalidAlphabet("0 must be a level".into()))?;
        if levels.len() < 2 {
            return Err(Error::InvalidAlphabet(
                "at least one nonzero level is required".into(),
            ));
        }
        Ok(Alphabet { levels, zero })
    }

    /// Builds an alphabet from any set of levels, sorting and deduplicating
    /// first and inserting 0 if absent.
    pub fn from_unsorted(mut levels: Vec<Rational>) -> Result<Self> {
        levels.push(Rational::zero());
        levels.sort();
        levels.dedup();
        Alphabet::new(levels)
    }

    pub fn from_integers(levels: &[i64]) -> Result<Self> {
        Alphabet::new(levels.iter().map(|&v| Rational::integer(v)).collect())
    }

    /// All levels in increasing order, including 0.
    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `c_1 < ... < c_m1`.
    pub fn positives(&self) -> &[Rational] {
        &self.levels[self.zero + 1..]
    }

    /// Negative levels in increasing order, `z_m2 < ... < z_1`.
    pub fn negatives_ascending(&self) -> &[Rational] {
        &self.levels[..self.zero]
    }

    /// `z_i` with `z_0 = 0`, so `negative(1)` is the negative level closest to zero.
    pub fn negative(&self, i: usize) -> &Rational {
        &self.levels[self.zero - i]
    }

    /// `c_i` with `c_0 = 0`.
    pub fn positive(&self, i: usize) -> &Rational {
        &self.levels[self.zero + i]
    }

    pub fn m1(&self) -> usize {
        self.levels.len() - self.zero - 1
    }

    pub fn m2(&self) -> usize {
        self.zero
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.levels.iter().filter(|l| !l.is_zero())
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.levels.binary_search(value).is_ok()
    }

    pub fn min_level(&self) -> &Rational {
        &self.levels[0]
    }

    pub fn max_level(&self) -> &Rational {
        self.levels.last().expect("alphabet is nonempty")
    }

    pub fn sidedness(&self) -> Sidedness {
        match (self.m2(), self.m1()) {
            (0, _) => Sidedness::OneSidedPos,
            (_, 0) => Sidedness::OneSidedNeg,
            _ => Sidedness::General,
        }
    }

    /// `-D`, re-sorted.
    pub fn negate(&self) -> Alphabet {
        self.scale(&Rational::integer(-1))
    }

    /// `a * D` for `a != 0`.
    pub fn scale(&self, a: &Rational) -> Alphabet {
        assert!(!a.is_zero(), "scale factor must be nonzero");
        let mut levels: Vec<Rational> = self.levels.iter().map(|l| l * a).collect();
        if a.is_negative() {
            levels.reverse();
        }
        Alphabet::new(levels).expect("scaling preserves alphabet invariants")
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    /// Comma-separated rationals in strictly increasing order, e.g. `-2,0,1,4`.
    fn from_str(s: &str) -> Result<Self> {
        let levels = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<Rational>()
                    .map_err(|e| Error::InvalidAlphabet(format!("`{}`: {e}", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Alphabet::new(levels)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.levels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{{{self}}}")
    }
}
