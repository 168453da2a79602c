use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::subsets;
use crate::vector::OutcomeVector;

use super::check_outcome_len;

/// `floor(y_i)` clamped to `[-1, q]`. For an integer entry `a` in `0..q`,
/// `a > y_i` iff `a > floor(y_i)`, and the clamp preserves that.
pub(crate) fn floors(y: &[Rational], q: u32) -> Vec<i64> {
    y.iter().map(|v| v.floor_clamped(-1, q as i64)).collect()
}

/// True when `t_j(y) = 0`, scanning rows until the first exceeding entry.
#[inline]
pub(crate) fn no_row_exceeds(a: &QaryMatrix, floors: &[i64], j: usize, comparisons: &mut u64) -> bool {
    for (i, &f) in floors.iter().enumerate() {
        *comparisons += 1;
        if a.get(i, j) as i64 > f {
            return false;
        }
    }
    true
}

fn count_exceeding(a: &QaryMatrix, floors: &[i64], j: usize) -> usize {
    floors
        .iter()
        .enumerate()
        .filter(|(i, &f)| a.get(*i, j) as i64 > f)
        .count()
}

fn check_column(a: &QaryMatrix, j: usize) -> Result<()> {
    if j >= a.n() {
        return Err(Error::IndexOutOfRange { index: j, len: a.n() });
    }
    Ok(())
}

/// `t_j(y) = |{i : a_ij > y_i}|` for a 0-based column `j`.
pub fn t_count(a: &QaryMatrix, y: &[Rational], j: usize) -> Result<usize> {
    check_outcome_len(a, y)?;
    check_column(a, j)?;
    Ok(count_exceeding(a, &floors(y, a.q()), j))
}

/// `v + h A r` for a binary `r`.
pub fn v_shift(a: &QaryMatrix, v: &[Rational], h: &Rational, r: &[bool]) -> Result<OutcomeVector> {
    check_outcome_len(a, v)?;
    if r.len() != a.n() {
        return Err(Error::DimensionMismatch {
            what: "shift indicator length vs matrix columns",
            expected: a.n(),
            found: r.len(),
        });
    }
    let cols: Vec<usize> = (0..r.len()).filter(|&j| r[j]).collect();
    Ok(shift_by_columns(a, v, h, &cols))
}

pub(crate) fn shift_by_columns(a: &QaryMatrix, v: &[Rational], h: &Rational, cols: &[usize]) -> OutcomeVector {
    OutcomeVector::new(
        v.iter()
            .enumerate()
            .map(|(i, vi)| {
                let row = a.row(i);
                let sum: u64 = cols.iter().map(|&j| row[j] as u64).sum();
                if sum == 0 {
                    vi.clone()
                } else {
                    vi + h * Rational::from(sum)
                }
            })
            .collect(),
    )
}

/// `t*_j(v, h, d) = min over binary r with exactly d ones of t_j(v + h A r)`.
pub fn t_star(a: &QaryMatrix, v: &[Rational], h: &Rational, d: usize, j: usize) -> Result<usize> {
    check_outcome_len(a, v)?;
    check_column(a, j)?;
    if d > a.n() {
        return Err(Error::InvalidParameter(format!(
            "t* needs d <= n (d = {d}, n = {})",
            a.n()
        )));
    }
    let best = subsets::all(a.n(), d)
        .map(|r| count_exceeding(a, &floors(&shift_by_columns(a, v, h, &r), a.q()), j))
        .min()
        .expect("C(n, d) >= 1 when d <= n");
    Ok(best)
}

/// `t*_j` restricted to shifts that leave column `j` out: the minimum of
/// `t_j(v + h A r)` over binary `r` with exactly `d` ones and `r_j = 0`.
///
/// This is the form the decoder relies on. Allowing `r_j = 1` adds
/// `h a_ij` to every row, so once `h >= 1` every column can reach zero.
pub fn t_star_avoiding(a: &QaryMatrix, v: &[Rational], h: &Rational, d: usize, j: usize) -> Result<usize> {
    check_outcome_len(a, v)?;
    check_column(a, j)?;
    if d + 1 > a.n() {
        return Err(Error::InvalidParameter(format!(
            "t* avoiding a column needs d <= n - 1 (d = {d}, n = {})",
            a.n()
        )));
    }
    let best = subsets::all(a.n(), d)
        .filter(|r| !r.contains(&j))
        .map(|r| count_exceeding(a, &floors(&shift_by_columns(a, v, h, &r), a.q()), j))
        .min()
        .expect("some d-subset avoids j when d <= n - 1");
    Ok(best)
}
