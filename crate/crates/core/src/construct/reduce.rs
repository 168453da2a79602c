use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;

/// `f_b(A)`: the number of families with at least `b` rows.
pub fn f_count(a: &QaryMatrix, b: usize) -> Result<usize> {
    let families = a.families().ok_or(Error::MissingFamilies)?;
    Ok(families.iter().filter(|f| f.len() >= b).count())
}

/// Row reduction of a transversal additive `(w, d)`-disjunct matrix.
///
/// For every family with at least `d + 2` rows, its first `d + 2` rows in
/// file order `R_1, ..., R_{d+2}` are replaced by
/// `R'_k = (w d + 1) R_k + R_{d+2}` for `k <= d + 1`, and `R_{d+2}` is
/// deleted. The result has `t - f_{d+2}(A)` rows.
///
/// `w d + 1` must be an integer. Rows of a family are disjoint and binary, so
/// new entries lie in `{0, 1, w d + 1}`; the output is declared
/// `max(q, w d + 2)`-ary. Families that were folded are dropped from the
/// output metadata; the remaining rows of every family are kept as a family.
pub fn reduce_rows(a: &QaryMatrix, w: &Rational, d: usize) -> Result<QaryMatrix> {
    let families = a.families().ok_or(Error::MissingFamilies)?;
    if d == 0 || !w.is_positive() {
        return Err(Error::InvalidParameter("need d >= 1 and w > 0".into()));
    }
    let multiplier = w * Rational::from(d) + Rational::one();
    let multiplier = multiplier
        .to_i64()
        .filter(|&m| m >= 2 && m < u32::MAX as i64)
        .ok_or_else(|| {
            Error::InvalidParameter(format!("w d + 1 = {multiplier} must be an integer"))
        })? as u32;
    let q = a.q().max(multiplier + 1);

    let mut rows: Vec<Option<Vec<u32>>> = a.rows().map(|r| Some(r.to_vec())).collect();
    let mut kept_families = Vec::new();
    for family in families {
        let mut members = family.clone();
        members.sort_unstable();
        if members.len() < d + 2 {
            kept_families.push(members);
            continue;
        }
        let last = members[d + 1];
        let folded = a.row(last).to_vec();
        for &k in &members[..=d] {
            let row = rows[k].as_mut().expect("family rows are distinct");
            for (e, &f) in row.iter_mut().zip(&folded) {
                *e = *e * multiplier + f;
            }
        }
        rows[last] = None;
        if members.len() > d + 2 {
            kept_families.push(members[d + 2..].to_vec());
        }
    }

    // Map surviving rows to their new indices.
    let mut new_index = vec![usize::MAX; a.t()];
    let mut out_rows = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        if let Some(r) = row {
            new_index[i] = out_rows.len();
            out_rows.push(r);
        }
    }
    let families = kept_families
        .into_iter()
        .map(|f| f.into_iter().map(|r| new_index[r]).collect())
        .collect();
    let t = out_rows.len();
    QaryMatrix::new(q, t, a.n(), out_rows.into_iter().flatten().collect())?.with_families(families)
}

/// Best-effort transversal families: rows are assigned greedily to the first
/// family they are disjoint from. Non-binary rows are left out.
pub fn greedy_families(a: &QaryMatrix) -> Vec<Vec<usize>> {
    let mut families: Vec<(Vec<usize>, Vec<bool>)> = Vec::new();
    for i in 0..a.t() {
        let row = a.row(i);
        if row.iter().any(|&e| e > 1) {
            continue;
        }
        let slot = families
            .iter_mut()
            .find(|(_, cover)| row.iter().zip(cover.iter()).all(|(&e, &c)| e == 0 || !c));
        match slot {
            Some((members, cover)) => {
                members.push(i);
                for (c, &e) in cover.iter_mut().zip(row) {
                    *c |= e == 1;
                }
            }
            None => families.push((vec![i], row.iter().map(|&e| e == 1).collect())),
        }
    }
    families.into_iter().map(|(m, _)| m).collect()
}
