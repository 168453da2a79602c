use crate::alphabet::{Alphabet, Sidedness};
use crate::decode::{decode_one_sided, DecodeResult};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::vector::{encode, OutcomeVector, SparseVector};

/// `B ⊗ A`, block-major: entry `(bi * t_A + ai, bj * n_A + aj)` is
/// `B[bi][bj] * A[ai][aj]`.
///
/// The product is declared `(max entry + 1)`-ary, so a binary `B` keeps the
/// q of `A` whenever `A` uses its largest level.
pub fn kronecker(b: &QaryMatrix, a: &QaryMatrix) -> Result<QaryMatrix> {
    let (t, n) = (b.t() * a.t(), b.n() * a.n());
    let mut entries = Vec::with_capacity(t * n);
    for bi in 0..b.t() {
        for ai in 0..a.t() {
            for bj in 0..b.n() {
                let outer = b.get(bi, bj) as u64;
                for &inner in a.row(ai) {
                    let e = outer * inner as u64;
                    let e = u32::try_from(e).map_err(|_| {
                        Error::InvalidParameter(format!("Kronecker entry {e} overflows"))
                    })?;
                    entries.push(e);
                }
            }
        }
    }
    let q = entries.iter().copied().max().unwrap_or(0).saturating_add(1).max(2);
    QaryMatrix::new(q, t, n, entries)
}

/// Decodes `v = (B ⊗ A) x` with the one-sided decoder for the inner blocks.
pub fn decode_kronecker(
    b: &QaryMatrix,
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
) -> Result<DecodeResult> {
    decode_kronecker_with(b, a, v, alphabet, d, Execution::default(), |m, y, al, k| {
        decode_one_sided(m, y, al, k)
    })
}

/// Block decoder for `B ⊗ A` with a binary `d`-disjunct `B`.
///
/// Entries are nonnegative, so block `j` of `x` is zero exactly when some
/// outer row `i` with `b_ij = 1` has an all-zero outcome block `v_i`. Every
/// nonzero block `j` has a row isolating it from the other nonzero blocks,
/// where `v_i = A x_j`; `inner` decodes that.
pub fn decode_kronecker_with<F>(
    b: &QaryMatrix,
    a: &QaryMatrix,
    v: &OutcomeVector,
    alphabet: &Alphabet,
    d: usize,
    exec: Execution,
    inner: F,
) -> Result<DecodeResult>
where
    F: Fn(&QaryMatrix, &OutcomeVector, &Alphabet, usize) -> Result<DecodeResult> + Sync + Send,
{
    b.ensure_binary()?;
    if alphabet.sidedness() != Sidedness::OneSidedPos {
        return Err(Error::InvalidParameter(
            "Kronecker decoding is defined for nonnegative alphabets only".into(),
        ));
    }
    if v.len() != b.t() * a.t() {
        return Err(Error::DimensionMismatch {
            what: "outcome length vs Kronecker rows",
            expected: b.t() * a.t(),
            found: v.len(),
        });
    }
    let ta = a.t();
    let block = |i: usize| &v[i * ta..(i + 1) * ta];
    let zero_block: Vec<bool> = (0..b.t())
        .map(|i| block(i).iter().all(Rational::is_zero))
        .collect();

    let mut comparisons = 0u64;
    let mut nonzero = Vec::new();
    for j in 0..b.n() {
        let mut covered = false;
        let mut is_zero = false;
        for (i, &zero) in zero_block.iter().enumerate() {
            if b.get(i, j) == 1 {
                covered = true;
                comparisons += 1;
                if zero {
                    is_zero = true;
                    break;
                }
            }
        }
        if !covered {
            return Err(Error::NoConsistentVector(format!(
                "outer column {} is covered by no row",
                j + 1
            )));
        }
        if !is_zero {
            nonzero.push(j);
        }
    }
    if nonzero.len() > d {
        return Err(Error::NoConsistentVector(format!(
            "{} nonzero blocks, more than d = {d}",
            nonzero.len()
        )));
    }

    let isolating: Vec<usize> = nonzero
        .iter()
        .map(|&j| {
            (0..b.t())
                .find(|&i| {
                    b.get(i, j) == 1 && nonzero.iter().all(|&other| other == j || b.get(i, other) == 0)
                })
                .ok_or_else(|| {
                    Error::NoConsistentVector(format!("no row isolates block {}", j + 1))
                })
        })
        .collect::<Result<_>>()?;

    let decoded = exec.map_range(nonzero.len(), |pos| {
        let y = OutcomeVector::new(block(isolating[pos]).to_vec());
        inner(a, &y, alphabet, d)
    });
    let mut blocks: Vec<SparseVector> = (0..b.n()).map(|_| SparseVector::zero(a.n())).collect();
    for (pos, res) in decoded.into_iter().enumerate() {
        let res = res?;
        comparisons += res.comparisons;
        blocks[nonzero[pos]] = res.x_hat;
    }

    // Re-encode blockwise: v_i = sum_j b_ij A x_j.
    let inner_outcomes: Vec<(usize, OutcomeVector)> = nonzero
        .iter()
        .map(|&j| Ok((j, encode(a, &blocks[j])?)))
        .collect::<Result<_>>()?;
    for i in 0..b.t() {
        let mut expect = vec![Rational::zero(); ta];
        for (j, out) in &inner_outcomes {
            if b.get(i, *j) == 1 {
                for (e, o) in expect.iter_mut().zip(out.iter()) {
                    *e += o;
                }
            }
        }
        if expect.as_slice() != block(i) {
            return Err(Error::NoConsistentVector(
                "recovered blocks do not reproduce the outcome".into(),
            ));
        }
    }

    let x_hat = SparseVector::concat(&blocks);
    if x_hat.weight() > d {
        return Err(Error::NoConsistentVector(format!(
            "recovered vector has {} nonzero entries, more than d = {d}",
            x_hat.weight()
        )));
    }
    let stage_log = crate::decode::stages_from_vector(&x_hat, alphabet);
    Ok(DecodeResult {
        x_hat,
        stage_log,
        comparisons,
    })
}
