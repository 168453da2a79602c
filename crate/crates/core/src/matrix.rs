//! q-ary measurement matrices.

use crate::error::{Error, Result};

/// A `t x n` matrix with entries in `0..q`, stored row-major.
///
/// Rows are measurements and columns are items; entry `(i, j)` is the number
/// of copies of item `j` placed in measurement `i`. A matrix may carry
/// transversal metadata: disjoint families of rows, where the rows inside a
/// family are binary and pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QaryMatrix {
    q: u32,
    t: usize,
    n: usize,
    entries: Vec<u32>,
    families: Option<Vec<Vec<usize>>>,
}

impl QaryMatrix {
    pub fn new(q: u32, t: usize, n: usize, entries: Vec<u32>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q must be at least 2, got {q}")));
        }
        if entries.len() != t * n {
            return Err(Error::DimensionMismatch {
                what: "matrix entries",
                expected: t * n,
                found: entries.len(),
            });
        }
        if let Some(idx) = entries.iter().position(|&e| e >= q) {
            return Err(Error::EntryOutOfRange {
                row: idx / n,
                col: idx % n,
                value: entries[idx] as u64,
                q: q as u64,
            });
        }
        Ok(QaryMatrix {
            q,
            t,
            n,
            entries,
            families: None,
        })
    }

    pub fn from_rows(q: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                what: "matrix row",
                expected: n,
                found: bad.len(),
            });
        }
        QaryMatrix::new(q, t, n, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        QaryMatrix::new(2, n, n, entries).expect("identity is binary")
    }

    /// Attaches transversal families (0-based row indices).
    pub fn with_families(mut self, families: Vec<Vec<usize>>) -> Result<Self> {
        self.validate_families(&families)?;
        self.families = Some(families);
        Ok(self)
    }

    pub fn without_families(mut self) -> Self {
        self.families = None;
        self
    }

    fn validate_families(&self, families: &[Vec<usize>]) -> Result<()> {
        let mut owner = vec![None; self.t];
        for (f, family) in families.iter().enumerate() {
            if family.is_empty() {
                return Err(Error::InvalidFamilies(format!("family {} is empty", f + 1)));
            }
            for &r in family {
                if r >= self.t {
                    return Err(Error::InvalidFamilies(format!(
                        "row {} in family {} does not exist",
                        r + 1,
                        f + 1
                    )));
                }
                if let Some(prev) = owner[r] {
                    return Err(Error::InvalidFamilies(format!(
                        "row {} appears in families {} and {}",
                        r + 1,
                        prev + 1,
                        f + 1
                    )));
                }
                owner[r] = Some(f);
            }
            let mut covered = vec![false; self.n];
            for &r in family {
                for (j, &e) in self.row(r).iter().enumerate() {
                    match e {
                        0 => {}
                        1 if !covered[j] => covered[j] = true,
                        1 => {
                            return Err(Error::InvalidFamilies(format!(
                                "rows of family {} overlap in column {}",
                                f + 1,
                                j + 1
                            )))
                        }
                        _ => {
                            return Err(Error::InvalidFamilies(format!(
                                "row {} of family {} is not binary",
                                r + 1,
                                f + 1
                            )))
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of rows (measurements).
    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of columns (items).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn families(&self) -> Option<&[Vec<usize>]> {
        self.families.as_deref()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.t).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.t).map(move |i| self.get(i, j))
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&e| e <= 1)
    }

    pub fn ensure_binary(&self) -> Result<()> {
        match self.entries.iter().position(|&e| e > 1) {
            None => Ok(()),
            Some(idx) => Err(Error::NotBinary {
                row: idx / self.n,
                col: idx % self.n,
                value: self.entries[idx],
            }),
        }
    }

    /// Sub-matrix of the columns `start..start + len`.
    pub fn column_block(&self, start: usize, len: usize) -> QaryMatrix {
        let entries = self
            .rows()
            .flat_map(|r| r[start..start + len].iter().copied())
            .collect();
        QaryMatrix::new(self.q, self.t, len, entries).expect("sub-matrix keeps entry bounds")
    }

    /// Re-declares the alphabet size. Fails if an entry does not fit.
    pub fn with_q(&self, q: u32) -> Result<QaryMatrix> {
        let mut m = QaryMatrix::new(q, self.t, self.n, self.entries.clone())?;
        m.families = self.families.clone();
        Ok(m)
    }
}
