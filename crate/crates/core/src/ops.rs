//! Validity test and the three Bott operations.

use alloc::vec::Vec;

use crate::gf2::Gf2Matrix;
use crate::matrix::row_mask;
use crate::{BottError, BottMatrix, Permutation, MAX_N};

/// Kahn's algorithm on bit rows. Self-loops count as cycles.
pub(crate) fn is_acyclic(n: usize, rows: &[u64]) -> bool {
    let mut indeg = [0u8; MAX_N];
    for &r in rows {
        let mut bits = r;
        while bits != 0 {
            indeg[bits.trailing_zeros() as usize] += 1;
            bits &= bits - 1;
        }
    }
    let mut ready: u64 = (0..n).filter(|&v| indeg[v] == 0).fold(0, |acc, v| acc | 1 << v);
    let mut removed = 0;
    while ready != 0 {
        let v = ready.trailing_zeros() as usize;
        ready &= ready - 1;
        removed += 1;
        let mut bits = rows[v];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready |= 1 << w;
            }
        }
    }
    removed == n
}

/// Every principal minor of `M + I` equals 1 over Z/2.
fn all_principal_minors_one(n: usize, rows: &[u64]) -> bool {
    (1u64..(1u64 << n)).all(|subset| {
        let idx: Vec<usize> = (0..n).filter(|&i| (subset >> i) & 1 == 1).collect();
        let m = Gf2Matrix::from_fn(idx.len(), idx.len(), |a, b| {
            (a == b) ^ ((rows[idx[a]] >> idx[b]) & 1 == 1)
        });
        m.rank() == idx.len()
    })
}

/// Whether a raw `n × n` binary matrix is a Bott matrix.
///
/// Rows are bit masks with bit `j` for column `j`. The test is a topological
/// sort; debug builds cross-check it against the principal-minor criterion
/// for `n ≤ 10`.
pub fn is_bott(n: usize, rows: &[u64]) -> Result<bool, BottError> {
    if n == 0 || n > MAX_N {
        return Err(BottError::InvalidSize(n));
    }
    if rows.len() != n || rows.iter().any(|r| r & !row_mask(n) != 0) {
        return Err(BottError::DimensionMismatch {
            expected: n,
            found: rows.len(),
        });
    }
    let acyclic = is_acyclic(n, rows);
    if cfg!(debug_assertions) && n <= 10 {
        let zero_diag = (0..n).all(|i| (rows[i] >> i) & 1 == 0);
        debug_assert_eq!(acyclic, zero_diag && all_principal_minors_one(n, rows));
    }
    Ok(acyclic)
}

impl BottMatrix {
    fn check_vertex(&self, v: usize) -> Result<(), BottError> {
        if v >= self.n() {
            Err(BottError::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Simultaneous row and column permutation: the result `B` satisfies
    /// `B^{p(i)}_{p(j)} = A^i_j`.
    pub fn relabel(&self, p: &Permutation) -> Result<BottMatrix, BottError> {
        let n = self.n();
        if p.len() != n {
            return Err(BottError::SizeMismatch {
                left: n,
                right: p.len(),
            });
        }
        let mut rows = alloc::vec![0u64; n];
        for (i, &r) in self.rows().iter().enumerate() {
            let mut bits = r;
            let mut out = 0u64;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out |= 1 << p.apply(j);
            }
            rows[p.apply(i)] = out;
        }
        Ok(BottMatrix::from_rows_unchecked(n, rows))
    }

    /// Local complementation at `k`: every column `j` with `A^k_j = 1` gains
    /// column `k`. On the digraph this toggles each arc from an in-neighbor
    /// of `k` to an out-neighbor of `k`.
    pub fn local_complement(&self, k: usize) -> Result<BottMatrix, BottError> {
        self.check_vertex(k)?;
        Ok(self.local_complement_unchecked(k))
    }

    #[inline]
    pub(crate) fn local_complement_unchecked(&self, k: usize) -> BottMatrix {
        // A^i_j += A^i_k A^k_j, i.e. each in-neighbor row gains row k.
        let rk = self.row(k);
        let rows = self
            .rows()
            .iter()
            .map(|&r| if (r >> k) & 1 == 1 { r ^ rk } else { r })
            .collect();
        BottMatrix::from_rows_unchecked(self.n(), rows)
    }

    /// Slide on `(l, m)`: row `m` gains row `l`. Requires `l ≠ m` and equal
    /// columns `A_l = A_m`, i.e. `l` and `m` are siblings.
    pub fn slide(&self, l: usize, m: usize) -> Result<BottMatrix, BottError> {
        self.check_vertex(l)?;
        self.check_vertex(m)?;
        if l == m {
            return Err(BottError::PreconditionViolated("slide needs two distinct vertices"));
        }
        if self.column(l) != self.column(m) {
            return Err(BottError::PreconditionViolated("slide needs equal columns A_l = A_m"));
        }
        Ok(self.slide_unchecked(l, m))
    }

    #[inline]
    pub(crate) fn slide_unchecked(&self, l: usize, m: usize) -> BottMatrix {
        let mut rows = self.rows().to_vec();
        rows[m] ^= rows[l];
        BottMatrix::from_rows_unchecked(self.n(), rows)
    }
}
