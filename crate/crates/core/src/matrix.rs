use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::ops::is_acyclic;
use crate::BottError;

/// Largest supported vertex count; a row fits one machine word.
pub const MAX_N: usize = 64;

/// Largest vertex count accepted by the canonical-form and classification
/// routines. Strictly upper triangular matrices of this size pack into a `u128`.
pub const MAX_CANON_N: usize = 16;

/// An `n × n` binary matrix with zero diagonal whose digraph is acyclic.
///
/// Row `i` is stored as a `u64` with bit `j` set iff `A^i_j = 1`, i.e. iff the
/// digraph has the arc `i → j`. Values are immutable; every operation returns
/// a new matrix.
///
/// The total order compares `n` first and then the row-major bit string
/// `A^0_0 A^0_1 … A^{n-1}_{n-1}` lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BottMatrix {
    n: usize,
    rows: Vec<u64>,
}

#[inline]
pub(crate) fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Number of strictly upper triangular positions.
#[inline]
pub fn upper_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl BottMatrix {
    /// Validates row data and builds a matrix.
    pub fn from_rows(n: usize, rows: &[u64]) -> Result<Self, BottError> {
        if n == 0 || n > MAX_N {
            return Err(BottError::InvalidSize(n));
        }
        if rows.len() != n || rows.iter().any(|r| r & !row_mask(n) != 0) {
            return Err(BottError::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if !is_acyclic(n, rows) {
            return Err(BottError::NotBott);
        }
        Ok(BottMatrix { n, rows: rows.to_vec() })
    }

    /// Builds a matrix from `'0'`/`'1'` row strings; test and example helper.
    pub fn from_bit_rows(rows: &[&str]) -> Result<Self, BottError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n);
        for r in rows {
            if r.len() != n {
                return Err(BottError::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            let mut bits = 0u64;
            for (j, c) in r.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => bits |= 1 << j,
                    _ => {
                        return Err(BottError::DimensionMismatch {
                            expected: n,
                            found: r.len(),
                        })
                    }
                }
            }
            data.push(bits);
        }
        Self::from_rows(n, &data)
    }

    /// Trusted constructor for rows already known to form a Bott matrix.
    #[inline]
    pub(crate) fn from_rows_unchecked(n: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        BottMatrix { n, rows }
    }

    pub fn zero(n: usize) -> Result<Self, BottError> {
        if n == 0 || n > MAX_N {
            return Err(BottError::InvalidSize(n));
        }
        Ok(BottMatrix {
            n,
            rows: alloc::vec![0; n],
        })
    }

    /// Arcs `0→1→…→n-1`.
    pub fn path(n: usize) -> Result<Self, BottError> {
        let mut m = Self::zero(n)?;
        for i in 0..n - 1 {
            m.rows[i] = 1 << (i + 1);
        }
        Ok(m)
    }

    /// Rebuilds a strictly upper triangular matrix from its packed key.
    ///
    /// The key lists the entries `(0,1), (0,2), …, (n-2,n-1)` in row-major
    /// order with the first entry as the most significant bit.
    pub fn from_upper_key(n: usize, key: u128) -> Result<Self, BottError> {
        if n == 0 || n > MAX_CANON_N {
            return Err(BottError::TooLarge { n, max: MAX_CANON_N });
        }
        let len = upper_len(n);
        if len < 128 && key >> len != 0 {
            return Err(BottError::DimensionMismatch {
                expected: n,
                found: 128 - key.leading_zeros() as usize,
            });
        }
        let mut rows = alloc::vec![0u64; n];
        let mut k = len;
        for (i, row) in rows.iter_mut().enumerate() {
            for j in i + 1..n {
                k -= 1;
                if (key >> k) & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        Ok(BottMatrix { n, rows })
    }

    /// Packed key of a strictly upper triangular matrix with `n ≤ 16`.
    ///
    /// Keys compare in the same order as the matrices themselves.
    pub fn upper_key(&self) -> Option<u128> {
        if self.n > MAX_CANON_N || !self.is_strictly_upper() {
            return None;
        }
        let mut key = 0u128;
        for i in 0..self.n {
            for j in i + 1..self.n {
                key = (key << 1) | ((self.rows[i] >> j) & 1) as u128;
            }
        }
        Some(key)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    /// Column `j` as a bit set over rows: the in-neighbors of `j`.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    /// All columns at once (the transpose's rows).
    pub fn columns(&self) -> Vec<u64> {
        let mut cols = alloc::vec![0u64; self.n];
        for (i, &r) in self.rows.iter().enumerate() {
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                cols[j] |= 1 << i;
                bits &= bits - 1;
            }
        }
        cols
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.column(v).count_ones() as usize
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_strictly_upper(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &r)| r & ((1u64 << i) | ((1u64 << i) - 1)) == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Induced subdigraph on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self, BottError> {
        let k = vertices.len();
        if k == 0 {
            return Err(BottError::InvalidSize(0));
        }
        let mut rows = alloc::vec![0u64; k];
        for (a, &u) in vertices.iter().enumerate() {
            if u >= self.n {
                return Err(BottError::VertexOutOfRange { vertex: u, n: self.n });
            }
            for (b, &w) in vertices.iter().enumerate() {
                if self.get(u, w) {
                    rows[a] |= 1 << b;
                }
            }
        }
        Ok(BottMatrix { n: k, rows })
    }

    /// Block-diagonal union `self ⊕ other`; the vertices of `other` follow.
    pub fn disjoint_union(&self, other: &BottMatrix) -> Result<Self, BottError> {
        let n = self.n + other.n;
        if n > MAX_N {
            return Err(BottError::InvalidSize(n));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(BottMatrix { n, rows })
    }

    /// Row-major bit string as it appears in the `bin` text format.
    pub fn bit_rows(&self) -> Vec<alloc::string::String> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect()
    }
}

impl Ord for BottMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        // Column 0 is the most significant position of a row string.
        self.n.cmp(&other.n).then_with(|| {
            self.rows
                .iter()
                .map(|r| r.reverse_bits())
                .cmp(other.rows.iter().map(|r| r.reverse_bits()))
        })
    }
}

impl PartialOrd for BottMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BottMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BottMatrix(")?;
        for (i, r) in self.bit_rows().iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            f.write_str(r)?;
        }
        f.write_str(")")
    }
}
