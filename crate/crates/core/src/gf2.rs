//! Dense matrices over Z/2 with bit-packed rows.

use alloc::vec::Vec;

/// An `r × c` matrix over Z/2. Each row occupies `ceil(c / 64)` words; bit
/// `j` of a row lives in word `j / 64` at position `j % 64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Gf2Matrix {
            rows,
            cols,
            words,
            data: alloc::vec![0; rows * words],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, true);
        }
        m
    }

    /// Rows with at most 64 columns, given as bit masks.
    pub fn from_u64_rows(cols: usize, rows: &[u64]) -> Self {
        assert!(cols <= 64, "use from_fn for more than 64 columns");
        let mut m = Self::zeros(rows.len(), cols);
        let mask = crate::matrix::row_mask(cols.max(1));
        for (i, &r) in rows.iter().enumerate() {
            if m.words > 0 {
                m.data[i] = r & mask;
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// The submatrix with the given rows and columns of a square bit-row matrix.
    pub fn submatrix(source: &[u64], row_set: &[usize], col_set: &[usize]) -> Self {
        Self::from_fn(row_set.len(), col_set.len(), |a, b| {
            (source[row_set[a]] >> col_set[b]) & 1 == 1
        })
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    /// `row[dst] += row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        if src == dst {
            return;
        }
        let w = self.words;
        for k in 0..w {
            let s = self.data[src * w + k];
            self.data[dst * w + k] ^= s;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Reduced row echelon form and its pivot columns.
    ///
    /// Pivots are chosen at the lowest available column index; nonzero rows come
    /// first, ordered by pivot column.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        (m, pivots)
    }

    /// In-place elimination returning pivot columns. With `reduce`, entries
    /// above each pivot are cleared as well.
    fn eliminate(&mut self, reduce: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&i| self.get(i, col)) else {
                continue;
            };
            self.swap_rows(p, next);
            let start = if reduce { 0 } else { next + 1 };
            for i in start..self.rows {
                if i != next && self.get(i, col) {
                    self.add_row(next, i);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }
}

/// Rank of a set of vectors of width at most 64, given as bit masks.
pub fn rank_u64(vectors: &[u64]) -> usize {
    // XOR basis keyed by highest bit.
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let h = 63 - x.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = x;
                rank += 1;
                break;
            }
            x ^= basis[h];
        }
    }
    rank
}
