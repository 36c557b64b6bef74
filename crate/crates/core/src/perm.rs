use alloc::vec::Vec;

use crate::BottError;

/// A bijection on `0..n`.
///
/// Relabeling a matrix by `p` moves vertex `i` to position `p.apply(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, BottError> {
        let n = map.len();
        let mut seen = alloc::vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(BottError::InvalidPermutation);
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Exchanges `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, BottError> {
        for v in [a, b] {
            if v >= n {
                return Err(BottError::VertexOutOfRange { vertex: v, n });
            }
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        Ok(Permutation { map })
    }

    /// `i ↦ n - 1 - i`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            map: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            map: other.map.iter().map(|&v| self.map[v]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(Permutation::new(vec![0, 0]), Err(BottError::InvalidPermutation));
        assert_eq!(Permutation::new(vec![0, 2]), Err(BottError::InvalidPermutation));
        assert!(Permutation::new(vec![1, 2, 0]).is_ok());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
        assert_eq!(p.inverse().compose(&p), Permutation::identity(4));
    }
}
