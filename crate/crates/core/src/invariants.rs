//! Numerical invariants that are constant on Bott classes.
//!
//! Level sets, odd height, sibling classes, rank, rational Betti numbers and
//! the cut-rank of unions of level sets are all preserved by relabeling,
//! local complementation and slides. [`fingerprint`] bundles them.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::gf2::{rank_u64, Gf2Matrix};
use crate::{BottError, BottMatrix};

/// Largest null-space dimension enumerated by [`betti`].
pub const MAX_KERNEL_DIM: usize = 30;

/// Largest number of level sets accepted by [`cutrank_profile`].
pub const MAX_LEVELS: usize = 20;

/// Partition of the vertices by the length of the longest directed path
/// ending at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStructure {
    /// `level_of[v] = k` iff `v ∈ L_k`.
    pub level_of: Vec<usize>,
    /// Nonempty levels `L_0, …, L_t`, each sorted ascending.
    pub levels: Vec<Vec<usize>>,
    /// `(|L_0|, …, |L_{n-1}|)`, zero padded to length `n`.
    pub type_vector: Vec<usize>,
}

impl LevelStructure {
    /// Bit mask of the vertices in `L_k`.
    pub fn level_mask(&self, k: usize) -> u64 {
        self.levels[k].iter().fold(0, |acc, &v| acc | 1 << v)
    }
}

/// Longest-path length ending at each vertex.
pub(crate) fn level_of(a: &BottMatrix) -> Vec<usize> {
    let n = a.n();
    let cols = a.columns();
    let mut level = alloc::vec![0usize; n];
    let mut done = 0u64;
    let mut indeg: Vec<u32> = cols.iter().map(|c| c.count_ones()).collect();
    let mut ready: u64 = (0..n).filter(|&v| indeg[v] == 0).fold(0, |acc, v| acc | 1 << v);
    while ready != 0 {
        let v = ready.trailing_zeros() as usize;
        ready &= ready - 1;
        done |= 1 << v;
        let mut out = a.row(v);
        while out != 0 {
            let w = out.trailing_zeros() as usize;
            out &= out - 1;
            level[w] = level[w].max(level[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready |= 1 << w;
            }
        }
    }
    debug_assert_eq!(done.count_ones() as usize, n);
    level
}

pub fn level_structure(a: &BottMatrix) -> LevelStructure {
    let n = a.n();
    let level_of = level_of(a);
    let depth = level_of.iter().copied().max().unwrap_or(0) + 1;
    let mut levels = alloc::vec![Vec::new(); depth];
    for (v, &k) in level_of.iter().enumerate() {
        levels[k].push(v);
    }
    let mut type_vector = alloc::vec![0usize; n];
    for (k, l) in levels.iter().enumerate() {
        type_vector[k] = l.len();
    }
    LevelStructure {
        level_of,
        levels,
        type_vector,
    }
}

/// Odd height: the largest level containing a vertex of odd out-degree, or
/// infinity when every out-degree is even. Infinity sorts above every finite
/// height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OddHeight {
    Finite(usize),
    Infinite,
}

impl Ord for OddHeight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OddHeight::Finite(a), OddHeight::Finite(b)) => a.cmp(b),
            (OddHeight::Finite(_), OddHeight::Infinite) => Ordering::Less,
            (OddHeight::Infinite, OddHeight::Finite(_)) => Ordering::Greater,
            (OddHeight::Infinite, OddHeight::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for OddHeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OddHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddHeight::Finite(k) => write!(f, "{k}"),
            OddHeight::Infinite => f.write_str("inf"),
        }
    }
}

pub fn odd_height(a: &BottMatrix) -> OddHeight {
    let level = level_of(a);
    (0..a.n())
        .filter(|&v| a.out_degree(v) % 2 == 1)
        .map(|v| level[v])
        .max()
        .map_or(OddHeight::Infinite, OddHeight::Finite)
}

/// Sibling classes: maximal sets of vertices with identical in-neighbor sets
/// (identical columns). Returned sorted by smallest member.
pub fn sibling_classes(a: &BottMatrix) -> Vec<Vec<usize>> {
    let cols = a.columns();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = 0u64;
    for v in 0..a.n() {
        if (assigned >> v) & 1 == 1 {
            continue;
        }
        let class: Vec<usize> = (v..a.n()).filter(|&w| cols[w] == cols[v]).collect();
        for &w in &class {
            assigned |= 1 << w;
        }
        classes.push(class);
    }
    classes
}

/// Sorted sibling-class sizes per level `L_0, …, L_t`.
pub fn sibling_profile(a: &BottMatrix) -> Vec<Vec<usize>> {
    let levels = level_of(a);
    let depth = levels.iter().copied().max().unwrap_or(0) + 1;
    let mut profile = alloc::vec![Vec::new(); depth];
    for class in sibling_classes(a) {
        // siblings always share a level
        profile[levels[class[0]]].push(class.len());
    }
    for sizes in &mut profile {
        sizes.sort_unstable();
    }
    profile
}

/// Every vertex has even out-degree.
pub fn orientable(a: &BottMatrix) -> bool {
    a.rows().iter().all(|r| r.count_ones() % 2 == 0)
}

/// Every sibling class has even cardinality.
pub fn symplectic(a: &BottMatrix) -> bool {
    sibling_classes(a).iter().all(|c| c.len() % 2 == 0)
}

/// Rank of `A` over Z/2.
pub fn rank(a: &BottMatrix) -> usize {
    rank_u64(a.rows())
}

/// Basis of `{x : Σ_j x_j A_j = 0}` as bit masks over column indices.
pub fn column_kernel_basis(a: &BottMatrix) -> Vec<u64> {
    let n = a.n();
    let cols = a.columns();
    // Row j is [A_j | e_j]; rows whose left half reduces to zero span the kernel.
    let aug = Gf2Matrix::from_fn(
        n,
        2 * n,
        |j, c| {
            if c < n {
                (cols[j] >> c) & 1 == 1
            } else {
                c - n == j
            }
        },
    );
    let (reduced, pivots) = aug.rref();
    pivots
        .iter()
        .enumerate()
        .filter(|&(_, &p)| p >= n)
        .map(|(r, _)| {
            (0..n)
                .filter(|&j| reduced.get(r, n + j))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect()
}

/// Rational Betti numbers `b_0, …, b_n`: `b_i` counts the `i`-element sets of
/// columns summing to zero.
pub fn betti(a: &BottMatrix) -> Result<Vec<u64>, BottError> {
    let basis = column_kernel_basis(a);
    if basis.len() > MAX_KERNEL_DIM {
        return Err(BottError::KernelTooLarge {
            dim: basis.len(),
            max: MAX_KERNEL_DIM,
        });
    }
    let mut b = alloc::vec![0u64; a.n() + 1];
    // Gray-code walk over the span.
    let mut x = 0u64;
    b[0] += 1;
    for step in 1u64..(1u64 << basis.len()) {
        x ^= basis[step.trailing_zeros() as usize];
        b[x.count_ones() as usize] += 1;
    }
    Ok(b)
}

/// Cut-rank of unions of level sets plus ranks between consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutRankProfile {
    /// Entry `mask` is `ρ(∪_{j ∈ mask} L_j)`, for every subset of the `t + 1`
    /// nonempty levels.
    pub by_levels: Vec<usize>,
    /// Entry `j` is `rank B[L_j, L_{j+1}]` for `j < t`.
    pub consecutive: Vec<usize>,
}

/// `ρ(X) = rank B[X, V ∖ X]` for a vertex mask `X`.
pub fn cut_rank(a: &BottMatrix, x: u64) -> usize {
    let outside = !x;
    let rows: Vec<u64> = (0..a.n())
        .filter(|&v| (x >> v) & 1 == 1)
        .map(|v| a.row(v) & outside)
        .collect();
    rank_u64(&rows)
}

pub fn cutrank_profile(a: &BottMatrix) -> Result<CutRankProfile, BottError> {
    let ls = level_structure(a);
    let t = ls.levels.len();
    if t > MAX_LEVELS {
        return Err(BottError::TooManyLevels {
            levels: t,
            max: MAX_LEVELS,
        });
    }
    let masks: Vec<u64> = (0..t).map(|k| ls.level_mask(k)).collect();
    let by_levels = (0..1usize << t)
        .map(|sel| {
            let x = (0..t)
                .filter(|&k| (sel >> k) & 1 == 1)
                .fold(0u64, |acc, k| acc | masks[k]);
            cut_rank(a, x)
        })
        .collect();
    let consecutive = (0..t.saturating_sub(1))
        .map(|j| {
            let rows: Vec<u64> = ls.levels[j].iter().map(|&v| a.row(v) & masks[j + 1]).collect();
            rank_u64(&rows)
        })
        .collect();
    Ok(CutRankProfile { by_levels, consecutive })
}

/// All class invariants of a Bott matrix. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantFingerprint {
    pub type_vector: Vec<usize>,
    pub rank: usize,
    pub odd_height: OddHeight,
    pub sibling_profile: Vec<Vec<usize>>,
    pub cutrank_levels: Vec<usize>,
    pub consecutive_ranks: Vec<usize>,
    pub betti: Vec<u64>,
    pub orientable: bool,
    pub symplectic: bool,
}

pub fn fingerprint(a: &BottMatrix) -> Result<InvariantFingerprint, BottError> {
    let cut = cutrank_profile(a)?;
    Ok(InvariantFingerprint {
        type_vector: level_structure(a).type_vector,
        rank: rank(a),
        odd_height: odd_height(a),
        sibling_profile: sibling_profile(a),
        cutrank_levels: cut.by_levels,
        consecutive_ranks: cut.consecutive,
        betti: betti(a)?,
        orientable: orientable(a),
        symplectic: symplectic(a),
    })
}
