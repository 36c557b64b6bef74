//! Decomposition into indecomposable factors.
//!
//! Local complementations and slides between non-roots never change the
//! connected components, so only slides between roots matter. Those are row
//! additions on the block `M = B[L_0, V ∖ L_0]`. Bringing `M` to reduced row
//! echelon form turns dependent root rows into isolated vertices, and the
//! remaining rows split along the components of `D ∖ L_0` exactly as finely
//! as the row space allows. Each resulting block is an indecomposable factor.

use alloc::vec::Vec;

use crate::canon::{bott_canon, bott_orbit, BottClassRep, OrbitBudget};
use crate::gf2::rank_u64;
use crate::{BottError, BottMatrix, Permutation};

/// Result of [`decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Number of single-vertex factors.
    pub isolated_count: usize,
    /// Multi-vertex factors, sorted by canonical matrix.
    pub factors: Vec<BottClassRep>,
    /// A Bott-equivalent matrix that is block diagonal: the factors in order,
    /// then the isolated vertices.
    pub witness: BottMatrix,
}

impl Decomposition {
    /// Total number of factors, isolated vertices included.
    pub fn factor_count(&self) -> usize {
        self.isolated_count + self.factors.len()
    }
}

/// Vertices with no in-neighbor (zero columns).
pub fn roots(a: &BottMatrix) -> Vec<usize> {
    let cols = a.columns();
    (0..a.n()).filter(|&v| cols[v] == 0).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so output order is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Groups of `members`, each sorted, ordered by smallest element.
    fn groups(&mut self, members: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for &v in members {
            let r = self.find(v);
            match out.iter_mut().find(|(root, _)| *root == r) {
                Some((_, g)) => g.push(v),
                None => out.push((r, alloc::vec![v])),
            }
        }
        let mut groups: Vec<Vec<usize>> = out.into_iter().map(|(_, g)| g).collect();
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort();
        groups
    }
}

/// Components of the underlying undirected graph, ordered by smallest vertex.
pub fn connected_components(a: &BottMatrix) -> Vec<Vec<usize>> {
    let n = a.n();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        let mut bits = a.row(i);
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            uf.union(i, j);
        }
    }
    let all: Vec<usize> = (0..n).collect();
    uf.groups(&all)
}

/// Root slides bring the root rows to reduced row echelon form.
struct Split {
    /// The matrix after the root slides.
    slid: BottMatrix,
    /// Vertex sets of the multi-vertex blocks.
    blocks: Vec<Vec<usize>>,
    /// Roots whose rows became zero.
    isolated: Vec<usize>,
}

fn split(a: &BottMatrix) -> Split {
    let n = a.n();
    let root_list = roots(a);
    let root_mask = root_list.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let mut slid = a.clone();
    let mut pivot_of_root: Vec<Option<usize>> = alloc::vec![None; n];
    let mut free: Vec<usize> = root_list.clone();
    // Pivot columns in ascending order; eliminating a column from every
    // other root row is a slide from the pivot root.
    for col in (0..n).filter(|&c| (root_mask >> c) & 1 == 0) {
        let Some(pos) = free.iter().position(|&r| slid.get(r, col)) else {
            continue;
        };
        let pivot = free.remove(pos);
        pivot_of_root[pivot] = Some(col);
        for &other in &root_list {
            if other != pivot && slid.get(other, col) {
                slid = slid.slide(pivot, other).expect("roots share the zero column");
            }
        }
    }
    let isolated = free;
    debug_assert!(isolated.iter().all(|&r| slid.row(r) == 0));

    let mut uf = UnionFind::new(n);
    for i in 0..n {
        let mut bits = slid.row(i);
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            uf.union(i, j);
        }
    }
    let members: Vec<usize> = (0..n).filter(|v| !isolated.contains(v)).collect();
    let blocks = uf.groups(&members);
    Split { slid, blocks, isolated }
}

/// Every block has full-rank root rows and is connected.
fn check_block(block: &BottMatrix) {
    let rs = roots(block);
    let non_roots = !rs.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let rows: Vec<u64> = rs.iter().map(|&r| block.row(r) & non_roots).collect();
    assert_eq!(
        rank_u64(&rows),
        rs.len(),
        "factor root rows are not independent: {block:?}"
    );
    assert_eq!(
        connected_components(block).len(),
        1,
        "factor is disconnected: {block:?}"
    );
}

/// Splits `a` into indecomposable factors up to Bott equivalence.
pub fn decompose(a: &BottMatrix, budget: OrbitBudget) -> Result<Decomposition, BottError> {
    let Split { slid, blocks, isolated } = split(a);
    let mut factors: Vec<(BottClassRep, Vec<usize>)> = Vec::with_capacity(blocks.len());
    for block in blocks {
        let sub = slid.induced(&block)?;
        check_block(&sub);
        factors.push((bott_canon(&sub, budget)?, block));
    }
    factors.sort_by(|x, y| x.0.canonical.cmp(&y.0.canonical).then_with(|| x.1.cmp(&y.1)));

    let mut position = alloc::vec![0usize; a.n()];
    for (next, v) in factors
        .iter()
        .flat_map(|(_, b)| b.iter())
        .chain(isolated.iter())
        .enumerate()
    {
        position[*v] = next;
    }
    let witness = slid.relabel(&Permutation::new(position)?)?;
    Ok(Decomposition {
        isolated_count: isolated.len(),
        factors: factors.into_iter().map(|(rep, _)| rep).collect(),
        witness,
    })
}

/// A single vertex is indecomposable; otherwise every Bott-equivalent
/// digraph must be connected.
pub fn is_indecomposable(a: &BottMatrix) -> bool {
    if a.n() == 1 {
        return true;
    }
    let s = split(a);
    s.isolated.is_empty() && s.blocks.len() == 1
}

/// Largest number of connected components over all members of the Bott
/// class, by enumerating the class. Intended as an oracle for small `n`.
pub fn max_components_oracle(a: &BottMatrix, budget: OrbitBudget) -> Result<usize, BottError> {
    let orbit = bott_orbit(a, budget)?;
    Ok(orbit
        .members()
        .map(|m| connected_components(&m).len())
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::bott_equivalent;
    use alloc::vec;

    fn m(rows: &[&str]) -> BottMatrix {
        BottMatrix::from_bit_rows(rows).unwrap()
    }

    /// Arcs 0→1 and 2→1.
    fn d3() -> BottMatrix {
        m(&["010", "000", "010"])
    }

    #[test]
    fn roots_examples() {
        assert_eq!(roots(&BottMatrix::zero(3).unwrap()), vec![0, 1, 2]);
        assert_eq!(roots(&BottMatrix::path(3).unwrap()), vec![0]);
        assert_eq!(roots(&d3()), vec![0, 2]);
    }

    #[test]
    fn component_examples() {
        assert_eq!(connected_components(&BottMatrix::zero(3).unwrap()).len(), 3);
        assert_eq!(connected_components(&d3()), vec![vec![0, 1, 2]]);
        // arc 0→1 with 2 isolated
        assert_eq!(
            connected_components(&m(&["010", "000", "000"])),
            vec![vec![0, 1], vec![2]]
        );
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&BottMatrix::zero(1).unwrap()));
        assert!(!is_indecomposable(&d3()));
        assert!(is_indecomposable(&BottMatrix::path(3).unwrap()));
        assert!(!is_indecomposable(&BottMatrix::zero(2).unwrap()));
    }

    #[test]
    fn decompose_examples() {
        let b = OrbitBudget::default();
        let d = decompose(&d3(), b).unwrap();
        assert_eq!(d.isolated_count, 1);
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].canonical, m(&["01", "00"]));
        assert!(bott_equivalent(&d.witness, &d3(), b).unwrap());
        assert_eq!(connected_components(&d.witness).len(), 2);

        let z = decompose(&BottMatrix::zero(4).unwrap(), b).unwrap();
        assert_eq!(z.isolated_count, 4);
        assert!(z.factors.is_empty());

        let p = BottMatrix::path(3).unwrap();
        let pp = p.disjoint_union(&p).unwrap();
        let d = decompose(&pp, b).unwrap();
        assert_eq!(d.isolated_count, 0);
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0], d.factors[1]);
        assert_eq!(d.factors[0].canonical, p);
    }

    #[test]
    fn oracle_examples() {
        let b = OrbitBudget::default();
        assert_eq!(max_components_oracle(&d3(), b).unwrap(), 2);
        assert_eq!(max_components_oracle(&BottMatrix::zero(3).unwrap(), b).unwrap(), 3);
        assert_eq!(max_components_oracle(&BottMatrix::path(3).unwrap(), b).unwrap(), 1);
    }
}
