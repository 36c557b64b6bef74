//! The mod 2 cohomology ring `Z/2[x_1..x_n] / (x_j^2 = α_j x_j)` with
//! `α_j = Σ_i A^i_j x_i`, for strictly upper triangular `A`.
//!
//! Squarefree monomials `x_{i_1} ⋯ x_{i_q}` form a basis of the degree `q`
//! part. Monomials are bit masks over generators (bit `i` for `x_{i+1}`); a
//! degree-1 element is a single mask.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{bott_equivalent, iso_canon, OrbitBudget};
use crate::gf2::rank_u64;
use crate::{BottError, BottMatrix};

/// Largest `n` accepted by [`eigen_space_bruteforce`].
pub const MAX_BRUTEFORCE_N: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomRing {
    a: BottMatrix,
    alpha: Vec<u64>,
}

impl CohomRing {
    pub fn new(a: BottMatrix) -> Result<Self, BottError> {
        if !a.is_strictly_upper() {
            return Err(BottError::NotStrictlyUpper);
        }
        let alpha = a.columns();
        Ok(CohomRing { a, alpha })
    }

    /// Ring of the iso-canonical form of any Bott matrix.
    pub fn from_bott(a: &BottMatrix) -> Self {
        Self::new(iso_canon(a).matrix).expect("canonical forms are strictly upper triangular")
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn matrix(&self) -> &BottMatrix {
        &self.a
    }

    /// `α_j` as a degree-1 mask; `x_j^2 = α_j x_j`.
    pub fn alpha(&self, j: usize) -> u64 {
        self.alpha[j]
    }

    /// `x_i · t` in normal form, toggled into `out`.
    fn mul_generator(&self, t: u64, i: usize, out: &mut BTreeSet<u64>) {
        if (t >> i) & 1 == 0 {
            toggle(out, t | 1 << i);
            return;
        }
        // x_i^2 = α_i x_i and α_i only involves lower indices, so this terminates.
        let mut a = self.alpha[i];
        while a != 0 {
            let k = a.trailing_zeros() as usize;
            a &= a - 1;
            self.mul_generator(t, k, out);
        }
    }

    fn mul_monomials(&self, p: u64, q: u64, out: &mut BTreeSet<u64>) {
        let mut acc: BTreeSet<u64> = BTreeSet::new();
        acc.insert(p);
        // highest generator first
        let mut bits = q;
        while bits != 0 {
            let i = 63 - bits.leading_zeros() as usize;
            bits &= !(1 << i);
            let mut next = BTreeSet::new();
            for &t in &acc {
                self.mul_generator(t, i, &mut next);
            }
            acc = next;
        }
        for t in acc {
            toggle(out, t);
        }
    }

    pub fn multiply(&self, u: &CohomElement, v: &CohomElement) -> CohomElement {
        let mut out = BTreeSet::new();
        for &p in &u.terms {
            for &q in &v.terms {
                self.mul_monomials(p, q, &mut out);
            }
        }
        CohomElement {
            degree: u.degree + v.degree,
            terms: out.into_iter().collect(),
        }
    }

    /// `x^2` for a degree-1 mask `x`.
    pub fn square_linear(&self, x: u64) -> CohomElement {
        let e = CohomElement::linear(x);
        self.multiply(&e, &e)
    }
}

fn toggle(set: &mut BTreeSet<u64>, t: u64) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

/// A homogeneous element: a sum of distinct squarefree monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomElement {
    degree: usize,
    terms: Vec<u64>,
}

impl CohomElement {
    pub fn zero(degree: usize) -> Self {
        CohomElement {
            degree,
            terms: Vec::new(),
        }
    }

    /// `x_{j+1}`.
    pub fn generator(j: usize) -> Self {
        CohomElement {
            degree: 1,
            terms: alloc::vec![1 << j],
        }
    }

    /// `Σ_{i ∈ mask} x_{i+1}`.
    pub fn linear(mask: u64) -> Self {
        let mut terms = Vec::new();
        let mut bits = mask;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            terms.push(low);
            bits &= bits - 1;
        }
        CohomElement { degree: 1, terms }
    }

    /// Sum of monomials; repeated monomials cancel.
    pub fn from_monomials(degree: usize, monomials: impl IntoIterator<Item = u64>) -> Self {
        let mut set = BTreeSet::new();
        for m in monomials {
            debug_assert_eq!(m.count_ones() as usize, degree);
            toggle(&mut set, m);
        }
        CohomElement {
            degree,
            terms: set.into_iter().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monomials in ascending mask order.
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The mask of a degree-1 element.
    pub fn as_linear(&self) -> Option<u64> {
        (self.degree == 1).then(|| self.terms.iter().fold(0, |acc, t| acc | t))
    }

    pub fn add(&self, other: &CohomElement) -> CohomElement {
        debug_assert_eq!(self.degree, other.degree);
        CohomElement::from_monomials(self.degree, self.terms.iter().chain(other.terms.iter()).copied())
    }

    /// Parses a degree-1 element written as `x1+x3` (1-indexed) or `0`.
    pub fn parse_linear(s: &str, n: usize) -> Result<CohomElement, BottError> {
        let s = s.trim();
        if s == "0" {
            return Ok(CohomElement::zero(1));
        }
        let mut mask = 0u64;
        for part in s.split('+') {
            let idx = part
                .trim()
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= n)
                .ok_or(BottError::PreconditionViolated("degree-1 elements look like x1+x3"))?;
            mask ^= 1 << (idx - 1);
        }
        Ok(CohomElement::linear(mask))
    }
}

impl fmt::Display for CohomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Display in ascending generator order within and across monomials.
        let mut monos: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|&t| (0..64).filter(|&i| (t >> i) & 1 == 1).map(|i| i + 1).collect())
            .collect();
        monos.sort();
        for (k, mono) in monos.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            let mut s = String::new();
            for i in mono {
                s.push('x');
                s.push_str(&alloc::format!("{i}"));
            }
            if mono.is_empty() {
                s.push('1');
            }
            f.write_str(&s)?;
        }
        Ok(())
    }
}

/// An eigen-element `α` with its eigen-space `{x : x^2 = α x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    /// Degree-1 mask of `α`.
    pub alpha: u64,
    /// Basis of the eigen-space as degree-1 masks.
    pub eigenspace_basis: Vec<u64>,
    /// Dimension of the eigen-space modulo `span(α)`.
    pub reduced_dim: usize,
}

/// Reduces masks to an independent subset, keeping the first of any
/// dependent run.
fn independent(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut kept: Vec<u64> = Vec::new();
    for v in vectors {
        kept.push(v);
        if rank_u64(&kept) < kept.len() {
            kept.pop();
        }
    }
    kept
}

/// The eigen-elements are exactly the distinct `α_j`; the eigen-space of `α`
/// is spanned by `α` and the generators `x_i` with `α_i = α`.
pub fn eigen_elements(ring: &CohomRing) -> Vec<EigenData> {
    let mut seen: Vec<u64> = Vec::new();
    for j in 0..ring.n() {
        if !seen.contains(&ring.alpha(j)) {
            seen.push(ring.alpha(j));
        }
    }
    seen.into_iter()
        .map(|alpha| {
            let gens = (0..ring.n()).filter(|&i| ring.alpha(i) == alpha).map(|i| 1u64 << i);
            let basis = independent((alpha != 0).then_some(alpha).into_iter().chain(gens));
            let reduced_dim = basis.len() - usize::from(alpha != 0);
            EigenData {
                alpha,
                eigenspace_basis: basis,
                reduced_dim,
            }
        })
        .collect()
}

/// Eigen-space of `alpha` by testing every degree-1 element against the
/// defining equation `x^2 = α x`.
pub fn eigen_space_bruteforce(ring: &CohomRing, alpha: u64) -> Result<Vec<u64>, BottError> {
    let n = ring.n();
    if n > MAX_BRUTEFORCE_N {
        return Err(BottError::TooLarge {
            n,
            max: MAX_BRUTEFORCE_N,
        });
    }
    let a = CohomElement::linear(alpha);
    let solutions = (0u64..1 << n).filter(|&x| {
        let e = CohomElement::linear(x);
        ring.multiply(&e, &e) == ring.multiply(&a, &e)
    });
    Ok(independent(solutions))
}

/// Whether two subspaces given by spanning masks coincide.
pub fn same_span(u: &[u64], v: &[u64]) -> bool {
    let both: Vec<u64> = u.iter().chain(v.iter()).copied().collect();
    let r = rank_u64(&both);
    rank_u64(u) == r && rank_u64(v) == r
}

/// Sorted reduced eigen-space dimensions: an invariant of the graded ring.
pub fn reduced_dim_profile(ring: &CohomRing) -> Vec<usize> {
    let mut dims: Vec<usize> = eigen_elements(ring).iter().map(|e| e.reduced_dim).collect();
    dims.sort_unstable();
    dims
}

/// Whether the mod 2 cohomology rings are isomorphic as graded rings, decided
/// by Bott equivalence of the matrices.
pub fn rings_isomorphic(a: &BottMatrix, b: &BottMatrix, budget: OrbitBudget) -> Result<bool, BottError> {
    bott_equivalent(a, b, budget)
}
