//! Canonical forms under isomorphism and under Bott equivalence.
//!
//! [`iso_canon`] picks a canonical labeling by individualization and
//! refinement. The initial ordered partition sorts vertices by level, then by
//! in-degree, out-degree and sibling-class size, so every canonical matrix is
//! strictly upper triangular. Cells are refined to an equitable partition; the
//! canonical matrix is the smallest leaf matrix in row-major order.
//!
//! [`bott_orbit`] closes a class under local complementation and slides. Since
//! both operations commute with relabeling, it is enough to expand the
//! iso-canonical form of each member, so the closure stores one packed key per
//! isomorphism class.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::invariants::level_of;
use crate::{BottError, BottMatrix, Permutation, MAX_CANON_N};

/// Result of [`iso_canon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCanonForm {
    /// Strictly upper triangular canonical matrix.
    pub matrix: BottMatrix,
    /// `input.relabel(&witness) == matrix`.
    pub witness: Permutation,
}

/// Canonical representative of a Bott class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BottClassRep {
    /// Smallest iso-canonical form in the class.
    pub canonical: BottMatrix,
    /// Number of isomorphism classes of digraphs in the Bott class.
    pub orbit_size: usize,
}

/// Cap on the number of iso-canonical forms a closure may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitBudget {
    pub cap: usize,
}

impl OrbitBudget {
    pub const DEFAULT_CAP: usize = 10_000_000;

    pub fn new(cap: usize) -> Self {
        OrbitBudget { cap }
    }
}

impl Default for OrbitBudget {
    fn default() -> Self {
        OrbitBudget { cap: Self::DEFAULT_CAP }
    }
}

/// Ordered partition of the vertices. `color[v]` is the first position of
/// the cell containing `v`, so cells are ordered by their colors.
struct Refiner<'a> {
    n: usize,
    rows: &'a [u64],
    cols: Vec<u64>,
    twins: Vec<u64>,
    sig: Vec<u8>,
    order: Vec<usize>,
}

impl<'a> Refiner<'a> {
    fn new(n: usize, rows: &'a [u64]) -> Self {
        let mut cols = alloc::vec![0u64; n];
        for (i, &r) in rows.iter().enumerate() {
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cols[j] |= 1 << i;
            }
        }
        let twins = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| rows[w] == rows[v] && cols[w] == cols[v])
                    .fold(0u64, |acc, w| acc | 1 << w)
            })
            .collect();
        Refiner {
            n,
            rows,
            cols,
            twins,
            sig: alloc::vec![0u8; n * (2 * n + 1)],
            order: (0..n).collect(),
        }
    }

    fn initial_colors(&mut self) -> Vec<usize> {
        let n = self.n;
        let level = level_from_rows(n, self.rows, &self.cols);
        let keys: Vec<(usize, u32, u32, u32)> = (0..n)
            .map(|v| {
                let siblings = self.cols.iter().filter(|&&c| c == self.cols[v]).count() as u32;
                (level[v], self.cols[v].count_ones(), self.rows[v].count_ones(), siblings)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| keys[v]);
        let mut color = alloc::vec![0usize; n];
        for (pos, &v) in order.iter().enumerate() {
            color[v] = if pos > 0 && keys[order[pos - 1]] == keys[v] {
                color[order[pos - 1]]
            } else {
                pos
            };
        }
        color
    }

    /// Splits cells by neighbor counts into every cell until stable.
    fn refine(&mut self, color: &mut [usize]) {
        let n = self.n;
        let width = 2 * n + 1;
        let mut cells = count_cells(color);
        loop {
            if cells == n {
                return;
            }
            self.sig.fill(0);
            for v in 0..n {
                let s = &mut self.sig[v * width..(v + 1) * width];
                s[0] = color[v] as u8;
                let mut out = self.rows[v];
                while out != 0 {
                    let w = out.trailing_zeros() as usize;
                    out &= out - 1;
                    s[1 + color[w]] += 1;
                }
                let mut inn = self.cols[v];
                while inn != 0 {
                    let w = inn.trailing_zeros() as usize;
                    inn &= inn - 1;
                    s[1 + n + color[w]] += 1;
                }
            }
            let sig = &self.sig;
            let key = |v: usize| &sig[v * width..(v + 1) * width];
            self.order.sort_unstable_by(|&a, &b| key(a).cmp(key(b)));
            let mut first = 0;
            for pos in 0..n {
                let v = self.order[pos];
                if pos > 0 && key(self.order[pos - 1]) != key(v) {
                    first = pos;
                }
                color[v] = first;
            }
            let now = count_cells(color);
            if now == cells {
                return;
            }
            cells = now;
        }
    }
}

fn count_cells(color: &[usize]) -> usize {
    let mut seen = 0u64;
    for &c in color {
        seen |= 1 << c;
    }
    seen.count_ones() as usize
}

fn level_from_rows(n: usize, rows: &[u64], cols: &[u64]) -> Vec<usize> {
    let mut level = alloc::vec![0usize; n];
    let mut indeg: Vec<u32> = cols.iter().map(|c| c.count_ones()).collect();
    let mut ready: u64 = (0..n).filter(|&v| indeg[v] == 0).fold(0, |acc, v| acc | 1 << v);
    while ready != 0 {
        let v = ready.trailing_zeros() as usize;
        ready &= ready - 1;
        let mut out = rows[v];
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
    level
}

struct Search<'a> {
    refiner: Refiner<'a>,
    best_rows: Option<Vec<u64>>,
    best_perm: Vec<usize>,
    leaf: Vec<u64>,
}

impl Search<'_> {
    fn run(&mut self, mut color: Vec<usize>) {
        self.refiner.refine(&mut color);
        let n = self.refiner.n;
        // first non-singleton cell
        let mut size = alloc::vec![0u8; n];
        for &c in &color {
            size[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            self.visit_leaf(&color);
            return;
        };
        let mut tried = 0u64;
        for v in 0..n {
            if color[v] != target || (self.refiner.twins[v] & tried) != 0 {
                continue;
            }
            tried |= 1 << v;
            let mut next = color.clone();
            for (w, c) in next.iter_mut().enumerate() {
                if *c == target && w != v {
                    *c = target + 1;
                }
            }
            self.run(next);
        }
    }

    fn visit_leaf(&mut self, color: &[usize]) {
        let n = self.refiner.n;
        let rows = self.refiner.rows;
        for (v, &r) in rows.iter().enumerate() {
            let mut bits = r;
            let mut out = 0u64;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out |= 1 << color[w];
            }
            self.leaf[color[v]] = out;
        }
        let better = match &self.best_rows {
            None => true,
            Some(best) => self
                .leaf
                .iter()
                .map(|r| r.reverse_bits())
                .lt(best.iter().map(|r| r.reverse_bits())),
        };
        if better {
            self.best_rows = Some(self.leaf.clone());
            self.best_perm.clear();
            self.best_perm.extend_from_slice(&color[..n]);
        }
    }
}

/// Canonical rows and the labeling `v ↦ position` that produces them.
fn canonical_rows(n: usize, rows: &[u64]) -> (Vec<u64>, Vec<usize>) {
    let mut refiner = Refiner::new(n, rows);
    let color = refiner.initial_colors();
    let mut search = Search {
        refiner,
        best_rows: None,
        best_perm: Vec::with_capacity(n),
        leaf: alloc::vec![0; n],
    };
    search.run(color);
    (
        search.best_rows.expect("search visits at least one leaf"),
        search.best_perm,
    )
}

/// Canonical form under relabeling. Isomorphic digraphs, and only those, get
/// the same matrix.
pub fn iso_canon(a: &BottMatrix) -> IsoCanonForm {
    let (rows, perm) = canonical_rows(a.n(), a.rows());
    let matrix = BottMatrix::from_rows_unchecked(a.n(), rows);
    debug_assert!(matrix.is_strictly_upper());
    let witness = Permutation::new(perm).expect("discrete partition is a bijection");
    IsoCanonForm { matrix, witness }
}

/// Packed key of the iso-canonical form; requires `n ≤ 16`.
pub(crate) fn iso_key(n: usize, rows: &[u64]) -> u128 {
    let (canon, _) = canonical_rows(n, rows);
    pack_upper(n, &canon)
}

#[inline]
fn pack_upper(n: usize, rows: &[u64]) -> u128 {
    let mut key = 0u128;
    for (i, &r) in rows.iter().enumerate() {
        let width = n - i - 1;
        let bits = (r >> (i + 1)) as u128;
        // reverse the row segment so column i+1 is most significant
        let mut seg = 0u128;
        for b in 0..width {
            seg = (seg << 1) | ((bits >> b) & 1);
        }
        key = (key << width) | seg;
    }
    key
}

/// Iso-canonical key of a matrix. Exposed for classification drivers.
pub fn iso_canon_key(a: &BottMatrix) -> Result<u128, BottError> {
    check_canon_size(a.n())?;
    Ok(iso_key(a.n(), a.rows()))
}

fn check_canon_size(n: usize) -> Result<(), BottError> {
    if n > MAX_CANON_N {
        Err(BottError::TooLarge { n, max: MAX_CANON_N })
    } else {
        Ok(())
    }
}

/// Matrices one local complementation or one slide away from `rows`,
/// skipping operations that act trivially.
pub fn neighbors(n: usize, rows: &[u64], mut visit: impl FnMut(&[u64])) {
    let mut cols = alloc::vec![0u64; n];
    for (i, &r) in rows.iter().enumerate() {
        let mut bits = r;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            cols[j] |= 1 << i;
        }
    }
    let mut work = rows.to_vec();
    for k in 0..n {
        let rk = rows[k];
        if rk == 0 || cols[k] == 0 {
            continue;
        }
        let mut inn = cols[k];
        while inn != 0 {
            let i = inn.trailing_zeros() as usize;
            inn &= inn - 1;
            work[i] ^= rk;
        }
        visit(&work);
        work.copy_from_slice(rows);
    }
    for l in 0..n {
        if rows[l] == 0 {
            continue;
        }
        for m in 0..n {
            if m != l && cols[m] == cols[l] {
                work[m] ^= rows[l];
                visit(&work);
                work[m] = rows[m];
            }
        }
    }
}

/// The Bott class of a matrix as a set of iso-canonical forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    n: usize,
    keys: Vec<u128>,
}

impl Orbit {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Packed keys of the members, ascending.
    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub fn contains_key(&self, key: u128) -> bool {
        self.keys.binary_search(&key).is_ok()
    }

    /// Members in ascending order; the first is the class representative.
    pub fn members(&self) -> impl Iterator<Item = BottMatrix> + '_ {
        self.keys
            .iter()
            .map(move |&k| BottMatrix::from_upper_key(self.n, k).expect("keys fit n"))
    }

    pub fn representative(&self) -> BottMatrix {
        BottMatrix::from_upper_key(self.n, self.keys[0]).expect("keys fit n")
    }
}

/// Breadth-first closure of the iso-canonical form of `a` under local
/// complementation and slides.
pub fn bott_orbit(a: &BottMatrix, budget: OrbitBudget) -> Result<Orbit, BottError> {
    let n = a.n();
    check_canon_size(n)?;
    let start = iso_key(n, a.rows());
    let mut seen: HashSet<u128> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    let mut overflow = false;
    while let Some(key) = queue.pop_front() {
        let form = BottMatrix::from_upper_key(n, key)?;
        neighbors(n, form.rows(), |next| {
            if overflow {
                return;
            }
            let k = iso_key(n, next);
            if seen.insert(k) {
                if seen.len() > budget.cap {
                    overflow = true;
                }
                queue.push_back(k);
            }
        });
        if overflow {
            return Err(BottError::OrbitBudgetExceeded { cap: budget.cap });
        }
    }
    let mut keys: Vec<u128> = seen.into_iter().collect();
    keys.sort_unstable();
    Ok(Orbit { n, keys })
}

/// Class representative: the smallest iso-canonical form reachable from `a`.
pub fn bott_canon(a: &BottMatrix, budget: OrbitBudget) -> Result<BottClassRep, BottError> {
    let orbit = bott_orbit(a, budget)?;
    Ok(BottClassRep {
        canonical: orbit.representative(),
        orbit_size: orbit.len(),
    })
}

/// Whether `a` and `b` are Bott equivalent.
pub fn bott_equivalent(a: &BottMatrix, b: &BottMatrix, budget: OrbitBudget) -> Result<bool, BottError> {
    if a.n() != b.n() {
        return Err(BottError::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    check_canon_size(a.n())?;
    let kb = iso_key(b.n(), b.rows());
    if iso_key(a.n(), a.rows()) == kb {
        return Ok(true);
    }
    // Level type and rank are class invariants; cheap rejection first.
    let (mut la, mut lb) = (level_of(a), level_of(b));
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb || crate::invariants::rank(a) != crate::invariants::rank(b) {
        return Ok(false);
    }
    Ok(bott_orbit(a, budget)?.contains_key(kb))
}
