//! Exhaustive classification of Bott matrices up to Bott equivalence.

use std::collections::{BTreeMap, HashMap};
use std::thread;

use bott_core::canon::iso_canon_key;
use bott_core::invariants::{orientable, symplectic};
use bott_core::{bott_canon, bott_orbit, iso_canon, BottError, BottMatrix, OrbitBudget};

/// Largest size accepted by [`classify_all`].
pub const MAX_CLASSIFY_N: usize = 8;

/// Largest size classified without the long-run flag.
pub const MAX_SHORT_RUN_N: usize = 6;

/// Entries kept in each worker's iso-form cache before it is cleared.
const CACHE_LIMIT: usize = 1 << 22;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("n = {n} is outside 1..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("n = {n} needs the long-run flag")]
    LongRunRequired { n: usize },
    #[error(transparent)]
    Bott(#[from] BottError),
}

impl ClassifyError {
    pub fn is_budget(&self) -> bool {
        matches!(self, ClassifyError::Bott(e) if e.is_budget())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub canonical: BottMatrix,
    pub member_count: u64,
    pub orientable: bool,
    pub symplectic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationSummary {
    pub n: usize,
    /// Number of classes.
    pub d: usize,
    /// Number of orientable classes.
    pub o: usize,
    /// Number of symplectic classes.
    pub s: usize,
    /// One record per class, sorted by canonical matrix.
    pub records: Vec<ClassRecord>,
}

impl ClassificationSummary {
    fn from_counts(n: usize, counts: BTreeMap<BottMatrix, u64>) -> Self {
        let records: Vec<ClassRecord> = counts
            .into_iter()
            .map(|(canonical, member_count)| ClassRecord {
                orientable: orientable(&canonical),
                symplectic: symplectic(&canonical),
                canonical,
                member_count,
            })
            .collect();
        ClassificationSummary {
            n,
            d: records.len(),
            o: records.iter().filter(|r| r.orientable).count(),
            s: records.iter().filter(|r| r.symplectic).count(),
            records,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub workers: usize,
    pub long_run: bool,
    pub budget: OrbitBudget,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            workers: thread::available_parallelism().map_or(1, |w| w.get()),
            long_run: false,
            budget: OrbitBudget::default(),
        }
    }
}

/// Maps iso-canonical keys to the key of their class representative. Each
/// miss runs one orbit search and records every iso-class it visits.
struct ClassCache {
    n: usize,
    budget: OrbitBudget,
    class_of: HashMap<u128, u128>,
}

impl ClassCache {
    fn new(n: usize, budget: OrbitBudget) -> Self {
        ClassCache {
            n,
            budget,
            class_of: HashMap::new(),
        }
    }

    fn class_key(&mut self, a: &BottMatrix) -> Result<u128, BottError> {
        let key = iso_canon_key(a)?;
        if let Some(&c) = self.class_of.get(&key) {
            return Ok(c);
        }
        let orbit = bott_orbit(a, self.budget)?;
        let rep = orbit.keys()[0];
        debug_assert_eq!(orbit.n(), self.n);
        if self.class_of.len() + orbit.len() > CACHE_LIMIT {
            self.class_of.clear();
        }
        for &k in orbit.keys() {
            self.class_of.insert(k, rep);
        }
        Ok(rep)
    }
}

/// Classifies all `2^{n(n-1)/2}` strictly upper triangular matrices of size
/// `n`. Output does not depend on the number of workers.
pub fn classify_all(n: usize, options: ClassifyOptions) -> Result<ClassificationSummary, ClassifyError> {
    if !(1..=MAX_CLASSIFY_N).contains(&n) {
        return Err(ClassifyError::OutOfRange { n, max: MAX_CLASSIFY_N });
    }
    if n > MAX_SHORT_RUN_N && !options.long_run {
        return Err(ClassifyError::LongRunRequired { n });
    }
    let total: u128 = 1 << (n * (n - 1) / 2);
    let workers = options.workers.max(1).min(total as usize);
    let chunk = total.div_ceil(workers as u128);

    let partials: Vec<Result<HashMap<u128, u64>, BottError>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u128)
            .map(|w| {
                let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(total));
                scope.spawn(move || {
                    let mut cache = ClassCache::new(n, options.budget);
                    let mut counts: HashMap<u128, u64> = HashMap::new();
                    for key in lo..hi {
                        let a = BottMatrix::from_upper_key(n, key)?;
                        *counts.entry(cache.class_key(&a)?).or_default() += 1;
                    }
                    Ok(counts)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("classification worker panicked"))
            .collect()
    });

    let mut merged: BTreeMap<u128, u64> = BTreeMap::new();
    for part in partials {
        for (k, c) in part? {
            *merged.entry(k).or_default() += c;
        }
    }
    let counts = merged
        .into_iter()
        .map(|(k, c)| Ok((BottMatrix::from_upper_key(n, k)?, c)))
        .collect::<Result<BTreeMap<_, _>, BottError>>()?;
    Ok(ClassificationSummary::from_counts(n, counts))
}

/// Classifies an externally supplied list of matrices of one size. Member
/// counts count stream elements.
pub fn classify_stream<I>(source: I, budget: OrbitBudget) -> Result<ClassificationSummary, BottError>
where
    I: IntoIterator<Item = BottMatrix>,
{
    let mut n = None;
    let mut by_iso: HashMap<BottMatrix, BottMatrix> = HashMap::new();
    let mut counts: BTreeMap<BottMatrix, u64> = BTreeMap::new();
    for a in source {
        match n {
            None => n = Some(a.n()),
            Some(m) if m != a.n() => return Err(BottError::SizeMismatch { left: m, right: a.n() }),
            Some(_) => {}
        }
        let iso = iso_canon(&a).matrix;
        let rep = match by_iso.get(&iso) {
            Some(rep) => rep.clone(),
            None => {
                let rep = bott_canon(&a, budget)?.canonical;
                by_iso.insert(iso, rep.clone());
                rep
            }
        };
        *counts.entry(rep).or_default() += 1;
    }
    let n = n.ok_or(BottError::EmptyInput)?;
    Ok(ClassificationSummary::from_counts(n, counts))
}

/// All strictly upper triangular matrices with ones on the superdiagonal, in
/// increasing order.
pub fn delta_family(n: usize) -> Result<Vec<BottMatrix>, BottError> {
    if !(2..=bott_core::MAX_CANON_N).contains(&n) {
        return Err(BottError::InvalidSize(n));
    }
    let free: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 2..n).map(move |j| (i, j))).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for bits in 0u64..1 << free.len() {
        let mut rows: Vec<u64> = (0..n).map(|i| if i + 1 < n { 1 << (i + 1) } else { 0 }).collect();
        for (t, &(i, j)) in free.iter().enumerate() {
            if bits >> (free.len() - 1 - t) & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        out.push(BottMatrix::from_rows(n, &rows)?);
    }
    Ok(out)
}

/// Clears every `(i, i+2)` entry of a member of the delta family using local
/// complementations at `i+1` only.
pub fn delta_normal_form(a: &BottMatrix) -> Result<BottMatrix, BottError> {
    let n = a.n();
    if n < 2 || (0..n - 1).any(|i| !a.get(i, i + 1)) || !a.is_strictly_upper() {
        return Err(BottError::PreconditionViolated("not in the delta family"));
    }
    let mut cur = a.clone();
    for i in 0..n.saturating_sub(2) {
        if cur.get(i, i + 2) {
            cur = cur.local_complement(i + 1)?;
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(workers: usize) -> ClassifyOptions {
        ClassifyOptions {
            workers,
            long_run: false,
            budget: OrbitBudget::default(),
        }
    }

    fn m(rows: &[&str]) -> BottMatrix {
        BottMatrix::from_bit_rows(rows).unwrap()
    }

    #[test]
    fn small_tables() {
        let s = classify_all(1, opts(2)).unwrap();
        assert_eq!((s.d, s.o, s.s), (1, 1, 0));
        let s = classify_all(3, opts(3)).unwrap();
        assert_eq!((s.d, s.o, s.s), (4, 2, 0));
        let mut counts: Vec<u64> = s.records.iter().map(|r| r.member_count).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 1, 2, 4]);
        let s = classify_all(4, opts(4)).unwrap();
        assert_eq!((s.d, s.o, s.s), (12, 3, 2));
        assert_eq!(s.records.iter().map(|r| r.member_count).sum::<u64>(), 64);
    }

    #[test]
    fn range_checks() {
        assert!(matches!(
            classify_all(0, opts(1)),
            Err(ClassifyError::OutOfRange { .. })
        ));
        assert!(matches!(
            classify_all(9, opts(1)),
            Err(ClassifyError::OutOfRange { .. })
        ));
        assert!(matches!(
            classify_all(7, opts(1)),
            Err(ClassifyError::LongRunRequired { n: 7 })
        ));
    }

    #[test]
    fn stream_examples() {
        assert!(matches!(
            classify_stream(Vec::new(), OrbitBudget::default()),
            Err(BottError::EmptyInput)
        ));
        let s = classify_stream([BottMatrix::zero(3).unwrap()], OrbitBudget::default()).unwrap();
        assert_eq!((s.d, s.o), (1, 1));
        let mixed = [BottMatrix::zero(2).unwrap(), BottMatrix::zero(3).unwrap()];
        assert!(matches!(
            classify_stream(mixed, OrbitBudget::default()),
            Err(BottError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_family(2).unwrap(), vec![m(&["01", "00"])]);
        assert_eq!(
            delta_family(3).unwrap(),
            vec![m(&["010", "001", "000"]), m(&["011", "001", "000"])]
        );
        assert_eq!(delta_family(4).unwrap().len(), 8);
        assert!(delta_family(1).is_err());
        let a = m(&["011", "001", "000"]);
        assert_eq!(delta_normal_form(&a).unwrap(), m(&["010", "001", "000"]));
        assert!(delta_normal_form(&BottMatrix::zero(3).unwrap()).is_err());
    }
}
