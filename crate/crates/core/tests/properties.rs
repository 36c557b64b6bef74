use bott_core::cohomology::{CohomElement, CohomRing};
use bott_core::invariants::{betti, fingerprint, rank};
use bott_core::{bott_canon, iso_canon, BottMatrix, OrbitBudget, Permutation};
use proptest::prelude::*;

/// A random Bott matrix: random strictly upper bits under a random labeling.
fn bott_matrix(max_n: usize) -> impl Strategy<Value = BottMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        let len = n * (n - 1) / 2;
        (any::<u128>(), Just((0..n).collect::<Vec<usize>>()).prop_shuffle()).prop_map(move |(bits, perm)| {
            let key = if len == 0 { 0 } else { bits & ((1u128 << len) - 1) };
            let a = BottMatrix::from_upper_key(n, key).unwrap();
            a.relabel(&Permutation::new(perm).unwrap()).unwrap()
        })
    })
}

#[derive(Clone, Debug)]
enum Op {
    Relabel(Vec<usize>),
    Complement(usize),
    Slide(usize, usize),
}

/// Applies an operation, wrapping vertex choices into range and skipping
/// slides whose precondition fails.
fn apply(a: &BottMatrix, op: &Op) -> BottMatrix {
    let n = a.n();
    match op {
        Op::Relabel(seed) => {
            let mut map: Vec<usize> = (0..n).collect();
            for (i, s) in seed.iter().enumerate().take(n) {
                map.swap(i, s % n);
            }
            a.relabel(&Permutation::new(map).unwrap()).unwrap()
        }
        Op::Complement(k) => a.local_complement(k % n).unwrap(),
        Op::Slide(l, m) => a.slide(l % n, m % n).unwrap_or_else(|_| a.clone()),
    }
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        prop::collection::vec(0usize..64, 8).prop_map(Op::Relabel),
        (0usize..64).prop_map(Op::Complement),
        (0usize..64, 0usize..64).prop_map(|(l, m)| Op::Slide(l, m)),
    ]
}

/// Slides with a satisfied precondition, found by scanning for siblings.
fn valid_slides(a: &BottMatrix) -> Vec<(usize, usize)> {
    let cols = a.columns();
    let n = a.n();
    (0..n)
        .flat_map(|l| (0..n).map(move |m| (l, m)))
        .filter(|&(l, m)| l != m && cols[l] == cols[m])
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn operations_are_involutions(a in bott_matrix(8)) {
        for k in 0..a.n() {
            let b = a.local_complement(k).unwrap();
            prop_assert_eq!(b.local_complement(k).unwrap(), a.clone());
        }
        for (l, m) in valid_slides(&a) {
            let b = a.slide(l, m).unwrap();
            prop_assert_eq!(b.column(l), b.column(m));
            prop_assert_eq!(b.slide(l, m).unwrap(), a.clone());
        }
    }

    #[test]
    fn operations_preserve_bott(a in bott_matrix(8), ops in prop::collection::vec(op(), 1..12)) {
        let mut cur = a;
        for o in &ops {
            cur = apply(&cur, o);
            prop_assert!(bott_core::is_bott(cur.n(), cur.rows()).unwrap());
        }
    }

    #[test]
    fn operations_commute_with_relabeling(a in bott_matrix(8), perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
        let n = a.n();
        let mut map: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        map.truncate(n);
        let p = Permutation::new(map).unwrap();
        for k in 0..n {
            prop_assert_eq!(
                a.local_complement(k).unwrap().relabel(&p).unwrap(),
                a.relabel(&p).unwrap().local_complement(p.apply(k)).unwrap()
            );
        }
        for (l, m) in valid_slides(&a) {
            prop_assert_eq!(
                a.slide(l, m).unwrap().relabel(&p).unwrap(),
                a.relabel(&p).unwrap().slide(p.apply(l), p.apply(m)).unwrap()
            );
        }
    }

    #[test]
    fn iso_canon_ignores_labels(a in bott_matrix(7), perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let n = a.n();
        let map: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        let b = a.relabel(&Permutation::new(map).unwrap()).unwrap();
        let ca = iso_canon(&a);
        prop_assert!(ca.matrix.is_strictly_upper());
        prop_assert_eq!(a.relabel(&ca.witness).unwrap(), ca.matrix.clone());
        prop_assert_eq!(iso_canon(&b).matrix, ca.matrix);
    }

    #[test]
    fn bott_canon_is_class_invariant(a in bott_matrix(6), o in op()) {
        let b = apply(&a, &o);
        let budget = OrbitBudget::default();
        prop_assert_eq!(bott_canon(&a, budget).unwrap(), bott_canon(&b, budget).unwrap());
    }

    #[test]
    fn fingerprint_is_class_invariant(a in bott_matrix(6), ops in prop::collection::vec(op(), 1..10)) {
        let before = fingerprint(&a).unwrap();
        let mut cur = a;
        for o in &ops {
            cur = apply(&cur, o);
        }
        prop_assert_eq!(fingerprint(&cur).unwrap(), before);
    }

    #[test]
    fn betti_bounds(a in bott_matrix(10)) {
        let b = betti(&a).unwrap();
        let r = rank(&a);
        prop_assert_eq!(b.iter().sum::<u64>(), 1u64 << (a.n() - r));
        let zero_cols = a.columns().iter().filter(|&&c| c == 0).count() as u64;
        prop_assert_eq!(b[1], zero_cols);
        prop_assert!(b[1] <= (a.n() - r) as u64);
        prop_assert_eq!(b[0], 1);
    }

    #[test]
    fn fingerprint_consistency(a in bott_matrix(7)) {
        let f = fingerprint(&a).unwrap();
        prop_assert_eq!(f.orientable, f.odd_height == bott_core::invariants::OddHeight::Infinite);
        prop_assert!(!f.symplectic || f.orientable);
        prop_assert_eq!(f.type_vector.iter().sum::<usize>(), a.n());
    }

    #[test]
    fn ring_multiplication_laws(key in any::<u16>(), n in 1usize..=5, u in any::<u32>(), v in any::<u32>(), w in any::<u32>()) {
        let len = n * (n - 1) / 2;
        let a = BottMatrix::from_upper_key(n, (key as u128) & ((1u128 << len) - 1)).unwrap();
        let ring = CohomRing::new(a).unwrap();
        let mask = (1u64 << n) - 1;
        let lin = |x: u32| CohomElement::linear(x as u64 & mask);
        // a degree-2 element from two linear ones
        let p = ring.multiply(&lin(u), &lin(v));
        let q = lin(w);
        prop_assert_eq!(ring.multiply(&p, &q), ring.multiply(&q, &p));
        prop_assert_eq!(ring.multiply(&ring.multiply(&lin(u), &lin(v)), &q), ring.multiply(&lin(u), &ring.multiply(&lin(v), &q)));
        prop_assert_eq!(ring.multiply(&p, &q).degree(), 3);
        for t in ring.multiply(&p, &q).terms() {
            prop_assert_eq!(t.count_ones(), 3);
        }
    }
}

#[test]
fn equivariance_exhaustive_small() {
    for n in 1..=4usize {
        let len = n * (n - 1) / 2;
        let perms = all_perms(n);
        for key in 0u128..(1 << len) {
            let a = BottMatrix::from_upper_key(n, key).unwrap();
            for p in &perms {
                let b = a.relabel(p).unwrap();
                assert_eq!(iso_canon(&b).matrix, iso_canon(&a).matrix);
                for k in 0..n {
                    assert_eq!(
                        a.local_complement(k).unwrap().relabel(p).unwrap(),
                        b.local_complement(p.apply(k)).unwrap()
                    );
                    assert_eq!(a.local_complement(k).unwrap().local_complement(k).unwrap(), a);
                }
                for (l, m) in valid_slides(&a) {
                    assert_eq!(
                        a.slide(l, m).unwrap().relabel(p).unwrap(),
                        b.slide(p.apply(l), p.apply(m)).unwrap()
                    );
                    assert_eq!(a.slide(l, m).unwrap().slide(l, m).unwrap(), a);
                }
            }
        }
    }
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}
