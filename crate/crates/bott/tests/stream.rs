use bott::classify::{classify_all, classify_stream, ClassifyOptions};
use bott::format::{encode_digraph6, parse_digraph6};
use bott_core::{BottMatrix, OrbitBudget, Permutation};
use std::collections::BTreeSet;

fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if k <= 1 {
            out.push(Permutation::new(p.clone()).unwrap());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            if k.is_multiple_of(2) {
                p.swap(i, k - 1)
            } else {
                p.swap(0, k - 1)
            }
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// One digraph per isomorphism class of acyclic digraphs on `n` vertices,
/// found by minimizing over every relabeling.
fn non_isomorphic_dags(n: usize) -> Vec<BottMatrix> {
    let perms = permutations(n);
    let len = n * (n - 1) / 2;
    let mut reps = BTreeSet::new();
    for key in 0u128..(1 << len) {
        let a = BottMatrix::from_upper_key(n, key).unwrap();
        reps.insert(perms.iter().map(|p| a.relabel(p).unwrap()).min().unwrap());
    }
    reps.into_iter().collect()
}

#[test]
fn stream_agrees_with_exhaustive_scan() {
    let expected = [1, 2, 6, 31, 302];
    for n in 1..=5 {
        let dags = non_isomorphic_dags(n);
        assert_eq!(dags.len(), expected[n - 1]);
        let lines: Vec<String> = dags.iter().map(encode_digraph6).collect();
        let parsed: Vec<BottMatrix> = lines.iter().map(|l| parse_digraph6(l).unwrap()).collect();
        let s = classify_stream(parsed, OrbitBudget::default()).unwrap();
        let full = classify_all(n, ClassifyOptions::default()).unwrap();
        assert_eq!((s.d, s.o, s.s), (full.d, full.o, full.s), "n={n}");
        let canon: Vec<_> = s.records.iter().map(|r| &r.canonical).collect();
        let full_canon: Vec<_> = full.records.iter().map(|r| &r.canonical).collect();
        assert_eq!(canon, full_canon);
        assert_eq!(s.records.iter().map(|r| r.member_count).sum::<u64>(), dags.len() as u64);
    }
}

#[test]
fn result_independent_of_worker_count() {
    let one = classify_all(
        5,
        ClassifyOptions {
            workers: 1,
            ..ClassifyOptions::default()
        },
    )
    .unwrap();
    for workers in [2, 3, 7, 64] {
        assert_eq!(
            classify_all(
                5,
                ClassifyOptions {
                    workers,
                    ..ClassifyOptions::default()
                }
            )
            .unwrap(),
            one
        );
    }
    let json = bott::report::summary_json(&one).unwrap();
    assert_eq!(
        bott::report::summary_json(&classify_all(5, ClassifyOptions::default()).unwrap()).unwrap(),
        json
    );
}
