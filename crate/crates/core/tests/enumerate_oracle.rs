mod common;

use common::*;
use num_bigint::BigUint;
use skewperm::{count_avoiders, count_by_blocks, Enumerator, PatternSet, Permutation};

fn set(s: &str) -> PatternSet {
    PatternSet::parse(s).unwrap()
}

fn single_patterns(max_len: usize) -> Vec<Permutation> {
    (1..=max_len).flat_map(Permutation::all_of_length).collect()
}

#[test]
fn frozen_oracle_values() {
    // from the brute-force filter: Av_n(132) by blocks for n = 1..6
    let expected: [&[u64]; 6] = [&[1], &[1, 1], &[2, 2, 1], &[5, 5, 3, 1], &[14, 14, 9, 4, 1], &[42, 42, 28, 14, 5, 1]];
    let t = count_by_blocks(6, &set("132")).unwrap();
    for (n, row) in expected.iter().enumerate() {
        let got: Vec<u64> = t.row(n + 1).iter().map(to_u64).collect();
        assert_eq!(&got[..], *row, "n = {}", n + 1);
    }
    let e = |q: &str| Enumerator::new(set(q));
    let counts = |q: &str| (1..=7).map(|n| to_u64(&e(q).count(n).unwrap())).collect::<Vec<_>>();
    assert_eq!(counts("1342"), [1, 2, 6, 23, 103, 512, 2740]);
    assert_eq!(counts("1234"), [1, 2, 6, 23, 103, 513, 2761]);
    assert_eq!(counts("1324"), [1, 2, 6, 23, 103, 513, 2762]);
}

#[test]
fn pruned_search_lists_exactly_the_naive_avoiders() {
    for q in single_patterns(4) {
        let e = Enumerator::new(PatternSet::single(q.clone()).unwrap());
        for n in 0..=6 {
            let got: Vec<Vec<u32>> = e.avoiders(n).unwrap().map(|p| p.values().to_vec()).collect();
            let want = naive_avoiders(n, &[q.values().to_vec()]);
            assert_eq!(got, want, "q = {q}, n = {n}");
            assert_eq!(e.count(n).unwrap(), BigUint::from(want.len()), "q = {q}, n = {n}");
        }
    }
}

#[test]
fn multi_pattern_sets_match_naive_filter() {
    for text in ["123,132", "123,321", "2413,3142", "132,4321"] {
        let s = set(text);
        let pats: Vec<Vec<u32>> = s.patterns().iter().map(|q| q.values().to_vec()).collect();
        let e = Enumerator::new(s.clone());
        for n in 0..=7 {
            assert_eq!(e.count(n).unwrap(), BigUint::from(naive_avoiders(n, &pats).len()), "{text} n={n}");
        }
    }
}

#[test]
fn block_counts_match_decomposition() {
    for q in ["132", "2413", "1324", "321"] {
        let s = set(q);
        let t = count_by_blocks(7, &s).unwrap();
        for n in 1..=7 {
            let mut row = vec![0u64; n];
            for p in naive_avoiders(n, &[perm(q).values().to_vec()]) {
                row[naive_block_count(&p) - 1] += 1;
            }
            let got: Vec<u64> = t.row(n).iter().map(to_u64).collect();
            assert_eq!(got, row, "q = {q}, n = {n}");
            assert_eq!(t.row(n).iter().sum::<BigUint>(), *t.total(n));
        }
        assert_eq!(*t.total(0), BigUint::from(1u32));
    }
}

#[test]
fn reverse_and_complement_preserve_counts() {
    for q in single_patterns(4) {
        let r = Enumerator::new(PatternSet::single(q.reverse()).unwrap());
        let c = Enumerator::new(PatternSet::single(q.complement()).unwrap());
        let e = Enumerator::new(PatternSet::single(q.clone()).unwrap());
        for n in 1..=8 {
            let a = e.count(n).unwrap();
            assert_eq!(a, r.count(n).unwrap(), "{q} n={n}");
            assert_eq!(a, c.count(n).unwrap(), "{q} n={n}");
        }
    }
}

#[test]
fn one_thread_and_many_threads_agree() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    for q in ["132", "1324", "123,132"] {
        let a = one.install(|| count_by_blocks(9, &set(q)).unwrap());
        let b = many.install(|| count_by_blocks(9, &set(q)).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.to_csv(true), b.to_csv(true));
    }
}

#[test]
fn counterexample_class_counts() {
    let s = set("123,132");
    for n in 1..=10 {
        assert_eq!(count_avoiders(n, &s).unwrap(), BigUint::from(1u64 << (n - 1)));
    }
}

#[test]
fn table_formats_round_trip() {
    for q in ["132", "123,132", "2413"] {
        let t = count_by_blocks(7, &set(q)).unwrap();
        assert_eq!(skewperm::CountTable::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(skewperm::CountTable::from_csv(&t.to_csv(true), set(q)).unwrap(), t);
    }
}
