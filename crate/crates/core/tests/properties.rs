//! Property tests over random posets and the V-poset bijection.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use openpart::counting::{binomial, np_double_sum};
use openpart::{
    build_vposet, count_open_partitions, decode, encode, enumerate_open_partitions,
    enumerate_set_partitions, enumerate_triples, is_open, Partition, Poset,
    DEFAULT_BRUTE_FORCE_CAP,
};
use proptest::prelude::*;

/// A DAG on `n` vertices: edges go from lower to higher index, then the
/// labels are shuffled.
fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(prop::bool::weighted(0.3), pairs),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, perm)| {
            let mut edges = Vec::new();
            let mut bit = bits.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if bit.next().unwrap() {
                        edges.push((perm[i], perm[j]));
                    }
                }
            }
            Poset::new(n, &edges).unwrap()
        })
}

fn arb_poset_and_set(max_n: usize) -> impl Strategy<Value = (Poset, Vec<usize>)> {
    arb_poset(max_n)
        .prop_flat_map(|p| {
            let n = p.len();
            (Just(p), proptest::collection::btree_set(0..n, 0..=n))
        })
        .prop_map(|(p, s)| (p, s.into_iter().collect()))
}

/// Openness read literally: the upset of each block equals the union of the
/// blocks it meets.
fn open_by_union(p: &Poset, pi: &Partition) -> bool {
    pi.blocks().iter().all(|b| {
        let up: BTreeSet<usize> = p.upset(b).unwrap().into_iter().collect();
        let union: BTreeSet<usize> = pi
            .blocks()
            .iter()
            .filter(|c| c.iter().any(|v| up.contains(v)))
            .flatten()
            .copied()
            .collect();
        up == union
    })
}

proptest! {
    #[test]
    fn upset_is_extensive_and_idempotent((p, s) in arb_poset_and_set(9)) {
        let up = p.upset(&s).unwrap();
        prop_assert!(s.iter().all(|v| up.contains(v)));
        prop_assert_eq!(p.upset(&up).unwrap(), up);
    }

    #[test]
    fn reach_is_the_closure_of_covers(p in arb_poset(8)) {
        // Warshall closure of the cover relation
        let n = p.len();
        let mut r = vec![vec![false; n]; n];
        for (v, row) in r.iter_mut().enumerate() {
            row[v] = true;
        }
        for &(a, b) in p.covers() {
            r[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        for (x, row) in r.iter().enumerate() {
            for (y, &want) in row.iter().enumerate() {
                prop_assert_eq!(p.le(x, y), want);
            }
        }
    }

    #[test]
    fn openness_matches_union_criterion(p in arb_poset(6)) {
        for pi in enumerate_set_partitions(p.len(), DEFAULT_BRUTE_FORCE_CAP).unwrap() {
            prop_assert_eq!(is_open(&p, &pi).unwrap(), open_by_union(&p, &pi));
        }
    }

    #[test]
    fn trivial_partitions_are_always_open(p in arb_poset(10)) {
        prop_assert!(is_open(&p, &Partition::singletons(p.len())).unwrap());
        prop_assert!(is_open(&p, &Partition::one_block(p.len())).unwrap());
    }

    #[test]
    fn openness_survives_relabeling(
        (p, perm) in arb_poset(7).prop_flat_map(|p| {
            let n = p.len();
            (Just(p), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let q = p.relabel(&perm).unwrap();
        let image: BTreeSet<Partition> = enumerate_open_partitions(&p, 12)
            .unwrap()
            .map(|pi| pi.relabel(&perm))
            .collect();
        let direct: BTreeSet<Partition> = enumerate_open_partitions(&q, 12).unwrap().collect();
        prop_assert_eq!(image, direct);
    }

    #[test]
    fn open_enumeration_is_ordered_and_counted(p in arb_poset(7)) {
        let all: Vec<_> = enumerate_open_partitions(&p, 12).unwrap().collect();
        let again: Vec<_> = enumerate_open_partitions(&p, 12).unwrap().collect();
        prop_assert_eq!(&all, &again);
        let distinct: BTreeSet<_> = all.iter().collect();
        prop_assert_eq!(distinct.len(), all.len());
        prop_assert_eq!(BigUint::from(all.len()), count_open_partitions(&p, 12).unwrap());
    }
}

#[test]
fn v_swap_preserves_openness() {
    for n in 1..=4 {
        let v = build_vposet(n, n).unwrap();
        let swap = v.swap_map().unwrap();
        let open: BTreeSet<_> = enumerate_open_partitions(v.poset(), 12).unwrap().collect();
        for pi in &open {
            assert!(open.contains(&pi.relabel(&swap)));
        }
    }
}

#[test]
fn triples_decode_onto_open_partitions() {
    for m in 1..=4 {
        for n in 1..=4 {
            let v = build_vposet(m, n).unwrap();
            let decoded: Vec<_> = enumerate_triples(&v)
                .map(|tr| decode(&v, &tr).unwrap())
                .collect();
            let as_set: BTreeSet<_> = decoded.iter().cloned().collect();
            assert_eq!(as_set.len(), decoded.len(), "duplicates at ({m}, {n})");
            let brute: BTreeSet<_> = enumerate_open_partitions(v.poset(), 12).unwrap().collect();
            assert_eq!(as_set, brute, "({m}, {n})");
            assert_eq!(
                BigUint::from(decoded.len()),
                np_double_sum(m as u64, n as u64)
            );
        }
    }
}

#[test]
fn encode_inverts_decode() {
    for m in 1..=6 {
        for n in 1..=6 {
            let v = build_vposet(m, n).unwrap();
            for tr in enumerate_triples(&v) {
                let pi = decode(&v, &tr).unwrap();
                assert_eq!(encode(&v, &pi).unwrap(), tr);
            }
        }
    }
}

#[test]
fn triples_by_join_level() {
    // triples with join level exactly t: left and right partitions with at
    // least t blocks each
    for m in 1..=7u64 {
        for n in 1..=7u64 {
            let v = build_vposet(m as usize, n as usize).unwrap();
            let mut per_level: BTreeMap<usize, u64> = BTreeMap::new();
            for tr in enumerate_triples(&v) {
                *per_level.entry(tr.t).or_default() += 1;
            }
            for t in 1..=m.min(n) {
                let left: BigUint = (t..=m).map(|k| binomial(m - 1, k as i64 - 1)).sum();
                let right: BigUint = (t..=n).map(|j| binomial(n - 1, j as i64 - 1)).sum();
                assert_eq!(
                    BigUint::from(per_level[&(t as usize)]),
                    left * right,
                    "m={m} n={n} t={t}"
                );
            }
            assert_eq!(per_level.len() as u64, m.min(n));
        }
    }
}

#[test]
fn triple_streams_scale_past_the_brute_force_cap() {
    let v = build_vposet(10, 10).unwrap();
    let count = enumerate_triples(&v).count();
    assert_eq!(BigUint::from(count), np_double_sum(10, 10));
}
