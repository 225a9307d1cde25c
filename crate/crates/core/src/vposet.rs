//! V-posets: two chains sharing a minimal root.
//!
//! Vertex `0` is the root. The left chain continues with `1..m`, the right
//! chain with `m..m+n-1`, both ascending. `m` and `n` count the root.
//!
//! Open partitions of a V-poset are in bijection with [`VTriple`]s: an
//! interval partition of each chain (written as block sizes, bottom-up) and a
//! join level `t`, the number of bottom block pairs merged across the chains.
//! The bottom pair always merges since both bottom blocks hold the root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{is_open, Partition, Poset, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPoset {
    m: usize,
    n: usize,
    underlying: Poset,
}

impl VPoset {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyChain { m, n });
        }
        let mut edges = Vec::with_capacity(m + n - 2);
        let left = left_chain(m);
        let right = right_chain(m, n);
        for chain in [&left, &right] {
            edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
        let underlying = Poset::new(m + n - 1, &edges)?;
        Ok(VPoset { m, n, underlying })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &Poset {
        &self.underlying
    }

    pub fn n_vertices(&self) -> usize {
        self.underlying.len()
    }

    /// Left chain vertices bottom-up, root included.
    pub fn left_chain(&self) -> Vec<VertexId> {
        left_chain(self.m)
    }

    /// Right chain vertices bottom-up, root included.
    pub fn right_chain(&self) -> Vec<VertexId> {
        right_chain(self.m, self.n)
    }

    /// The automorphism exchanging the two chains. Only defined for `m == n`.
    pub fn swap_map(&self) -> Option<Vec<VertexId>> {
        if self.m != self.n {
            return None;
        }
        let mut map = vec![0; self.n_vertices()];
        for (&l, &r) in self.left_chain().iter().zip(&self.right_chain()) {
            map[l] = r;
            map[r] = l;
        }
        Some(map)
    }
}

fn left_chain(m: usize) -> Vec<VertexId> {
    (0..m).collect()
}

fn right_chain(m: usize, n: usize) -> Vec<VertexId> {
    std::iter::once(0).chain(m..m + n - 1).collect()
}

pub fn build_vposet(m: usize, n: usize) -> Result<VPoset> {
    VPoset::new(m, n)
}

/// Encoding of an open partition of a V-poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VTriple {
    /// Left chain block sizes, bottom-up.
    pub left: Vec<usize>,
    /// Right chain block sizes, bottom-up.
    pub right: Vec<usize>,
    /// Join level.
    pub t: usize,
}

impl VTriple {
    pub fn validate(&self, v: &VPoset) -> Result<()> {
        check_composition("left", &self.left, v.m)?;
        check_composition("right", &self.right, v.n)?;
        let max_t = self.left.len().min(self.right.len());
        if self.t < 1 || self.t > max_t {
            return Err(Error::InvalidTriple(format!(
                "join level {} outside 1..={max_t}",
                self.t
            )));
        }
        Ok(())
    }
}

fn check_composition(side: &str, sizes: &[usize], total: usize) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::InvalidTriple(format!("{side} sizes are empty")));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidTriple(format!("{side} sizes contain a zero")));
    }
    let sum: usize = sizes.iter().sum();
    if sum != total {
        return Err(Error::InvalidTriple(format!(
            "{side} sizes sum to {sum}, expected {total}"
        )));
    }
    Ok(())
}

fn cut<'a>(chain: &'a [VertexId], sizes: &[usize]) -> Vec<&'a [VertexId]> {
    let mut rest = chain;
    sizes
        .iter()
        .map(|&s| {
            let (head, tail) = rest.split_at(s);
            rest = tail;
            head
        })
        .collect()
}

pub fn decode(v: &VPoset, tr: &VTriple) -> Result<Partition> {
    tr.validate(v)?;
    let left_chain = v.left_chain();
    let right_chain = v.right_chain();
    let left = cut(&left_chain, &tr.left);
    let right = cut(&right_chain, &tr.right);

    let mut blocks: Vec<Vec<VertexId>> = Vec::with_capacity(left.len() + right.len());
    for (i, (l, r)) in left.iter().zip(&right).enumerate().take(tr.t) {
        let mut block = l.to_vec();
        // the root heads both bottom blocks
        let skip = usize::from(i == 0);
        block.extend_from_slice(&r[skip..]);
        blocks.push(block);
    }
    blocks.extend(left[tr.t..].iter().map(|b| b.to_vec()));
    blocks.extend(right[tr.t..].iter().map(|b| b.to_vec()));

    Partition::new(v.n_vertices(), blocks)
}

/// Block sizes of `chain` under the block assignment `owner`, bottom-up,
/// along with the block index of each run.
fn runs(chain: &[VertexId], owner: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut sizes = Vec::new();
    let mut ids = Vec::new();
    for &x in chain {
        if ids.last() == Some(&owner[x]) {
            *sizes.last_mut().unwrap() += 1;
        } else {
            sizes.push(1);
            ids.push(owner[x]);
        }
    }
    (sizes, ids)
}

pub fn encode(v: &VPoset, pi: &Partition) -> Result<VTriple> {
    if !is_open(v.poset(), pi)? {
        return Err(Error::NotOpen);
    }
    let owner = pi.block_of();
    let (left, left_ids) = runs(&v.left_chain(), &owner);
    let (right, right_ids) = runs(&v.right_chain(), &owner);

    let shared = |id: &usize| left_ids.contains(id) && right_ids.contains(id);
    let t = left_ids.iter().filter(|id| shared(id)).count();
    let tr = VTriple { left, right, t };

    match decode(v, &tr) {
        Ok(back) if back == *pi => Ok(tr),
        Ok(back) => Err(Error::NotDecodable(format!("{pi} re-decodes as {back}"))),
        Err(err) => Err(Error::NotDecodable(err.to_string())),
    }
}

/// Compositions of a fixed total in lexicographic order, starting from all
/// ones and ending with the single part.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Compositions {
    pub fn new(total: usize) -> Self {
        let current = (total > 0).then(|| vec![1; total]);
        Compositions { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.take()?;
        if current.len() > 1 {
            let mut succ = current.clone();
            let last = succ.pop().unwrap();
            *succ.last_mut().unwrap() += 1;
            succ.extend(std::iter::repeat_n(1, last - 1));
            self.current = Some(succ);
        }
        Some(current)
    }
}

/// Every [`VTriple`] of a V-poset: left composition, then right composition
/// (both lexicographic), then join level ascending.
#[derive(Debug, Clone)]
pub struct Triples {
    right_total: usize,
    lefts: Compositions,
    rights: Compositions,
    left: Option<Vec<usize>>,
    right: Option<Vec<usize>>,
    t: usize,
}

impl Iterator for Triples {
    type Item = VTriple;

    fn next(&mut self) -> Option<VTriple> {
        loop {
            let left = self.left.as_ref()?;
            if let Some(right) = &self.right {
                if self.t < left.len().min(right.len()) {
                    self.t += 1;
                    return Some(VTriple {
                        left: left.clone(),
                        right: right.clone(),
                        t: self.t,
                    });
                }
            }
            self.t = 0;
            self.right = self.rights.next();
            if self.right.is_none() {
                self.left = self.lefts.next();
                self.rights = Compositions::new(self.right_total);
                self.right = self.rights.next();
            }
        }
    }
}

pub fn enumerate_triples(v: &VPoset) -> Triples {
    let mut lefts = Compositions::new(v.m);
    let left = lefts.next();
    Triples {
        right_total: v.n,
        lefts,
        rights: Compositions::new(v.n),
        left,
        right: None,
        t: 0,
    }
}

/// A left chain partition paired with a right chain partition and a level
/// between 1 and the number of right blocks. Only pairings whose level also
/// fits the left partition describe an open partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub level: usize,
}

impl Pairing {
    pub fn is_legal(&self) -> bool {
        self.level <= self.left.len()
    }

    pub fn to_triple(&self) -> Option<VTriple> {
        self.is_legal().then(|| VTriple {
            left: self.left.clone(),
            right: self.right.clone(),
            t: self.level,
        })
    }
}

/// The cartesian product of left chain partitions with (right chain
/// partition, level) pairs.
pub fn enumerate_pairings(v: &VPoset) -> impl Iterator<Item = Pairing> + '_ {
    Compositions::new(v.m).flat_map(move |left| {
        Compositions::new(v.n).flat_map(move |right| {
            let left = left.clone();
            (1..=right.len()).map(move |level| Pairing {
                left: left.clone(),
                right: right.clone(),
                level,
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(left: &[usize], right: &[usize], t: usize) -> VTriple {
        VTriple {
            left: left.to_vec(),
            right: right.to_vec(),
            t,
        }
    }

    fn partition(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn construction() {
        let v = build_vposet(1, 1).unwrap();
        assert_eq!(v.n_vertices(), 1);
        assert!(v.poset().covers().is_empty());

        let v = build_vposet(3, 3).unwrap();
        assert_eq!(v.poset().covers(), &[(0, 1), (0, 3), (1, 2), (3, 4)]);

        let v = build_vposet(2, 3).unwrap();
        assert_eq!(v.poset().covers(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(v.right_chain(), vec![0, 2, 3]);
    }

    #[test]
    fn degenerate_v_is_a_chain() {
        assert_eq!(build_vposet(1, 4).unwrap().poset(), &Poset::chain(4));
        assert_eq!(build_vposet(4, 1).unwrap().poset(), &Poset::chain(4));
    }

    #[test]
    fn zero_length_chain_is_rejected() {
        assert_eq!(build_vposet(0, 2), Err(Error::EmptyChain { m: 0, n: 2 }));
        assert!(build_vposet(2, 0).is_err());
    }

    #[test]
    fn decode_examples() {
        let v = build_vposet(2, 2).unwrap();
        assert_eq!(
            decode(&v, &triple(&[1, 1], &[1, 1], 2)).unwrap(),
            partition(3, &[&[0], &[1, 2]])
        );

        let v = build_vposet(3, 3).unwrap();
        assert_eq!(
            decode(&v, &triple(&[2, 1], &[1, 1, 1], 1)).unwrap(),
            partition(5, &[&[0, 1], &[2], &[3], &[4]])
        );

        for (m, n) in [(1, 1), (2, 5), (4, 3)] {
            let v = build_vposet(m, n).unwrap();
            assert_eq!(
                decode(&v, &triple(&[m], &[n], 1)).unwrap(),
                Partition::one_block(m + n - 1)
            );
        }
    }

    #[test]
    fn decode_rejects_bad_triples() {
        let v = build_vposet(3, 3).unwrap();
        for bad in [
            triple(&[2, 2], &[3], 1),
            triple(&[3], &[1, 1], 1),
            triple(&[3], &[3], 0),
            triple(&[2, 1], &[1, 2], 3),
            triple(&[], &[3], 1),
            triple(&[0, 3], &[3], 1),
        ] {
            assert!(
                matches!(decode(&v, &bad), Err(Error::InvalidTriple(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn encode_examples() {
        let v = build_vposet(3, 3).unwrap();
        assert_eq!(
            encode(&v, &partition(5, &[&[0, 1], &[2], &[3], &[4]])).unwrap(),
            triple(&[2, 1], &[1, 1, 1], 1)
        );
        let v = build_vposet(2, 2).unwrap();
        assert_eq!(
            encode(&v, &partition(3, &[&[0], &[1, 2]])).unwrap(),
            triple(&[1, 1], &[1, 1], 2)
        );
        let v = build_vposet(1, 1).unwrap();
        assert_eq!(
            encode(&v, &Partition::singletons(1)).unwrap(),
            triple(&[1], &[1], 1)
        );
    }

    #[test]
    fn encode_rejects_closed_partitions() {
        let v = build_vposet(3, 3).unwrap();
        let pi = partition(5, &[&[0], &[1, 4], &[2], &[3]]);
        assert_eq!(encode(&v, &pi), Err(Error::NotOpen));
    }

    #[test]
    fn compositions_in_lex_order() {
        let got: Vec<_> = Compositions::new(3).collect();
        assert_eq!(got, vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
        assert_eq!(Compositions::new(1).collect::<Vec<_>>(), vec![vec![1]]);
        for n in 1..=10 {
            assert_eq!(Compositions::new(n).count(), 1 << (n - 1));
        }
    }

    #[test]
    fn triple_counts() {
        let count = |m, n| enumerate_triples(&build_vposet(m, n).unwrap()).count();
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(2, 2), 5);
        assert_eq!(count(3, 3), 26);
        for n in 1..=8 {
            assert_eq!(count(1, n), 1 << (n - 1));
        }
    }

    #[test]
    fn triples_order() {
        let v = build_vposet(2, 2).unwrap();
        let got: Vec<_> = enumerate_triples(&v).collect();
        assert_eq!(
            got,
            vec![
                triple(&[1, 1], &[1, 1], 1),
                triple(&[1, 1], &[1, 1], 2),
                triple(&[1, 1], &[2], 1),
                triple(&[2], &[1, 1], 1),
                triple(&[2], &[2], 1),
            ]
        );
    }

    #[test]
    fn pairing_legality() {
        let v = build_vposet(3, 3).unwrap();
        let all: Vec<_> = enumerate_pairings(&v).collect();
        // 4 left partitions times (1 + 2 + 2 + 3) right (partition, level) pairs
        assert_eq!(all.len(), 32);
        assert_eq!(all.iter().filter(|p| !p.is_legal()).count(), 6);
    }

    #[test]
    fn swap_map_is_an_involution() {
        let v = build_vposet(3, 3).unwrap();
        let map = v.swap_map().unwrap();
        assert_eq!(map, vec![0, 3, 4, 1, 2]);
        assert!(build_vposet(2, 3).unwrap().swap_map().is_none());
    }

    #[test]
    fn triple_json_shape() {
        let tr = triple(&[2, 1], &[1, 1, 1], 1);
        let json = serde_json::to_string(&tr).unwrap();
        assert_eq!(json, r#"{"left":[2,1],"right":[1,1,1],"t":1}"#);
        assert_eq!(serde_json::from_str::<VTriple>(&json).unwrap(), tr);
    }
}
