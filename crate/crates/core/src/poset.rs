//! Finite posets, upsets, open partitions and their brute-force enumeration.
//!
//! A [`Poset`] is given by a set of cover edges `(lower, upper)` over the
//! vertices `0..n`. The order relation is the reflexive-transitive closure of
//! those edges; the stored covers are their transitive reduction.
//!
//! A [`Partition`] is *open* when the upset of every block is a union of
//! blocks. Equivalently, no upset of a block splits another block, which is
//! the test [`is_open`] performs.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Default maximum number of vertices for brute-force enumeration.
/// Bell(12) is a little over four million.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;

/// Interchange form of a poset: `{"n": 3, "covers": [[0, 1], [1, 2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub n: usize,
    pub covers: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n_vertices: usize,
    covers: Vec<(VertexId, VertexId)>,
    // row-major n x n; reach[x * n + y] iff x <= y
    reach: Vec<bool>,
}

impl Poset {
    /// Builds a poset from `(lower, upper)` edges. Edges may be redundant
    /// (transitive or repeated); they are reduced to covers.
    pub fn new(n_vertices: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        for &(lo, hi) in edges {
            for v in [lo, hi] {
                if v >= n_vertices {
                    return Err(Error::Range {
                        vertex: v,
                        n_vertices,
                    });
                }
            }
        }

        let mut succ = vec![Vec::new(); n_vertices];
        for &(lo, hi) in edges {
            if !succ[lo].contains(&hi) {
                succ[lo].push(hi);
            }
        }

        let order = topological_order(n_vertices, &succ)?;

        let n = n_vertices;
        let mut reach = vec![false; n * n];
        for &v in order.iter().rev() {
            reach[v * n + v] = true;
            for &w in &succ[v] {
                for y in 0..n {
                    if reach[w * n + y] {
                        reach[v * n + y] = true;
                    }
                }
            }
        }

        let mut covers = Vec::new();
        for (lo, ups) in succ.iter().enumerate() {
            for &hi in ups {
                let bypassed =
                    (0..n).any(|w| w != lo && w != hi && reach[lo * n + w] && reach[w * n + hi]);
                if !bypassed {
                    covers.push((lo, hi));
                }
            }
        }
        covers.sort_unstable();

        Ok(Poset {
            n_vertices,
            covers,
            reach,
        })
    }

    /// The totally ordered poset `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Poset::new(n, &edges).expect("chain edges are acyclic")
    }

    /// `n` pairwise incomparable vertices.
    pub fn antichain(n: usize) -> Self {
        Poset::new(n, &[]).expect("no edges")
    }

    pub fn len(&self) -> usize {
        self.n_vertices
    }

    pub fn is_empty(&self) -> bool {
        self.n_vertices == 0
    }

    /// Cover pairs (the Hasse diagram edges), sorted.
    pub fn covers(&self) -> &[(VertexId, VertexId)] {
        &self.covers
    }

    /// `x <= y` in the order. Panics on out-of-range ids.
    pub fn le(&self, x: VertexId, y: VertexId) -> bool {
        assert!(x < self.n_vertices && y < self.n_vertices);
        self.reach[x * self.n_vertices + y]
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n_vertices {
            Ok(())
        } else {
            Err(Error::Range {
                vertex: v,
                n_vertices: self.n_vertices,
            })
        }
    }

    /// All vertices lying above some element of `set`, in ascending order.
    pub fn upset(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        for &v in set {
            self.check_vertex(v)?;
        }
        let mask = self.upset_mask(set);
        Ok(mask_to_vec(&mask))
    }

    fn upset_mask(&self, set: &[VertexId]) -> Vec<bool> {
        let n = self.n_vertices;
        let mut mask = vec![false; n];
        for &x in set {
            let row = &self.reach[x * n..(x + 1) * n];
            for (m, &r) in mask.iter_mut().zip(row) {
                *m |= r;
            }
        }
        mask
    }

    /// Length of the longest cover path from a minimal element to each vertex.
    pub fn heights(&self) -> Vec<usize> {
        let mut height = vec![0; self.n_vertices];
        // covers are sorted by lower vertex, which is not a topological order,
        // so relax until stable; the number of rounds is bounded by the height
        let mut changed = true;
        while changed {
            changed = false;
            for &(lo, hi) in &self.covers {
                if height[hi] < height[lo] + 1 {
                    height[hi] = height[lo] + 1;
                    changed = true;
                }
            }
        }
        height
    }

    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc {
            n: self.n_vertices,
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Applies a vertex relabeling `v -> map[v]`; `map` must be a permutation.
    pub fn relabel(&self, map: &[VertexId]) -> Result<Self> {
        let edges: Vec<_> = self.covers.iter().map(|&(a, b)| (map[a], map[b])).collect();
        Poset::new(self.n_vertices, &edges)
    }
}

impl TryFrom<PosetDoc> for Poset {
    type Error = Error;

    fn try_from(doc: PosetDoc) -> Result<Self> {
        let edges: Vec<_> = doc.covers.iter().map(|&[a, b]| (a, b)).collect();
        Poset::new(doc.n, &edges)
    }
}

pub fn build_poset(n_vertices: usize, edges: &[(VertexId, VertexId)]) -> Result<Poset> {
    Poset::new(n_vertices, edges)
}

fn topological_order(n: usize, succ: &[Vec<VertexId>]) -> Result<Vec<VertexId>> {
    let mut indegree = vec![0usize; n];
    for ups in succ {
        for &w in ups {
            indegree[w] += 1;
        }
    }
    let mut stack: Vec<_> = (0..n).rev().filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every leftover vertex has a leftover predecessor. Walking predecessors
    // must revisit a vertex, and that vertex lies on a cycle.
    let mut pred = vec![None; n];
    for (v, ups) in succ.iter().enumerate() {
        for &w in ups {
            if indegree[v] > 0 && indegree[w] > 0 {
                pred[w] = Some(v);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut v = (0..n).find(|&v| indegree[v] > 0).expect("leftover vertex");
    while !seen[v] {
        seen[v] = true;
        v = pred[v].expect("leftover vertex has a leftover predecessor");
    }
    Err(Error::Cycle { vertex: v })
}

fn mask_to_vec(mask: &[bool]) -> Vec<VertexId> {
    mask.iter()
        .enumerate()
        .filter_map(|(v, &m)| m.then_some(v))
        .collect()
}

/// A set partition of `0..n` in canonical form: each block ascending, blocks
/// ordered by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<VertexId>>,
}

impl Partition {
    /// Validates `blocks` as a partition of `0..n_vertices` and puts it in
    /// canonical form.
    pub fn new(n_vertices: usize, blocks: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut seen = vec![false; n_vertices];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= n_vertices {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} is out of range for {n_vertices} vertices"
                    )));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears more than once"
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(Self::canonical(blocks))
    }

    fn canonical(mut blocks: Vec<Vec<VertexId>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Builds the partition whose restricted growth string is `rgs`:
    /// vertex `v` lies in block `rgs[v]`.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let n_blocks = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut blocks = vec![Vec::new(); n_blocks];
        for (v, &b) in rgs.iter().enumerate() {
            blocks[b].push(v);
        }
        debug_assert!(blocks.iter().all(|b| !b.is_empty()));
        Partition { blocks }
    }

    pub fn singletons(n_vertices: usize) -> Self {
        Partition {
            blocks: (0..n_vertices).map(|v| vec![v]).collect(),
        }
    }

    pub fn one_block(n_vertices: usize) -> Self {
        if n_vertices == 0 {
            return Partition { blocks: Vec::new() };
        }
        Partition {
            blocks: vec![(0..n_vertices).collect()],
        }
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<VertexId>> {
        self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n_vertices()];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                owner[v] = i;
            }
        }
        owner
    }

    /// Image of the partition under the vertex map `v -> map[v]`.
    pub fn relabel(&self, map: &[VertexId]) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| map[v]).collect())
            .collect();
        Self::canonical(blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

fn check_partition(p: &Poset, pi: &Partition) -> Result<()> {
    if pi.n_vertices() != p.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices but the poset has {}",
            pi.n_vertices(),
            p.len()
        )));
    }
    Ok(())
}

/// Whether the upset of every block of `pi` is a union of blocks of `pi`.
pub fn is_open(p: &Poset, pi: &Partition) -> Result<bool> {
    check_partition(p, pi)?;
    Ok(is_open_unchecked(p, pi, &pi.block_of()))
}

fn is_open_unchecked(p: &Poset, pi: &Partition, owner: &[usize]) -> bool {
    let mut hits = vec![0usize; pi.n_blocks()];
    for block in pi.blocks() {
        let up = p.upset_mask(block);
        hits.iter_mut().for_each(|h| *h = 0);
        for (v, &inside) in up.iter().enumerate() {
            if inside {
                hits[owner[v]] += 1;
            }
        }
        let splits = hits
            .iter()
            .zip(pi.blocks())
            .any(|(&h, c)| h != 0 && h != c.len());
        if splits {
            return false;
        }
    }
    true
}

/// The relation `B ⪯ C` between blocks: some `b` in `B` and `c` in `C` have
/// `b <= c`. Not necessarily antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRelation {
    size: usize,
    rel: Vec<bool>,
}

impl BlockRelation {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn holds(&self, i: usize, j: usize) -> bool {
        assert!(i < self.size && j < self.size);
        self.rel[i * self.size + j]
    }
}

pub fn quotient_relation(p: &Poset, pi: &Partition) -> Result<BlockRelation> {
    check_partition(p, pi)?;
    let size = pi.n_blocks();
    let mut rel = vec![false; size * size];
    for (i, lower) in pi.blocks().iter().enumerate() {
        for (j, upper) in pi.blocks().iter().enumerate() {
            rel[i * size + j] = lower.iter().any(|&b| upper.iter().any(|&c| p.le(b, c)));
        }
    }
    Ok(BlockRelation { size, rel })
}

/// All set partitions of `0..n`, in lexicographic order of their restricted
/// growth strings.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    fn new(n: usize) -> Self {
        SetPartitions {
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let item = Partition::from_rgs(&self.rgs);
        self.advance();
        Some(item)
    }
}

fn check_cap(n_vertices: usize, cap: usize) -> Result<()> {
    if n_vertices > cap {
        Err(Error::LimitExceeded { n_vertices, cap })
    } else {
        Ok(())
    }
}

/// Streams every set partition of `0..n`. `n = 0` yields the single empty
/// partition.
pub fn enumerate_set_partitions(n: usize, cap: usize) -> Result<SetPartitions> {
    check_cap(n, cap)?;
    Ok(SetPartitions::new(n))
}

/// The open partitions of a poset, in the same order as
/// [`enumerate_set_partitions`].
#[derive(Debug, Clone)]
pub struct OpenPartitions<'a> {
    poset: &'a Poset,
    inner: SetPartitions,
}

impl Iterator for OpenPartitions<'_> {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let poset = self.poset;
        self.inner
            .by_ref()
            .find(|pi| is_open_unchecked(poset, pi, &pi.block_of()))
    }
}

pub fn enumerate_open_partitions(p: &Poset, cap: usize) -> Result<OpenPartitions<'_>> {
    Ok(OpenPartitions {
        poset: p,
        inner: enumerate_set_partitions(p.len(), cap)?,
    })
}

pub fn count_open_partitions(p: &Poset, cap: usize) -> Result<BigUint> {
    let count = enumerate_open_partitions(p, cap)?.count();
    Ok(BigUint::from(count))
}
