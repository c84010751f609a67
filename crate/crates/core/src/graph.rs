//! Finite simplicial graphs and the link/star/component primitives.
//!
//! Vertices are dense indices into the graph's declaration order; every set
//! of vertices is a fixed-width bitset, so all iteration is in index order and
//! every derived output is deterministic.

use std::collections::HashMap;
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORDS: usize = 4;

/// Largest vertex count a [`SimplicialGraph`] can hold.
pub const MAX_VERTICES: usize = WORDS * 64;

/// Dense handle of a vertex inside its parent graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u16);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Wraps a raw index. The caller is responsible for it being in range
    /// for the graph it is used with.
    pub fn from_index(index: usize) -> Self {
        assert!(index < MAX_VERTICES, "vertex index {index} out of range");
        VertexId(index as u16)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of vertex indices over some parent graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        let mut words = [0u64; WORDS];
        for (i, w) in words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        VertexSet { words }
    }

    pub fn singleton(v: VertexId) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    pub fn insert(&mut self, v: VertexId) {
        let i = v.index();
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, v: VertexId) {
        let i = v.index();
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, v: VertexId) -> bool {
        let i = v.index();
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<VertexId> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| VertexId((i * 64 + w.trailing_zeros() as usize) as u16))
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            word: 0,
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let mut words = [0u64; WORDS];
        for (i, w) in words.iter_mut().enumerate() {
            *w = f(self.words[i], other.words[i]);
        }
        VertexSet { words }
    }
}

/// Lexicographic order on the sorted member lists.
impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().map(|v| v.index()).cmp(other.iter().map(|v| v.index()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.index())).finish()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(VertexId((self.word * 64 + bit) as u16));
            }
            self.word += 1;
        }
        None
    }
}

/// A finite simplicial graph: named vertices in a fixed order plus a
/// symmetric, irreflexive adjacency relation.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    adjacency: Vec<VertexSet>,
}

impl SimplicialGraph {
    /// Builds a graph from vertex names (in canonical order) and edges given
    /// by index. Rejects self-loops, duplicate names and out-of-range
    /// endpoints; repeated edges are idempotent here (the document parsers
    /// are the ones that reject duplicates).
    pub fn from_edges<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                count: names.len(),
                max: MAX_VERTICES,
            });
        }
        let mut seen = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let n = names.len();
        let mut adjacency = vec![VertexSet::empty(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::SelfLoop(names[u].clone()));
            }
            adjacency[u].insert(VertexId(v as u16));
            adjacency[v].insert(VertexId(u as u16));
        }
        Ok(SimplicialGraph { names, adjacency })
    }

    /// Same as [`from_edges`](Self::from_edges) but with edges given by name.
    pub fn from_named_edges<'a>(
        names: &[&str],
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            pairs.push((ia, ib));
        }
        Self::from_edges(names.iter().copied(), pairs)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(|i| VertexId(i as u16))
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.names.len())
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks a vertex up by name.
    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| VertexId(i as u16))
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Builds a set from vertex names.
    pub fn set_of(&self, names: &[&str]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n)).collect()
    }

    pub fn set_names(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.name(v).to_string()).collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.names.len()
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u.index()].contains(v)
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for v in self.adjacency[u.index()].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Neighbors of `v`; never contains `v`.
    pub fn link(&self, v: VertexId) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.adjacency[v.index()])
    }

    pub fn star(&self, v: VertexId) -> Result<VertexSet> {
        let mut s = self.link(v)?;
        s.insert(v);
        Ok(s)
    }

    /// Intersection of the links of every member of `s`.
    pub fn link_of_set(&self, s: &VertexSet) -> Result<VertexSet> {
        if s.is_empty() {
            return Err(Error::EmptySet("link of an empty vertex set"));
        }
        let mut acc = self.all();
        for v in s {
            acc = acc.intersection(&self.link(v)?);
        }
        Ok(acc)
    }

    // Unchecked variants used on hot paths where the vertex is known valid.
    pub(crate) fn lk(&self, v: VertexId) -> VertexSet {
        self.adjacency[v.index()]
    }

    pub(crate) fn st(&self, v: VertexId) -> VertexSet {
        let mut s = self.adjacency[v.index()];
        s.insert(v);
        s
    }

    /// The connected component of `start` inside the subgraph induced on
    /// `within`. `start` must belong to `within`.
    pub fn component_of(&self, start: VertexId, within: &VertexSet) -> VertexSet {
        debug_assert!(within.contains(start));
        let mut reached = VertexSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in &frontier {
                next = next.union(&self.adjacency[v.index()]);
            }
            frontier = next.intersection(within).difference(&reached);
            reached = reached.union(&frontier);
        }
        reached
    }

    /// Partition of `s` into the connected components of the subgraph it
    /// induces, ordered by least member.
    pub fn connected_components(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut rest = s.intersection(&self.all());
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.component_of(v, &rest);
            rest = rest.difference(&comp);
            out.push(comp);
        }
        out
    }

    /// Components of `Γ − st(v)`.
    pub fn star_complement_components(&self, v: VertexId) -> Result<Vec<VertexSet>> {
        let st = self.star(v)?;
        Ok(self.connected_components(&self.all().difference(&st)))
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components(&self.all()).len() <= 1
    }

    /// Relabels vertices by a permutation: vertex `i` of `self` becomes
    /// vertex `perm[i]` of the result.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.vertex_count();
        if perm.len() != n {
            return Err(Error::Input("permutation length mismatch".into()));
        }
        let mut names = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = self.names[i].clone();
        }
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u.index()], perm[v.index()]));
        Self::from_edges(names, edges)
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (self.name(u), self.name(v)))
            .collect();
        f.debug_struct("SimplicialGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}
