//! Finite simple graphs and the structural predicates the analyses consume.
//!
//! Graphs are immutable values over string vertex identifiers. The
//! declaration order of the vertices is the ordering used for every
//! deterministic tie-break downstream (witness selection, component
//! ordering, canonical words), so two runs over the same input file
//! produce byte-identical certificates.
//!
//! Internally vertices are indices into the declaration list and vertex
//! sets are `u64` bitmasks, which caps graphs at 64 vertices. That is far
//! beyond anything the exhaustive decision procedures can digest anyway.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Maximum number of vertices in a [`SimpleGraph`].
pub const MAX_VERTICES: usize = 64;

/// A finite simple graph: no loops, no multi-edges, immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    names: Vec<String>,
    adj: Vec<u64>,
}

/// Result of [`SimpleGraph::structural_predicates`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralSummary {
    pub is_complete: bool,
    pub is_join: bool,
    pub is_triangle_free: bool,
    pub is_connected: bool,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph({:?}, edges {:?})", self.names, self.edges())
    }
}

impl SimpleGraph {
    /// Builds a graph from declared vertices and undirected edges.
    ///
    /// Duplicate edges are collapsed; loops, duplicate identifiers and
    /// unknown endpoints are input errors.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::input(format!(
                "graph has {} vertices, maximum is {MAX_VERTICES}",
                vertices.len()
            )));
        }
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex identifier {name:?}")));
            }
        }
        let mut adj = vec![0u64; names.len()];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index
                .get(u)
                .ok_or_else(|| Error::input(format!("unknown edge endpoint {u:?}")))?;
            let iv = *index
                .get(v)
                .ok_or_else(|| Error::input(format!("unknown edge endpoint {v:?}")))?;
            if iu == iv {
                return Err(Error::input(format!("loop at vertex {u:?}")));
            }
            adj[iu] |= 1 << iv;
            adj[iv] |= 1 << iu;
        }
        Ok(SimpleGraph { names, adj })
    }

    /// Builds a graph on vertices `a`, `b`, ... with edges given by index pairs.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..n).map(default_name).collect();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(u, v)| {
                if u >= n || v >= n {
                    return Err(Error::input(format!("edge ({u},{v}) out of range")));
                }
                Ok((names[u].clone(), names[v].clone()))
            })
            .collect::<Result<_>>()?;
        Self::new(&names, &named)
    }

    /// Cycle graph on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_indices(n, &edges).expect("cycle construction")
    }

    /// Path graph on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_indices(n, &edges).expect("path construction")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_indices(n, &edges).expect("complete construction")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Index of a vertex identifier, or an input error.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::input(format!("unknown vertex {name:?}")))
    }

    /// Translates a list of identifiers into a bitmask.
    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<u64> {
        let mut mask = 0u64;
        for name in names {
            mask |= 1 << self.index_of(name.as_ref())?;
        }
        Ok(mask)
    }

    /// Identifiers for a bitmask, in declaration order.
    pub fn names_of(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|i| self.names[i].clone()).collect()
    }

    pub fn full_mask(&self) -> u64 {
        if self.names.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.names.len())
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    pub fn neighbors_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in declaration order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.names.len() {
            for v in bits(self.adj[u] & !low_bits(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// The neighbours of `v` (its link).
    pub fn link(&self, v: &str) -> Result<Vec<String>> {
        let i = self.index_of(v)?;
        Ok(self.names_of(self.adj[i]))
    }

    /// Subgraph induced by the given vertex identifiers. Vertex order is inherited.
    pub fn induced_subgraph<S: AsRef<str>>(&self, s: &[S]) -> Result<Self> {
        let mask = self.mask_of(s)?;
        Ok(self.induced_by_mask(mask))
    }

    /// Subgraph induced by a bitmask of vertices.
    pub fn induced_by_mask(&self, mask: u64) -> Self {
        let kept: Vec<usize> = bits(mask).collect();
        let names: Vec<String> = kept.iter().map(|&i| self.names[i].clone()).collect();
        let mut adj = vec![0u64; kept.len()];
        for (new_u, &old_u) in kept.iter().enumerate() {
            for (new_v, &old_v) in kept.iter().enumerate() {
                if self.adj[old_u] & (1 << old_v) != 0 {
                    adj[new_u] |= 1 << new_v;
                }
            }
        }
        let _ = names.len();
        SimpleGraph { names, adj }
    }

    /// True if every pair of vertices in `mask` is adjacent.
    pub fn is_complete_on(&self, mask: u64) -> bool {
        bits(mask).all(|u| (mask & !self.adj[u]) & !(1 << u) == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.is_complete_on(self.full_mask())
    }

    /// Connected components of the subgraph induced by `mask`, each a bitmask,
    /// ordered by least vertex.
    pub fn components_in(&self, mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut unseen = mask;
        while unseen != 0 {
            let start = unseen.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for u in bits(frontier) {
                    next |= self.adj[u] & mask & !comp;
                }
                comp |= next;
                frontier = next;
            }
            unseen &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let full = self.full_mask();
        full == 0 || self.components_in(full).len() == 1
    }

    /// True if `mask` induces a disconnected (>= 2 components) subgraph of
    /// the vertices in `within`.
    pub fn separates(&self, mask: u64, within: u64) -> bool {
        self.components_in(within & !mask).len() >= 2
    }

    /// True if the vertex set splits into two nonempty parts with all cross
    /// edges present; equivalently the complement graph is disconnected.
    pub fn is_join(&self) -> bool {
        let n = self.names.len();
        if n < 2 {
            return false;
        }
        let full = self.full_mask();
        // components of the complement graph
        let mut unseen = full;
        let mut first = 0u64;
        while unseen != 0 {
            let start = unseen.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for u in bits(frontier) {
                    next |= (full & !self.adj[u] & !(1 << u)) & !comp;
                }
                comp |= next;
                frontier = next;
            }
            if first == 0 {
                first = comp;
            }
            unseen &= !comp;
        }
        first != full
    }

    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.names.len() {
            for v in bits(self.adj[u] & !low_bits(u + 1)) {
                if self.adj[u] & self.adj[v] & !low_bits(v + 1) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for u in 0..self.names.len() {
            for v in bits(self.adj[u] & !low_bits(u + 1)) {
                count += (self.adj[u] & self.adj[v] & !low_bits(v + 1)).count_ones() as usize;
            }
        }
        count
    }

    /// The elementary structural predicates in one pass.
    pub fn structural_predicates(&self) -> StructuralSummary {
        StructuralSummary {
            is_complete: self.is_complete(),
            is_join: self.is_join(),
            is_triangle_free: self.is_triangle_free(),
            is_connected: self.is_connected(),
        }
    }

    /// Size of a largest complete subgraph.
    pub fn clique_number(&self) -> usize {
        fn grow(g: &SimpleGraph, current: u64, candidates: u64, best: &mut usize) {
            let size = current.count_ones() as usize;
            *best = (*best).max(size);
            if size + candidates.count_ones() as usize <= *best {
                return;
            }
            let mut rest = candidates;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow(g, current | (1 << v), rest & g.adj[v], best);
            }
        }
        let mut best = 0;
        grow(self, 0, self.full_mask(), &mut best);
        best
    }

    /// Some induced cycle of length >= 3, if the graph has a cycle at all.
    ///
    /// Returns a shortest cycle, which is automatically induced: any chord
    /// would close a shorter cycle.
    pub fn find_induced_cycle(&self) -> Option<Vec<String>> {
        let mut best: Option<Vec<usize>> = None;
        for (u, v) in self.edges() {
            // shortest u-v path avoiding the edge {u, v}
            let mut parent = vec![usize::MAX; self.names.len()];
            let mut dist = vec![u32::MAX; self.names.len()];
            dist[u] = 0;
            let mut queue = std::collections::VecDeque::from([u]);
            while let Some(x) = queue.pop_front() {
                for y in bits(self.adj[x]) {
                    if (x == u && y == v) || (x == v && y == u) || dist[y] != u32::MAX {
                        continue;
                    }
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
            if dist[v] == u32::MAX {
                continue;
            }
            let mut path = vec![v];
            let mut cur = v;
            while cur != u {
                cur = parent[cur];
                path.push(cur);
            }
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
        best.map(|cycle| cycle.into_iter().rev().map(|i| self.names[i].clone()).collect())
    }

    /// Checks that `cycle` lists distinct vertices forming a cycle whose
    /// induced subgraph is exactly that cycle. Independent of
    /// [`Self::find_induced_cycle`]; used as its post-condition validator.
    pub fn is_induced_cycle(&self, cycle: &[String]) -> bool {
        let k = cycle.len();
        if k < 3 {
            return false;
        }
        let Ok(idx) = cycle.iter().map(|v| self.index_of(v)).collect::<Result<Vec<_>>>() else {
            return false;
        };
        let mask = idx.iter().fold(0u64, |m, &i| m | (1 << i));
        if mask.count_ones() as usize != k {
            return false;
        }
        for a in 0..k {
            for b in a + 1..k {
                let consecutive = b == a + 1 || (a == 0 && b == k - 1);
                if self.adjacent(idx[a], idx[b]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// Enumerates all complete subsets of `within` (including the empty set),
    /// in increasing size and lexicographically (declaration order) within a
    /// size. This is the witness-search order for splitting certificates.
    pub fn complete_subsets(&self, within: u64) -> Vec<u64> {
        let verts: Vec<usize> = bits(within).collect();
        let mut by_size: Vec<Vec<u64>> = vec![vec![0]];
        loop {
            let last = by_size.last().unwrap();
            let mut next = Vec::new();
            for &c in last {
                let top = 63 - (c | 1).leading_zeros() as usize;
                for &v in &verts {
                    if c != 0 && v <= top {
                        continue;
                    }
                    if c & !self.adj[v] == 0 {
                        next.push(c | (1 << v));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| cmp_mask_lex(*a, *b));
            by_size.push(next);
        }
        by_size.into_iter().flatten().collect()
    }
}

/// Compares vertex sets as ascending index sequences (size is not considered).
pub fn cmp_mask_lex(a: u64, b: u64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    if a == b {
        return Ordering::Equal;
    }
    // Sequences agree below the lowest differing bit i. The set owning i
    // continues with i there; the other either ended (proper prefix, hence
    // smaller) or continues with something larger.
    let i = (a ^ b).trailing_zeros();
    if a & (1 << i) != 0 {
        if b >> i == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a >> i == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Iterator over the set bit indices of a mask, ascending.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    struct Bits(u64);
    impl Iterator for Bits {
        type Item = usize;
        fn next(&mut self) -> Option<usize> {
            if self.0 == 0 {
                return None;
            }
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
    Bits(mask)
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn default_name(i: usize) -> String {
    // a, b, ..., z, v26, v27, ...
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("v{i}")
    }
}

/// A graph-product presentation: a graph whose vertices carry cyclic factor
/// groups, `Some(n)` for Z_n (n >= 2) or `None` for Z. All weights absent is
/// the right-angled Artin group A(Γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    graph: SimpleGraph,
    weights: Vec<Option<u32>>,
}

impl Presentation {
    pub fn new(graph: SimpleGraph, weights: &BTreeMap<String, u32>) -> Result<Self> {
        let mut w = vec![None; graph.vertex_count()];
        for (name, &nu) in weights {
            let i = graph.index_of(name)?;
            if nu < 2 {
                return Err(Error::input(format!("weight of {name:?} is {nu}, must be >= 2")));
            }
            w[i] = Some(nu);
        }
        Ok(Presentation { graph, weights: w })
    }

    /// The right-angled Artin presentation: every factor is Z.
    pub fn raag(graph: SimpleGraph) -> Self {
        let weights = vec![None; graph.vertex_count()];
        Presentation { graph, weights }
    }

    /// All factors finite with the same order.
    pub fn uniform(graph: SimpleGraph, nu: u32) -> Result<Self> {
        let weights: BTreeMap<String, u32> =
            graph.names().iter().map(|n| (n.clone(), nu)).collect();
        Self::new(graph.clone(), &weights)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    /// `Some(n)` for a finite factor Z_n, `None` for Z.
    pub fn weight(&self, v: usize) -> Option<u32> {
        self.weights[v]
    }

    pub fn all_finite(&self) -> bool {
        self.weights.iter().all(|w| w.is_some())
    }
}

/// A presentation whose factors are all finite; the defining data of Γ(ν).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    pres: Presentation,
}

impl WeightedGraph {
    pub fn new(graph: SimpleGraph, weights: &BTreeMap<String, u32>) -> Result<Self> {
        for name in graph.names() {
            if !weights.contains_key(name) {
                return Err(Error::input(format!("missing weight for vertex {name:?}")));
            }
        }
        Ok(WeightedGraph { pres: Presentation::new(graph, weights)? })
    }

    pub fn uniform(graph: SimpleGraph, nu: u32) -> Result<Self> {
        Ok(WeightedGraph { pres: Presentation::uniform(graph, nu)? })
    }

    pub fn from_presentation(pres: Presentation) -> Result<Self> {
        if !pres.all_finite() {
            return Err(Error::input("presentation has an infinite factor".to_owned()));
        }
        Ok(WeightedGraph { pres })
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.pres.graph()
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.pres.weight(v).expect("all weights finite")
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }
}
