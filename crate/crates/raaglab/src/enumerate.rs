//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! This is the small-instance generator behind the exhaustive acceptance
//! checks: graphs are grown one vertex at a time and deduplicated by their
//! minimum edge-code over all vertex permutations. Practical up to eight
//! vertices, which is all the exhaustive oracles ever ask for.

use crate::graph::SimpleGraph;

/// A graph on `n` unlabelled vertices, encoded as a bitmask over the pairs
/// `(u, v)` with `u < v` in colex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphCode {
    pub n: usize,
    pub edges: u32,
}

fn pair_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

impl GraphCode {
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges & (1 << pair_index(u, v)) != 0
    }

    pub fn to_simple_graph(&self) -> SimpleGraph {
        let mut edges = Vec::new();
        for v in 0..self.n {
            for u in 0..v {
                if self.edges & (1 << pair_index(u, v)) != 0 {
                    edges.push((u, v));
                }
            }
        }
        SimpleGraph::from_indices(self.n, &edges).expect("decoded graph")
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for y in 0..self.n {
                if y != x && seen & (1 << y) == 0 && self.has_edge(x, y) {
                    seen |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        seen.count_ones() as usize == self.n
    }

    fn is_triangle_free(&self) -> bool {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..self.n {
                    if self.has_edge(a, c) && self.has_edge(b, c) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Pair-relabelling tables for all permutations of `0..n`.
struct PermTables {
    tables: Vec<Vec<u8>>,
}

impl PermTables {
    fn new(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        permutations(&mut items, 0, &mut perms);
        let pairs = n * (n - 1) / 2;
        let tables = perms
            .iter()
            .map(|p| {
                let mut table = vec![0u8; pairs];
                for v in 0..n {
                    for u in 0..v {
                        let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                        table[pair_index(u, v)] = pair_index(a, b) as u8;
                    }
                }
                table
            })
            .collect();
        PermTables { tables }
    }

    fn canonical(&self, edges: u32) -> u32 {
        let mut best = u32::MAX;
        for table in &self.tables {
            let mut remapped = 0u32;
            let mut rest = edges;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                remapped |= 1 << table[i];
            }
            best = best.min(remapped);
        }
        best
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// All graphs on exactly `n` vertices, up to isomorphism.
///
/// `triangle_free_only` restricts the augmentation to triangle-free graphs,
/// which keeps eight-vertex enumeration cheap.
pub fn graphs_up_to_iso(n: usize, triangle_free_only: bool) -> Vec<GraphCode> {
    assert!((1..=8).contains(&n), "enumeration is desk-scale: 1..=8 vertices");
    let mut level = vec![GraphCode { n: 1, edges: 0 }];
    for m in 2..=n {
        let tables = PermTables::new(m);
        let mut seen = std::collections::BTreeSet::new();
        for g in &level {
            'mask: for nbrs in 0u32..(1 << (m - 1)) {
                if triangle_free_only {
                    // the new vertex's neighbourhood must be independent
                    for u in 0..m - 1 {
                        for v in u + 1..m - 1 {
                            if nbrs & (1 << u) != 0 && nbrs & (1 << v) != 0 && g.has_edge(u, v) {
                                continue 'mask;
                            }
                        }
                    }
                }
                let mut edges = g.edges;
                for u in 0..m - 1 {
                    if nbrs & (1 << u) != 0 {
                        edges |= 1 << pair_index(u, m - 1);
                    }
                }
                seen.insert(tables.canonical(edges));
            }
        }
        level = seen.into_iter().map(|edges| GraphCode { n: m, edges }).collect();
    }
    level
}

/// All connected graphs on `1..=max_n` vertices, up to isomorphism.
pub fn connected_graphs_up_to_iso(max_n: usize) -> Vec<GraphCode> {
    (1..=max_n)
        .flat_map(|n| graphs_up_to_iso(n, false))
        .filter(|g| g.is_connected())
        .collect()
}

/// All triangle-free graphs on `1..=max_n` vertices, up to isomorphism.
pub fn triangle_free_graphs_up_to_iso(max_n: usize) -> Vec<GraphCode> {
    (1..=max_n)
        .flat_map(|n| graphs_up_to_iso(n, true))
        .filter(|g| g.is_triangle_free())
        .collect()
}
