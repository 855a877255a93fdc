//! Breadth-first enumeration of syllable-metric balls.

use std::collections::HashMap;

use crate::graph::WeightedGraph;
use crate::words::NormalForm;
use crate::{Error, Result};

/// Default cap on ball vertices; weights and radius blow up fast.
pub const DEFAULT_VERTEX_CAP: usize = 200_000;

/// One edge of the ball: endpoints with `a < b`, the vertex of Γ labelling
/// the factor, the exponent `k` with `verts[b] = verts[a]·u^k`, and the
/// local-metric weight of the step inside its clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallEdge {
    pub a: usize,
    pub b: usize,
    pub label: usize,
    pub exponent: i64,
    pub weight: u32,
}

/// The radius-R portion of the quasi-median Cayley graph around the
/// identity, with one vertex per canonical normal form of syllable length
/// at most R and one edge per factor translation inside the ball.
#[derive(Debug, Clone)]
pub struct QmBall {
    weighted: WeightedGraph,
    radius: u32,
    verts: Vec<NormalForm>,
    index: HashMap<NormalForm, usize>,
    edges: Vec<BallEdge>,
    adj: Vec<Vec<(usize, usize)>>,
    edge_at: HashMap<(usize, usize), usize>,
}

/// Enumerates the ball of the given syllable radius. All factors must be
/// finite; the enumeration aborts with a resource error if it would exceed
/// `cap` vertices (`None` uses [`DEFAULT_VERTEX_CAP`]).
pub fn build_ball(weighted: &WeightedGraph, radius: u32, cap: Option<usize>) -> Result<QmBall> {
    let cap = cap.unwrap_or(DEFAULT_VERTEX_CAP);
    let pres = weighted.presentation();
    let n = weighted.graph().vertex_count();

    let mut verts: Vec<NormalForm> = vec![NormalForm::identity()];
    let mut index: HashMap<NormalForm, usize> = HashMap::new();
    index.insert(NormalForm::identity(), 0);
    let mut level: Vec<NormalForm> = vec![NormalForm::identity()];
    for depth in 1..=radius {
        let mut next: Vec<NormalForm> = Vec::new();
        for g in &level {
            for u in 0..n {
                for k in 1..weighted.weight(u) as i64 {
                    let h = g.mul_syllable(pres, u, k);
                    if h.syllable_length() == depth as usize && !index.contains_key(&h) {
                        index.insert(h.clone(), usize::MAX);
                        next.push(h);
                    }
                }
            }
        }
        next.sort();
        for h in next.iter() {
            *index.get_mut(h).unwrap() = verts.len();
            verts.push(h.clone());
        }
        if verts.len() > cap {
            return Err(Error::Resource { estimate: verts.len(), cap });
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }

    let mut edges: Vec<BallEdge> = Vec::new();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); verts.len()];
    let mut edge_at: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, g) in verts.iter().enumerate() {
        for u in 0..n {
            let nu = weighted.weight(u) as i64;
            for k in 1..nu {
                let h = g.mul_syllable(pres, u, k);
                let Some(&j) = index.get(&h) else { continue };
                if j <= i {
                    continue;
                }
                let id = edges.len();
                edges.push(BallEdge {
                    a: i,
                    b: j,
                    label: u,
                    exponent: k,
                    weight: (k.min(nu - k)) as u32,
                });
                adj[i].push((j, id));
                adj[j].push((i, id));
                edge_at.insert((i, j), id);
            }
        }
    }

    Ok(QmBall { weighted: weighted.clone(), radius, verts, index, edges, adj, edge_at })
}

impl QmBall {
    pub fn weighted(&self) -> &WeightedGraph {
        &self.weighted
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// The ball is centered at the identity; translates are isometric.
    pub fn center(&self) -> &NormalForm {
        &self.verts[0]
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> &[NormalForm] {
        &self.verts
    }

    pub fn vertex(&self, i: usize) -> &NormalForm {
        &self.verts[i]
    }

    pub fn index_of(&self, g: &NormalForm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn edges(&self) -> &[BallEdge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edge_at.get(&key).copied()
    }

    /// Syllable length of a vertex, i.e. its distance from the center.
    pub fn depth(&self, v: usize) -> u32 {
        self.verts[v].syllable_length() as u32
    }

    /// BFS distances from `src` over ball edges; unreachable is `u32::MAX`.
    pub fn bfs_distances(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.verts.len()];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Dijkstra over the local-metric edge weights.
    pub fn weighted_distances(&self, src: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.verts.len()];
        dist[src] = 0;
        let mut heap = std::collections::BinaryHeap::new();
        heap.push(std::cmp::Reverse((0u64, src)));
        while let Some(std::cmp::Reverse((d, x))) = heap.pop() {
            if d > dist[x] {
                continue;
            }
            for &(y, e) in &self.adj[x] {
                let nd = d + self.edges[e].weight as u64;
                if nd < dist[y] {
                    dist[y] = nd;
                    heap.push(std::cmp::Reverse((nd, y)));
                }
            }
        }
        dist
    }

    /// Vertices within `radius/2` of the center, where boundary truncation
    /// cannot disturb geodesics between them.
    pub fn in_reliable_core(&self, v: usize) -> bool {
        self.depth(v) <= self.radius / 2
    }
}
