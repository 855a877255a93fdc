//! Hyperplanes of a ball: edge classes under the closure of "opposite
//! sides of a square" and "in the same triangle", their sectors, carriers
//! and fibres, and the two distance formulas they support.

use crate::qm::QmBall;
use crate::{Error, Result};

/// An edge class of the ball with its separation data.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    pub id: usize,
    /// The vertex of Γ labelling every edge of the class.
    pub label: usize,
    pub edges: Vec<usize>,
    /// Connected components of the ball after removing the class edges,
    /// ordered by least vertex.
    pub sectors: Vec<Vec<usize>>,
    /// Sector index of every ball vertex.
    pub sector_of: Vec<u32>,
    /// Vertices incident to a class edge.
    pub carrier: Vec<usize>,
    /// Components of the carrier after removing the class edges.
    pub fibres: Vec<Vec<usize>>,
    /// Local-metric distance between sectors, via the projection to a
    /// clique of the class.
    pub delta: Vec<Vec<u32>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let root = self.find(self.0[x]);
            self.0[x] = root;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partitions the edges of the ball into hyperplane classes and computes
/// sectors, carriers, fibres and the per-class sector metric.
pub fn hyperplanes(ball: &QmBall) -> Vec<Hyperplane> {
    let pres = ball.weighted().presentation();
    let gamma = ball.weighted().graph();
    let mut uf = UnionFind::new(ball.edges().len());

    for v in 0..ball.vertex_count() {
        // same-triangle relation: all edges of one clique through v share a class
        let mut by_label: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &(_, e) in ball.neighbors(v) {
            by_label.entry(ball.edges()[e].label).or_default().push(e);
        }
        for group in by_label.values() {
            for pair in group.windows(2) {
                uf.union(pair[0], pair[1]);
            }
        }
        // square relation: two commuting steps from v close a square
        let incident: Vec<(usize, usize)> = ball.neighbors(v).to_vec();
        for (i, &(y, e1)) in incident.iter().enumerate() {
            for &(z, e2) in &incident[i + 1..] {
                let (u1, u2) = (ball.edges()[e1].label, ball.edges()[e2].label);
                if u1 == u2 || !gamma.adjacent(u1, u2) {
                    continue;
                }
                // fourth corner: y shifted by the same factor step as v -> z
                let k = directed_exponent(ball, e2, v);
                let w_nf = ball.vertex(y).mul_syllable(pres, u2, k);
                let Some(w) = ball.index_of(&w_nf) else { continue };
                let (Some(e_zw), Some(e_yw)) = (ball.edge_between(z, w), ball.edge_between(y, w))
                else {
                    continue;
                };
                uf.union(e1, e_zw);
                uf.union(e2, e_yw);
            }
        }
    }

    // Truncation can hide the squares that join distant cliques of one
    // hyperplane, leaving the closure fragmented. Two cliques lie in the
    // same hyperplane exactly when their bases lie in one coset of the
    // star parabolic of the label, so classes sharing that coset are
    // rejoined here.
    let mut by_carrier: std::collections::HashMap<(usize, crate::words::NormalForm), usize> =
        Default::default();
    for e in 0..ball.edges().len() {
        let edge = &ball.edges()[e];
        let star = (gamma.neighbors_mask(edge.label) | (1 << edge.label)) & gamma.full_mask();
        let (base, _) = ball.vertex(edge.a).strip_trailing_parabolic(pres, star);
        match by_carrier.entry((edge.label, base)) {
            std::collections::hash_map::Entry::Occupied(previous) => uf.union(e, *previous.get()),
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(e);
            }
        }
    }

    let mut class_edges: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for e in 0..ball.edges().len() {
        class_edges.entry(uf.find(e)).or_default().push(e);
    }

    let mut out = Vec::new();
    for (id, (_, edges)) in class_edges.into_iter().enumerate() {
        let label = ball.edges()[edges[0]].label;
        debug_assert!(
            edges.iter().all(|&e| ball.edges()[e].label == label),
            "edges of one hyperplane must share a label"
        );
        let in_class = {
            let mut mark = vec![false; ball.edges().len()];
            for &e in &edges {
                mark[e] = true;
            }
            mark
        };

        let (sectors, sector_of) = components_avoiding(ball, &in_class, None);
        let mut carrier: Vec<usize> = edges
            .iter()
            .flat_map(|&e| [ball.edges()[e].a, ball.edges()[e].b])
            .collect();
        carrier.sort_unstable();
        carrier.dedup();
        let carrier_set: std::collections::HashSet<usize> = carrier.iter().copied().collect();
        let (fibres, _) = components_avoiding(ball, &in_class, Some(&carrier_set));

        let delta = sector_metric(ball, &edges, &sectors, &sector_of);
        out.push(Hyperplane { id, label, edges, sectors, sector_of, carrier, fibres, delta });
    }
    out
}

fn directed_exponent(ball: &QmBall, edge: usize, from: usize) -> i64 {
    let e = &ball.edges()[edge];
    if e.a == from {
        e.exponent
    } else {
        let nu = ball.weighted().weight(e.label) as i64;
        (nu - e.exponent) % nu
    }
}

/// Connected components of the ball (or of `restrict`) using only edges
/// outside the class. Returns components ordered by least vertex and a
/// component index per vertex (unrestricted case).
fn components_avoiding(
    ball: &QmBall,
    in_class: &[bool],
    restrict: Option<&std::collections::HashSet<usize>>,
) -> (Vec<Vec<usize>>, Vec<u32>) {
    let n = ball.vertex_count();
    let allowed = |v: usize| restrict.is_none_or(|r| r.contains(&v));
    let mut comp_of = vec![u32::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if !allowed(start) || comp_of[start] != u32::MAX {
            continue;
        }
        let id = comps.len() as u32;
        let mut members = vec![start];
        comp_of[start] = id;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, e) in ball.neighbors(x) {
                if in_class[e] || !allowed(y) || comp_of[y] != u32::MAX {
                    continue;
                }
                comp_of[y] = id;
                members.push(y);
                stack.push(y);
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    (comps, comp_of)
}

/// Distance between sectors, measured inside one clique of the class: each
/// sector holds exactly one vertex of the clique, and the edge weights of
/// the clique provide the factor word metric.
fn sector_metric(
    ball: &QmBall,
    edges: &[usize],
    sectors: &[Vec<usize>],
    sector_of: &[u32],
) -> Vec<Vec<u32>> {
    let first = &ball.edges()[edges[0]];
    let (a, u) = (first.a, first.label);
    let mut clique: Vec<usize> = vec![a];
    for &(y, e) in ball.neighbors(a) {
        if ball.edges()[e].label == u {
            clique.push(y);
        }
    }
    let mut rep = vec![usize::MAX; sectors.len()];
    for &c in &clique {
        let s = sector_of[c] as usize;
        debug_assert!(rep[s] == usize::MAX, "one clique vertex per sector");
        rep[s] = c;
    }
    let mut delta = vec![vec![0u32; sectors.len()]; sectors.len()];
    for s1 in 0..sectors.len() {
        for s2 in 0..sectors.len() {
            if s1 == s2 {
                continue;
            }
            let (r1, r2) = (rep[s1], rep[s2]);
            debug_assert!(r1 != usize::MAX && r2 != usize::MAX, "sector misses the clique");
            let e = ball.edge_between(r1, r2).expect("clique vertices are adjacent");
            delta[s1][s2] = ball.edges()[e].weight;
        }
    }
    delta
}

fn check_admissible(ball: &QmBall, v: usize, what: &str) -> Result<()> {
    if !ball.in_reliable_core(v) {
        return Err(Error::input(format!(
            "{what} vertex is too close to the ball boundary: depth {} exceeds radius/2 = {}",
            ball.depth(v),
            ball.radius() / 2
        )));
    }
    Ok(())
}

/// Number of hyperplanes separating `x` from `y`; checked against the BFS
/// distance, which it must equal.
pub fn separating_hyperplane_distance(
    ball: &QmBall,
    hyps: &[Hyperplane],
    x: usize,
    y: usize,
) -> Result<u32> {
    check_admissible(ball, x, "source")?;
    check_admissible(ball, y, "target")?;
    let separating =
        hyps.iter().filter(|h| h.sector_of[x] != h.sector_of[y]).count() as u32;
    let bfs = ball.bfs_distances(x)[y];
    assert_eq!(
        separating, bfs,
        "separating-hyperplane count must equal the BFS distance"
    );
    Ok(separating)
}

/// Local-metric distance between `x` and `y`: the weighted shortest path,
/// checked against the sum over separating hyperplanes of the projected
/// clique distance and against the standard word length of x⁻¹y.
pub fn delta_distance(ball: &QmBall, hyps: &[Hyperplane], x: usize, y: usize) -> Result<u64> {
    check_admissible(ball, x, "source")?;
    check_admissible(ball, y, "target")?;
    let weighted = ball.weighted_distances(x)[y];
    let by_hyperplanes: u64 = hyps
        .iter()
        .map(|h| h.delta[h.sector_of[x] as usize][h.sector_of[y] as usize] as u64)
        .sum();
    let pres = ball.weighted().presentation();
    let algebraic = ball
        .vertex(x)
        .inverse(pres)
        .mul(pres, ball.vertex(y))
        .standard_length(pres);
    assert_eq!(weighted, by_hyperplanes, "delta must equal the sum of the projected distances");
    assert_eq!(weighted, algebraic, "delta must equal the standard word length");
    Ok(weighted)
}
