//! Invasive subgraphs of a ball: construction by sector selection and
//! identification with the ball of a reweighted product.

use std::collections::BTreeMap;

use crate::graph::WeightedGraph;
use crate::qm::{build_ball, Hyperplane, QmBall};
use crate::words::NormalForm;
use crate::{Error, Result};

/// For every hyperplane of the ball, a choice of at least two sectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorSelection {
    /// `chosen[h]` lists sector indices of hyperplane `h`, ascending.
    pub chosen: Vec<Vec<usize>>,
}

impl SectorSelection {
    /// Selects the sectors with the given indices at every hyperplane,
    /// skipping indices a hyperplane does not have.
    pub fn uniform_indices(hyps: &[Hyperplane], indices: &[usize]) -> Self {
        let chosen = hyps
            .iter()
            .map(|h| {
                let mut sel: Vec<usize> =
                    indices.iter().copied().filter(|&i| i < h.sectors.len()).collect();
                sel.sort_unstable();
                sel.dedup();
                sel
            })
            .collect();
        SectorSelection { chosen }
    }

    /// Selects every sector of every hyperplane.
    pub fn all(hyps: &[Hyperplane]) -> Self {
        SectorSelection { chosen: hyps.iter().map(|h| (0..h.sectors.len()).collect()).collect() }
    }
}

/// The subgraph induced by one chosen union of sectors per hyperplane.
#[derive(Debug, Clone)]
pub struct InvasiveSubgraph {
    /// Ball vertex ids, ascending.
    pub vertices: Vec<usize>,
}

/// Intersects the chosen sector unions over all hyperplanes and returns
/// the induced subgraph. The result is convex and meets every clique in
/// zero or at least two vertices; those facts, and the thickness of each
/// crossing hyperplane being the selection size, are asserted on the
/// reliable core.
pub fn construct_invasive(
    ball: &QmBall,
    hyps: &[Hyperplane],
    sel: &SectorSelection,
) -> Result<InvasiveSubgraph> {
    if sel.chosen.len() != hyps.len() {
        return Err(Error::input(format!(
            "selection covers {} hyperplanes, ball has {}",
            sel.chosen.len(),
            hyps.len()
        )));
    }
    for (h, chosen) in hyps.iter().zip(&sel.chosen) {
        if chosen.len() < 2 {
            return Err(Error::input(format!(
                "hyperplane {} needs at least two chosen sectors",
                h.id
            )));
        }
        if chosen.iter().any(|&s| s >= h.sectors.len()) {
            return Err(Error::input(format!("hyperplane {} has no such sector", h.id)));
        }
    }

    let vertices: Vec<usize> = (0..ball.vertex_count())
        .filter(|&v| {
            hyps.iter()
                .zip(&sel.chosen)
                .all(|(h, chosen)| chosen.contains(&(h.sector_of[v] as usize)))
        })
        .collect();
    let z = InvasiveSubgraph { vertices };
    assert_invasive_on_core(ball, hyps, sel, &z);
    Ok(z)
}

fn assert_invasive_on_core(
    ball: &QmBall,
    hyps: &[Hyperplane],
    sel: &SectorSelection,
    z: &InvasiveSubgraph,
) {
    let member = membership(ball, z);
    let core: Vec<usize> =
        z.vertices.iter().copied().filter(|&v| ball.in_reliable_core(v)).collect();

    // convexity: intervals between core members stay inside
    for (i, &x) in core.iter().enumerate() {
        let dx = ball.bfs_distances(x);
        for &y in &core[i + 1..] {
            let d = dx[y];
            let dy = ball.bfs_distances(y);
            for v in 0..ball.vertex_count() {
                if dx[v] != u32::MAX && dy[v] != u32::MAX && dx[v] + dy[v] == d {
                    assert!(member[v], "interval vertex escapes the sector intersection");
                }
            }
        }
    }

    // clique condition: cliques met once would break invasiveness
    for &v in &core {
        for u in 0..ball.weighted().graph().vertex_count() {
            let mut clique = vec![v];
            for &(y, e) in ball.neighbors(v) {
                if ball.edges()[e].label == u {
                    clique.push(y);
                }
            }
            if clique.len() < 2 {
                continue;
            }
            let hit = clique.iter().filter(|&&c| member[c]).count();
            assert!(hit == 0 || hit >= 2, "clique met exactly once");
        }
    }

    // thickness of every crossing hyperplane equals the selection size
    for (h, chosen) in hyps.iter().zip(&sel.chosen) {
        let crossing = h.edges.iter().any(|&e| {
            let edge = &ball.edges()[e];
            member[edge.a] && member[edge.b]
        });
        if crossing {
            let met = (0..h.sectors.len())
                .filter(|&s| h.sectors[s].iter().any(|&v| member[v]))
                .count();
            assert_eq!(met, chosen.len(), "thickness must equal the selection size");
        }
    }
}

fn membership(ball: &QmBall, z: &InvasiveSubgraph) -> Vec<bool> {
    let mut member = vec![false; ball.vertex_count()];
    for &v in &z.vertices {
        member[v] = true;
    }
    member
}

/// The identification of an invasive subgraph with a reweighted ball.
#[derive(Debug, Clone)]
pub struct Identification {
    /// Weight per vertex of Γ that labels a crossing hyperplane: the
    /// common thickness of those hyperplanes in the subgraph.
    pub weights: BTreeMap<String, u32>,
    /// The reweighted product on the crossing labels.
    pub target: WeightedGraph,
    /// Anchor vertex of the subgraph (deterministic stand-in for the gate
    /// of the ball center).
    pub base_point: usize,
    /// The label map: subgraph vertex to element of the reweighted product.
    pub phi: BTreeMap<usize, NormalForm>,
    /// Syllable radius of the matched ball of the reweighted product.
    pub image_radius: u32,
}

/// Reads the weighted graph off a regular invasive subgraph and verifies,
/// via the geodesic label map, that the subgraph is isomorphic to the ball
/// of the corresponding reweighted product.
pub fn identify_invasive(
    ball: &QmBall,
    hyps: &[Hyperplane],
    z: &InvasiveSubgraph,
    regular_colour_check: bool,
) -> Result<Identification> {
    if z.vertices.is_empty() {
        return Err(Error::input("cannot identify an empty subgraph"));
    }
    let member = membership(ball, z);
    let gamma = ball.weighted().graph();

    // thickness per crossing hyperplane
    let mut thickness: Vec<Option<usize>> = vec![None; hyps.len()];
    for (hi, h) in hyps.iter().enumerate() {
        let met = (0..h.sectors.len())
            .filter(|&s| h.sectors[s].iter().any(|&v| member[v]))
            .count();
        if met >= 2 {
            thickness[hi] = Some(met);
        }
    }

    // colour regularity
    let mut weight_of_label: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (hi, t) in thickness.iter().enumerate() {
        let Some(t) = *t else { continue };
        let label = hyps[hi].label;
        match weight_of_label.get(&label) {
            None => {
                weight_of_label.insert(label, (t, hi));
            }
            Some(&(t0, hi0)) if t0 != t
                && regular_colour_check => {
                    return Err(Error::NotRegular {
                        label: gamma.name(label).to_owned(),
                        first: hi0,
                        second: hi,
                        first_thickness: t0,
                        second_thickness: t,
                    });
                }
            _ => {}
        }
    }
    if weight_of_label.is_empty() {
        return Err(Error::input("subgraph crosses no hyperplane; nothing to identify"));
    }

    let crossing_labels: Vec<usize> = weight_of_label.keys().copied().collect();
    let target_graph = {
        let names: Vec<String> = crossing_labels.iter().map(|&u| gamma.name(u).to_owned()).collect();
        gamma.induced_subgraph(&names)?
    };
    let weights: BTreeMap<String, u32> = weight_of_label
        .iter()
        .map(|(&u, &(t, _))| (gamma.name(u).to_owned(), t as u32))
        .collect();
    let target = WeightedGraph::new(target_graph, &weights)?;
    let target_pres = target.presentation().clone();

    // anchor: closest subgraph vertex to the ball center
    let base_point = *z
        .vertices
        .iter()
        .min_by_key(|&&v| (ball.depth(v), v))
        .expect("nonempty subgraph");

    // sector coordinates per crossing hyperplane: the anchor's sector gets
    // exponent 0, the others follow in sector order
    let mut coord: Vec<BTreeMap<u32, i64>> = vec![BTreeMap::new(); hyps.len()];
    for (hi, h) in hyps.iter().enumerate() {
        if thickness[hi].is_none() {
            continue;
        }
        let met: Vec<u32> = (0..h.sectors.len() as u32)
            .filter(|&s| h.sectors[s as usize].iter().any(|&v| member[v]))
            .collect();
        let anchor_sector = h.sector_of[base_point];
        let mut exponent = 1i64;
        for s in met {
            if s == anchor_sector {
                coord[hi].insert(s, 0);
            } else {
                coord[hi].insert(s, exponent);
                exponent += 1;
            }
        }
    }

    // label words along a BFS tree of the subgraph
    let index_in_target: BTreeMap<usize, usize> = crossing_labels
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, i))
        .collect();
    let edge_hyperplane: Vec<usize> = {
        let mut of = vec![usize::MAX; ball.edges().len()];
        for (hi, h) in hyps.iter().enumerate() {
            for &e in &h.edges {
                of[e] = hi;
            }
        }
        of
    };
    let mut phi: BTreeMap<usize, NormalForm> = BTreeMap::new();
    phi.insert(base_point, NormalForm::identity());
    let mut queue = std::collections::VecDeque::from([base_point]);
    let mut image_radius = 0u32;
    while let Some(x) = queue.pop_front() {
        let wx = phi[&x].clone();
        for &(y, e) in ball.neighbors(x) {
            if !member[y] || phi.contains_key(&y) {
                continue;
            }
            let hi = edge_hyperplane[e];
            let to = coord[hi][&hyps[hi].sector_of[y]];
            let from = coord[hi][&hyps[hi].sector_of[x]];
            let u_target = index_in_target[&hyps[hi].label];
            let nu = target.weight(u_target) as i64;
            let wy = wx.mul_syllable(&target_pres, u_target, (to - from).rem_euclid(nu));
            image_radius = image_radius.max(wy.syllable_length() as u32);
            phi.insert(y, wy);
            queue.push_back(y);
        }
    }
    if phi.len() != z.vertices.len() {
        return Err(Error::input("subgraph is not connected; not invasive"));
    }

    // isomorphism check against the matched ball of the reweighted product
    let expected = build_ball(&target, image_radius, None)?;
    if expected.vertex_count() != z.vertices.len() {
        return Err(Error::input(format!(
            "subgraph has {} vertices but the expected ball has {}",
            z.vertices.len(),
            expected.vertex_count()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for w in phi.values() {
        if expected.index_of(w).is_none() || !seen.insert(w.clone()) {
            return Err(Error::input("label map is not a bijection onto the expected ball"));
        }
    }
    // edges must correspond exactly in both directions
    let mut z_edges = 0usize;
    for edge in ball.edges() {
        if member[edge.a] && member[edge.b] {
            z_edges += 1;
            let (wa, wb) = (&phi[&edge.a], &phi[&edge.b]);
            let (ia, ib) = (
                expected.index_of(wa).expect("image vertex"),
                expected.index_of(wb).expect("image vertex"),
            );
            if expected.edge_between(ia, ib).is_none() {
                return Err(Error::input("label map does not preserve adjacency"));
            }
        }
    }
    if z_edges != expected.edges().len() {
        return Err(Error::input(format!(
            "subgraph has {} edges but the expected ball has {}",
            z_edges,
            expected.edges().len()
        )));
    }

    Ok(Identification { weights, target, base_point, phi, image_radius })
}
