//! Complete-cut decompositions and the coarse-embedding obstruction report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{cmp_mask_lex, SimpleGraph};
use crate::{Error, Result};

/// A tree of induced pieces without complete cuts, glued along complete
/// cuts of the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutTree {
    /// Piece vertex sets, indexed by tree node.
    pub nodes: Vec<Vec<String>>,
    /// Tree edges as node index pairs.
    pub edges: Vec<(usize, usize)>,
}

/// Decomposes a connected graph into a tree of pieces without complete
/// cuts. Splits along a minimum-size separating complete subgraph
/// (lexicographic within a size), recurses on each component together
/// with the separator, and joins the subtrees at pieces containing it.
pub fn complete_cut_decomposition(g: &SimpleGraph) -> Result<CutTree> {
    if g.vertex_count() == 0 {
        return Err(Error::input("cannot decompose the empty graph"));
    }
    if !g.is_connected() {
        return Err(Error::input(
            "cannot decompose a disconnected graph; decompose its components separately",
        ));
    }
    let (pieces, edges) = decompose_mask(g, g.full_mask());
    Ok(CutTree { nodes: pieces.into_iter().map(|m| g.names_of(m)).collect(), edges })
}

fn first_complete_cut(g: &SimpleGraph, mask: u64) -> Option<u64> {
    g.complete_subsets(mask).into_iter().find(|&s| g.separates(s, mask))
}

fn decompose_mask(g: &SimpleGraph, mask: u64) -> (Vec<u64>, Vec<(usize, usize)>) {
    let Some(cut) = first_complete_cut(g, mask) else {
        return (vec![mask], Vec::new());
    };
    let mut components = g.components_in(mask & !cut);
    components.sort_by(|a, b| cmp_mask_lex(*a, *b));

    let mut pieces: Vec<u64> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // hubs[i]: node of subtree i containing the cut, preferring proper containment
    let mut hubs: Vec<usize> = Vec::new();
    for comp in &components {
        let (sub_pieces, sub_edges) = decompose_mask(g, comp | cut);
        let offset = pieces.len();
        let hub_rel = sub_pieces
            .iter()
            .position(|&p| p & cut == cut && p != cut)
            .or_else(|| sub_pieces.iter().position(|&p| p & cut == cut))
            .expect("every clique of a graph lies in some piece of its decomposition");
        pieces.extend(sub_pieces);
        edges.extend(sub_edges.iter().map(|&(a, b)| (a + offset, b + offset)));
        hubs.push(hub_rel + offset);
    }

    // Join the subtrees in a star around the first hub that properly
    // contains the cut. A hub equal to the cut cannot carry a tree edge
    // (the intersection would not be proper), so it is merged into the
    // join target instead.
    let target = hubs.iter().copied().find(|&h| pieces[h] != cut).unwrap_or(hubs[0]);
    let mut remove: Vec<usize> = Vec::new();
    for &h in &hubs {
        if h == target {
            continue;
        }
        if pieces[h] == cut {
            for e in edges.iter_mut() {
                if e.0 == h {
                    e.0 = target;
                }
                if e.1 == h {
                    e.1 = target;
                }
            }
            remove.push(h);
        } else {
            edges.push((target, h));
        }
    }
    if !remove.is_empty() {
        remove.sort_unstable();
        let mut relabel: Vec<usize> = Vec::with_capacity(pieces.len());
        let mut shift = 0;
        for i in 0..pieces.len() {
            if remove.contains(&i) {
                shift += 1;
                relabel.push(usize::MAX);
            } else {
                relabel.push(i - shift);
            }
        }
        for i in remove.into_iter().rev() {
            pieces.remove(i);
        }
        for e in edges.iter_mut() {
            *e = (relabel[e.0], relabel[e.1]);
        }
    }
    (pieces, edges)
}

/// Checks the three structural invariants of a cut tree against its host,
/// independently of how the tree was constructed: the pieces cover every
/// edge, no piece has a complete cut, and every tree edge meets in a
/// complete cut of the host properly contained in both pieces.
pub fn validate_cut_tree(g: &SimpleGraph, tree: &CutTree) -> Result<()> {
    if tree.nodes.is_empty() {
        return Err(Error::input("cut tree has no nodes"));
    }
    if tree.edges.len() + 1 != tree.nodes.len() {
        return Err(Error::input("cut tree edge count does not match a tree"));
    }
    let masks: Vec<u64> = tree.nodes.iter().map(|p| g.mask_of(p)).collect::<Result<_>>()?;

    // connectivity of the tree itself
    let mut seen = vec![false; masks.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &(a, b) in &tree.edges {
            let j = if a == i { b } else if b == i { a } else { continue };
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::input("cut tree is not connected"));
    }

    for (u, v) in g.edges() {
        let e = (1u64 << u) | (1 << v);
        if !masks.iter().any(|&m| e & m == e) {
            return Err(Error::input(format!(
                "edge ({}, {}) not covered by any piece",
                g.name(u),
                g.name(v)
            )));
        }
    }
    for (&m, piece) in masks.iter().zip(&tree.nodes) {
        if first_complete_cut(g, m).is_some() {
            return Err(Error::input(format!("piece {piece:?} has a complete cut")));
        }
    }
    for &(a, b) in &tree.edges {
        let inter = masks[a] & masks[b];
        if !g.is_complete_on(inter) {
            return Err(Error::input("tree-edge intersection is not complete"));
        }
        if !g.separates(inter, g.full_mask()) {
            return Err(Error::input("tree-edge intersection is not a cut of the host"));
        }
        if inter == masks[a] || inter == masks[b] {
            return Err(Error::input("tree-edge intersection not properly contained in both pieces"));
        }
    }
    Ok(())
}

/// Invariants of one decomposition piece, as used by the obstruction report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceInvariants {
    pub vertices: Vec<String>,
    pub vertex_count: usize,
    pub clique_number: usize,
    /// A parabolic on a non-complete piece has exponential growth.
    pub exponential_growth: bool,
}

/// Where the pieces of a source decomposition could land under a coarse
/// embedding, by invariant comparison only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub source_pieces: Vec<PieceInvariants>,
    pub target_pieces: Vec<PieceInvariants>,
    /// For every non-complete source piece, the target pieces not excluded
    /// by the invariants.
    pub admissible: BTreeMap<usize, Vec<usize>>,
    /// One line per source piece with no admissible target piece.
    pub findings: Vec<String>,
}

impl ObstructionReport {
    pub fn embedding_excluded(&self) -> bool {
        !self.findings.is_empty()
    }
}

fn piece_invariants(g: &SimpleGraph, vertices: &[String]) -> PieceInvariants {
    let induced = g.induced_subgraph(vertices).expect("piece vertices belong to host");
    PieceInvariants {
        vertices: vertices.to_vec(),
        vertex_count: vertices.len(),
        clique_number: induced.clique_number(),
        exponential_growth: !induced.is_complete(),
    }
}

fn pieces_of(g: &SimpleGraph) -> Result<Vec<PieceInvariants>> {
    let mut out = Vec::new();
    for comp in g.components_in(g.full_mask()) {
        let sub = g.induced_by_mask(comp);
        let tree = complete_cut_decomposition(&sub)?;
        out.extend(tree.nodes.iter().map(|p| piece_invariants(&sub, p)));
    }
    Ok(out)
}

/// Compares the complete-cut pieces of `source` and `target`. A coarse
/// embedding must send each non-complete source piece into a neighbourhood
/// of a coset of some target piece, so a source piece with no admissible
/// target piece rules the embedding out.
///
/// Admissibility uses cheap invariants: the clique number (top rank of an
/// abelian subgroup) must not drop, and a non-complete piece (exponential
/// growth) cannot land in a complete one (polynomial growth).
pub fn embedding_obstruction(source: &SimpleGraph, target: &SimpleGraph) -> Result<ObstructionReport> {
    if source.vertex_count() == 0 || target.vertex_count() == 0 {
        return Err(Error::input("embedding_obstruction requires nonempty graphs"));
    }
    let source_pieces = pieces_of(source)?;
    let target_pieces = pieces_of(target)?;
    let mut admissible = BTreeMap::new();
    let mut findings = Vec::new();
    for (i, sp) in source_pieces.iter().enumerate() {
        if !sp.exponential_growth {
            continue;
        }
        let hosts: Vec<usize> = target_pieces
            .iter()
            .enumerate()
            .filter(|(_, tp)| sp.clique_number <= tp.clique_number && tp.exponential_growth)
            .map(|(j, _)| j)
            .collect();
        if hosts.is_empty() {
            findings.push(format!(
                "no admissible piece: source piece {:?} (clique number {}) fits no target piece",
                sp.vertices, sp.clique_number
            ));
        }
        admissible.insert(i, hosts);
    }
    Ok(ObstructionReport { source_pieces, target_pieces, admissible, findings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unpinched_graph_is_a_single_piece() {
        let tree = complete_cut_decomposition(&SimpleGraph::cycle(5)).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert!(tree.edges.is_empty());
        validate_cut_tree(&SimpleGraph::cycle(5), &tree).unwrap();
    }

    #[test]
    fn path_splits_into_its_edges() {
        let g = SimpleGraph::path(3);
        let tree = complete_cut_decomposition(&g).unwrap();
        assert_eq!(tree.nodes, vec![vec!["a".to_owned(), "b".to_owned()], vec!["b".to_owned(), "c".to_owned()]]);
        assert_eq!(tree.edges, vec![(0, 1)]);
        validate_cut_tree(&g, &tree).unwrap();
    }

    #[test]
    fn octagon_triangle_amalgam_has_two_pieces() {
        let g = fixtures::octagon_triangle();
        let tree = complete_cut_decomposition(&g).unwrap();
        validate_cut_tree(&g, &tree).unwrap();
        assert_eq!(tree.nodes.len(), 2);
        let sizes: Vec<usize> = tree.nodes.iter().map(|p| p.len()).collect();
        assert!(sizes.contains(&8) && sizes.contains(&3), "pieces: {:?}", tree.nodes);
        let inter: Vec<&String> =
            tree.nodes[0].iter().filter(|v| tree.nodes[1].contains(v)).collect();
        assert_eq!(inter, vec!["o1", "o2"]);
    }

    #[test]
    fn obstruction_for_the_amalgam_example() {
        let source = fixtures::octahedron();
        let target = fixtures::octagon_triangle();
        let report = embedding_obstruction(&source, &target).unwrap();
        assert!(report.embedding_excluded());
        assert_eq!(report.admissible.len(), 1);
        assert!(report.admissible.values().all(|hosts| hosts.is_empty()));
    }

    #[test]
    fn every_piece_admits_itself() {
        let g = fixtures::octagon_triangle();
        let report = embedding_obstruction(&g, &g).unwrap();
        assert!(!report.embedding_excluded());
        for (i, hosts) in &report.admissible {
            assert!(hosts.contains(i));
        }
    }

    #[test]
    fn c4_fits_only_the_pentagon() {
        // source piece C4 against target pieces C5 and K3
        let c4 = SimpleGraph::cycle(4);
        let report_c5 = embedding_obstruction(&c4, &SimpleGraph::cycle(5)).unwrap();
        assert!(!report_c5.embedding_excluded());
        let report_k3 = embedding_obstruction(&c4, &SimpleGraph::complete(3)).unwrap();
        assert!(report_k3.embedding_excluded());
    }
}
