//! Constructive decomposition of triangle-free unpinched graphs, the
//! attachment moves that preserve being unpinched, and the copy-gluing
//! surgery that trades triangles for extra paths.

use serde::{Deserialize, Serialize};

use crate::graph::{bits, SimpleGraph};
use crate::splitting::{is_unpinched, mask_is_cycle};
use crate::{Error, Result};

/// Outcome of [`unpinched_decomposition`] on a triangle-free unpinched graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum UnpinchedDecomposition {
    /// Removing `vertex` leaves an unpinched graph.
    VertexRemoval { vertex: String },
    /// `separator` splits the graph into `parts`, and every part together
    /// with the separator induces an unpinched graph.
    Separator { separator: Vec<String>, parts: Vec<Vec<String>> },
    /// The graph is a cycle of length at least four.
    Cycle,
}

/// An attachment in the sense of the growth moves: an induced path with
/// both endpoints in the core, or a single outside vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Attachment {
    Path(Vec<String>),
    Vertex(String),
}

/// True iff attaching `attachment` to the unpinched induced subgraph on
/// `core` is guaranteed to stay unpinched: an induced path whose endpoints
/// are non-adjacent core vertices and whose interior avoids the core, or a
/// vertex whose neighbourhood in the core is not complete.
///
/// On a positive answer the enlarged subgraph is checked to be unpinched.
pub fn attach_preserves_unpinched(
    host: &SimpleGraph,
    core: &[String],
    attachment: &Attachment,
) -> Result<bool> {
    let core_mask = host.mask_of(core)?;
    if !is_unpinched(&host.induced_by_mask(core_mask)) {
        return Err(Error::input("core does not induce an unpinched subgraph"));
    }
    let ok = match attachment {
        Attachment::Vertex(v) => {
            let vi = host.index_of(v)?;
            if core_mask & (1 << vi) != 0 {
                false
            } else {
                let nbrs_in_core = host.neighbors_mask(vi) & core_mask;
                nbrs_in_core != 0 && !host.is_complete_on(nbrs_in_core)
            }
        }
        Attachment::Path(path) => {
            let idx: Vec<usize> = path
                .iter()
                .map(|v| host.index_of(v))
                .collect::<Result<Vec<_>>>()?;
            path_attachment_ok(host, core_mask, &idx)
        }
    };
    if ok {
        let extra = match attachment {
            Attachment::Vertex(v) => 1u64 << host.index_of(v)?,
            Attachment::Path(path) => host.mask_of(path)?,
        };
        let enlarged = host.induced_by_mask(core_mask | extra);
        assert!(
            is_unpinched(&enlarged),
            "attachment hypotheses held but the enlarged subgraph is pinched"
        );
    }
    Ok(ok)
}

fn path_attachment_ok(host: &SimpleGraph, core_mask: u64, idx: &[usize]) -> bool {
    let k = idx.len();
    if k < 3 {
        return false;
    }
    let mask = idx.iter().fold(0u64, |m, &i| m | (1 << i));
    if mask.count_ones() as usize != k {
        return false;
    }
    // induced path over its own vertices
    for a in 0..k {
        for b in a + 1..k {
            if host.adjacent(idx[a], idx[b]) != (b == a + 1) {
                return false;
            }
        }
    }
    let (start, end) = (idx[0], idx[k - 1]);
    if core_mask & (1 << start) == 0 || core_mask & (1 << end) == 0 {
        return false;
    }
    if host.adjacent(start, end) {
        return false;
    }
    idx[1..k - 1].iter().all(|&i| core_mask & (1 << i) == 0)
}

/// Deterministic shortest path inside `allowed` from the vertex set
/// `sources` to `targets`, as a vertex list. BFS explores vertices in
/// declaration order so ties break reproducibly.
fn shortest_path_between(
    g: &SimpleGraph,
    allowed: u64,
    sources: u64,
    targets: u64,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in bits(sources & allowed) {
        dist[s] = 0;
        parent[s] = s;
        queue.push_back(s);
    }
    let mut hit = None;
    'bfs: while let Some(x) = queue.pop_front() {
        if targets & (1 << x) != 0 {
            hit = Some(x);
            break 'bfs;
        }
        for y in bits(g.neighbors_mask(x) & allowed) {
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut cur = hit?;
    let mut path = vec![cur];
    while parent[cur] != cur {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Grows a maximal proper induced unpinched subgraph containing `seed`,
/// greedily by attachment moves, then certifies maximality exhaustively
/// (no proper induced unpinched subgraph strictly contains the result).
fn maximal_proper_unpinched(g: &SimpleGraph, seed: u64) -> u64 {
    let full = g.full_mask();
    let mut current = seed;
    'grow: loop {
        // single vertices first
        for v in bits(full & !current) {
            let nbrs = g.neighbors_mask(v) & current;
            if nbrs != 0 && !g.is_complete_on(nbrs) && (current | (1 << v)) != full {
                current |= 1 << v;
                continue 'grow;
            }
        }
        // then paths through the complement, shortest first by construction
        let members: Vec<usize> = bits(current).collect();
        for (ai, &a) in members.iter().enumerate() {
            for &b in &members[ai + 1..] {
                if g.adjacent(a, b) {
                    continue;
                }
                let outside = full & !current;
                let from = g.neighbors_mask(a) & outside;
                let to = g.neighbors_mask(b) & outside;
                if from == 0 || to == 0 {
                    continue;
                }
                if let Some(path) = shortest_path_between(g, outside, from, to) {
                    let pmask = path.iter().fold(0u64, |m, &i| m | (1 << i));
                    // interior-to-core edges may exist; only accept genuine
                    // induced-path attachments
                    let mut idx = vec![a];
                    idx.extend(&path);
                    idx.push(b);
                    if path_attachment_ok(g, current, &idx) && (current | pmask) != full {
                        current |= pmask;
                        continue 'grow;
                    }
                }
            }
        }
        break;
    }
    // exhaustive maximality certificate over induced supergraphs
    let rest: Vec<usize> = bits(full & !current).collect();
    debug_assert!(!rest.is_empty());
    let mut best = current;
    let mut best_size = 0u32;
    for extra in 1u64..(1 << rest.len()) {
        let add = bits(extra).fold(0u64, |m, i| m | (1 << rest[i]));
        let candidate = current | add;
        if candidate == full || add.count_ones() <= best_size {
            continue;
        }
        if is_unpinched(&g.induced_by_mask(candidate)) {
            best = candidate;
            best_size = add.count_ones();
        }
    }
    best
}

/// Decomposes a triangle-free unpinched graph per the constructive proof:
/// cycles are terminal; otherwise grow a maximal proper unpinched subgraph
/// around an induced cycle and read the separator or removable vertex off
/// the way the rest of the graph attaches to it.
pub fn unpinched_decomposition(g: &SimpleGraph) -> Result<UnpinchedDecomposition> {
    if !g.is_triangle_free() {
        return Err(Error::input("unpinched_decomposition requires a triangle-free graph"));
    }
    if !is_unpinched(g) {
        return Err(Error::input("unpinched_decomposition requires an unpinched graph"));
    }
    let full = g.full_mask();
    if mask_is_cycle(g, full) {
        return Ok(UnpinchedDecomposition::Cycle);
    }

    let cycle = g.find_induced_cycle().expect("an unpinched non-complete graph contains a cycle");
    let seed = g.mask_of(&cycle)?;
    let core = maximal_proper_unpinched(g, seed);
    let rest = full & !core;
    debug_assert!(rest != 0);

    let outside_components = g.components_in(rest);
    if outside_components.len() >= 2 {
        // the core itself separates: each component together with it is unpinched
        let parts: Vec<Vec<String>> = outside_components.iter().map(|&c| g.names_of(c)).collect();
        let result = UnpinchedDecomposition::Separator { separator: g.names_of(core), parts };
        validate_decomposition(g, &result)?;
        return Ok(result);
    }
    if rest.count_ones() == 1 {
        // a single outside vertex: the core is the whole graph minus it and
        // is unpinched by construction
        let w = rest.trailing_zeros() as usize;
        let result = UnpinchedDecomposition::VertexRemoval { vertex: g.name(w).to_owned() };
        validate_decomposition(g, &result)?;
        return Ok(result);
    }

    // the complement is a single component; by maximality it is a shortest
    // path between the neighbourhoods of two non-adjacent frontier vertices
    let frontier: Vec<usize> = bits(core)
        .filter(|&z| g.neighbors_mask(z) & rest != 0)
        .collect();
    let mut chosen = None;
    'pairs: for (i, &q1) in frontier.iter().enumerate() {
        for &q2 in &frontier[i + 1..] {
            if !g.adjacent(q1, q2) {
                chosen = Some((q1, q2));
                break 'pairs;
            }
        }
    }
    let (q1, q2) = chosen.expect("frontier of a maximal proper unpinched subgraph is not complete");
    let a1 = g.neighbors_mask(q1) & rest;
    let a2 = g.neighbors_mask(q2) & rest;
    let gamma = shortest_path_between(g, rest, a1, a2)
        .expect("the complement of the core is connected");
    let gamma_mask = gamma.iter().fold(0u64, |m, &i| m | (1 << i));
    assert_eq!(gamma_mask, rest, "complement of a maximal core must be a single induced path");

    let interior: &[usize] = if gamma.len() >= 3 { &gamma[1..gamma.len() - 1] } else { &[] };
    let interior_mask = interior.iter().fold(0u64, |m, &i| m | (1 << i));
    let attachers: Vec<usize> = bits(core)
        .filter(|&p| g.neighbors_mask(p) & interior_mask != 0)
        .collect();

    let result = if attachers.is_empty() {
        // induced path in the core joining the frontier pair
        let gamma_prime = shortest_path_between(g, core, 1 << q1, 1 << q2)
            .expect("core is connected");
        let key = gamma_prime.iter().fold(0u64, |m, &i| m | (1 << i));
        UnpinchedDecomposition::Separator {
            separator: g.names_of(key),
            parts: vec![g.names_of(gamma_mask), g.names_of(core & !key)],
        }
    } else {
        assert_eq!(attachers.len(), 1, "interior of the path attaches to a single core vertex");
        let p = attachers[0];
        assert!(p != q1 && p != q2 && g.adjacent(p, q1) && g.adjacent(p, q2));
        let gamma_prime = shortest_path_between(g, core & !(1 << p), 1 << q1, 1 << q2)
            .expect("an unpinched core is not separated by one vertex");
        let key = gamma_prime.iter().fold(0u64, |m, &i| m | (1 << i)) | (1 << p);
        if key == core {
            UnpinchedDecomposition::VertexRemoval { vertex: g.name(p).to_owned() }
        } else {
            UnpinchedDecomposition::Separator {
                separator: g.names_of(key),
                parts: vec![g.names_of(gamma_mask), g.names_of(core & !key)],
            }
        }
    };
    validate_decomposition(g, &result)?;
    Ok(result)
}

/// Case-invariant validator, independent of the construction: vertex
/// removal leaves an unpinched graph; a separator separates and every part
/// together with it induces an unpinched graph; a cycle is a cycle of
/// length at least four.
pub fn validate_decomposition(g: &SimpleGraph, d: &UnpinchedDecomposition) -> Result<()> {
    match d {
        UnpinchedDecomposition::Cycle => {
            if !(mask_is_cycle(g, g.full_mask()) && g.vertex_count() >= 4) {
                return Err(Error::input("graph is not a cycle of length >= 4"));
            }
        }
        UnpinchedDecomposition::VertexRemoval { vertex } => {
            let v = g.index_of(vertex)?;
            let remainder = g.induced_by_mask(g.full_mask() & !(1 << v));
            if !is_unpinched(&remainder) {
                return Err(Error::input(format!("removing {vertex:?} leaves a pinched graph")));
            }
        }
        UnpinchedDecomposition::Separator { separator, parts } => {
            let key = g.mask_of(separator)?;
            if !g.separates(key, g.full_mask()) {
                return Err(Error::input("separator does not separate"));
            }
            if parts.len() < 2 {
                return Err(Error::input("separator case needs at least two parts"));
            }
            let mut union = key;
            for part in parts {
                let pm = g.mask_of(part)?;
                if pm & key != 0 || pm & union & !key != 0 {
                    return Err(Error::input("parts must partition the complement of the separator"));
                }
                union |= pm;
                if !is_unpinched(&g.induced_by_mask(pm | key)) {
                    return Err(Error::input(format!("part {part:?} with separator is pinched")));
                }
            }
            if union != g.full_mask() {
                return Err(Error::input("parts and separator do not cover the graph"));
            }
        }
    }
    Ok(())
}

/// One step of the triangle-removal surgery. For a vertex `v` on a
/// triangle of an unpinched graph, glues copies of the graph along the
/// star of `v` through shortest paths between the non-adjacent pairs in
/// its link, and returns the resulting vertex-deleted graphs: each output
/// is unpinched and has strictly fewer triangles than the input.
pub fn triangle_reduction_step(g: &SimpleGraph, v: &str) -> Result<Vec<SimpleGraph>> {
    let vi = g.index_of(v)?;
    let link = g.neighbors_mask(vi);
    let in_triangle = bits(link).any(|u| g.neighbors_mask(u) & link != 0);
    if !in_triangle {
        return Err(Error::input(format!("vertex {v:?} does not lie in a triangle")));
    }
    let link_vertices: Vec<usize> = bits(link).collect();
    let mut pairs = Vec::new();
    for (i, &x) in link_vertices.iter().enumerate() {
        for &y in &link_vertices[i + 1..] {
            if !g.adjacent(x, y) {
                pairs.push((x, y));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::input(format!(
            "link of {v:?} is complete: no non-adjacent pair to route a path through"
        )));
    }
    if !is_unpinched(g) {
        return Err(Error::input("triangle_reduction_step requires an unpinched graph"));
    }

    let without_v = g.full_mask() & !(1 << vi);
    let paths: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(x, y)| {
            shortest_path_between(g, without_v, 1 << x, 1 << y)
                .expect("an unpinched graph minus a vertex is connected")
        })
        .collect();

    let triangles_before = g.triangle_count();
    let mut outputs = Vec::new();
    for primed in [false, true] {
        for skip in 0..paths.len() {
            let out = glue_paths_and_remove(g, vi, &paths, (skip, primed))?;
            assert!(
                out.triangle_count() < triangles_before,
                "triangle count must strictly decrease"
            );
            assert!(is_unpinched(&out), "surgery output must be unpinched");
            outputs.push(out);
        }
    }
    Ok(outputs)
}

/// Builds one vertex-deleted copy: the host without `v`, plus a glued copy
/// of every path except the one native to this copy.
fn glue_paths_and_remove(
    g: &SimpleGraph,
    v: usize,
    paths: &[Vec<usize>],
    native: (usize, bool),
) -> Result<SimpleGraph> {
    let mut names: Vec<String> = bits(g.full_mask() & !(1 << v)).map(|i| g.name(i).to_owned()).collect();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| a != v && b != v)
        .map(|(a, b)| (g.name(a).to_owned(), g.name(b).to_owned()))
        .collect();
    for copy_primed in [false, true] {
        for (j, path) in paths.iter().enumerate() {
            if (j, copy_primed) == native {
                continue;
            }
            let tag = if copy_primed { format!("{}p", j + 1) } else { format!("{}", j + 1) };
            let fresh: Vec<String> = path[1..path.len() - 1]
                .iter()
                .map(|&i| format!("{}@{tag}", g.name(i)))
                .collect();
            names.extend(fresh.iter().cloned());
            let mut chain = vec![g.name(path[0]).to_owned()];
            chain.extend(fresh);
            chain.push(g.name(*path.last().unwrap()).to_owned());
            for w in chain.windows(2) {
                edges.push((w[0].clone(), w[1].clone()));
            }
        }
    }
    SimpleGraph::new(&names, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cycles_are_terminal() {
        assert_eq!(
            unpinched_decomposition(&SimpleGraph::cycle(7)).unwrap(),
            UnpinchedDecomposition::Cycle
        );
    }

    #[test]
    fn two_pentagons_split_along_the_glued_path() {
        let g = fixtures::two_pentagons();
        let d = unpinched_decomposition(&g).unwrap();
        match &d {
            UnpinchedDecomposition::Separator { separator, parts } => {
                assert_eq!(separator, &["x", "y", "z"]);
                assert_eq!(parts.len(), 2);
                for part in parts {
                    let mut piece = part.clone();
                    piece.extend(separator.iter().cloned());
                    let sub = g.induced_subgraph(&piece).unwrap();
                    assert_eq!(sub.vertex_count(), 5);
                    assert!(is_unpinched(&sub));
                }
            }
            other => panic!("expected separator case, got {other:?}"),
        }
    }

    #[test]
    fn hexagon_with_spokes_is_a_vertex_removal() {
        let g = fixtures::hexagon_spokes();
        let d = unpinched_decomposition(&g).unwrap();
        assert_eq!(d, UnpinchedDecomposition::VertexRemoval { vertex: "p".to_owned() });
    }

    #[test]
    fn pentagon_with_attachment_decomposes() {
        let g = fixtures::pentagon_with_attachment();
        let d = unpinched_decomposition(&g).unwrap();
        validate_decomposition(&g, &d).unwrap();
    }

    #[test]
    fn precondition_errors() {
        assert!(unpinched_decomposition(&SimpleGraph::complete(3)).is_err());
        assert!(unpinched_decomposition(&SimpleGraph::path(4)).is_err());
    }

    #[test]
    fn attachments_on_c4() {
        // C4 plus a pendant path between the opposite corners a and c
        let g = SimpleGraph::new(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "e"), ("e", "f"), ("f", "c")],
        )
        .unwrap();
        let core: Vec<String> = ["a", "b", "c", "d"].map(str::to_owned).to_vec();
        let path = Attachment::Path(vec!["a".into(), "e".into(), "f".into(), "c".into()]);
        assert!(attach_preserves_unpinched(&g, &core, &path).unwrap());

        // a vertex adjacent to exactly one core vertex has a complete
        // neighbourhood in the core
        let g2 = SimpleGraph::new(
            &["a", "b", "c", "d", "w"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("w", "a")],
        )
        .unwrap();
        let vertex = Attachment::Vertex("w".into());
        assert!(!attach_preserves_unpinched(&g2, &core, &vertex).unwrap());
    }

    #[test]
    fn attachment_vertex_on_c5() {
        let g = fixtures::pentagon_with_attachment();
        let core: Vec<String> = ["c1", "c2", "c3", "c4", "c5"].map(str::to_owned).to_vec();
        assert!(attach_preserves_unpinched(&g, &core, &Attachment::Vertex("w".into())).unwrap());
    }

    #[test]
    fn attachment_requires_unpinched_core() {
        let g = SimpleGraph::path(4);
        let core: Vec<String> = ["a", "b", "c"].map(str::to_owned).to_vec();
        assert!(attach_preserves_unpinched(&g, &core, &Attachment::Vertex("d".into())).is_err());
    }

    #[test]
    fn triangle_reduction_on_the_octahedron() {
        let g = fixtures::octahedron();
        let outputs = triangle_reduction_step(&g, "u1").unwrap();
        assert!(!outputs.is_empty());
        for out in &outputs {
            assert!(out.triangle_count() < g.triangle_count());
            assert!(is_unpinched(out));
        }
    }

    #[test]
    fn triangle_reduction_rejects_complete_links() {
        // a triangle with a pendant vertex: the link of "a" inside the
        // triangle is complete
        let g = SimpleGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "a"), ("a", "d")],
        )
        .unwrap();
        match triangle_reduction_step(&g, "b") {
            Err(Error::Input(msg)) => assert!(msg.contains("complete")),
            other => panic!("expected complete-link input error, got {other:?}"),
        }
    }

    #[test]
    fn iterated_reduction_reaches_triangle_free() {
        let mut g = fixtures::octahedron();
        let mut triangles = g.triangle_count();
        while triangles > 0 {
            let v = {
                let idx = (0..g.vertex_count())
                    .find(|&v| {
                        let link = g.neighbors_mask(v);
                        bits(link).any(|u| g.neighbors_mask(u) & link != 0)
                    })
                    .expect("a graph with triangles has a triangle vertex");
                g.name(idx).to_owned()
            };
            let outputs = triangle_reduction_step(&g, &v).unwrap();
            g = outputs.into_iter().next().unwrap();
            let now = g.triangle_count();
            assert!(now < triangles);
            triangles = now;
        }
        assert!(g.is_triangle_free());
        assert!(is_unpinched(&g));
    }
}
