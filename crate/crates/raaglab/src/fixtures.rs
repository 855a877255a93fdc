//! Named fixture graphs used across the test suites and examples.

use crate::graph::SimpleGraph;

/// Two 5-cycles glued along the induced path x-y-z. Triangle-free and
/// unpinched; the path {x,y,z} is the canonical separator of its
/// unpinched decomposition.
pub fn two_pentagons() -> SimpleGraph {
    SimpleGraph::new(
        &["x", "y", "z", "a1", "a2", "b1", "b2"],
        &[
            ("x", "y"),
            ("y", "z"),
            ("z", "a2"),
            ("a2", "a1"),
            ("a1", "x"),
            ("z", "b2"),
            ("b2", "b1"),
            ("b1", "x"),
        ],
    )
    .expect("two-pentagon fixture")
}

/// An octagon and a triangle amalgamated along one edge. Its complete-cut
/// decomposition has exactly two pieces meeting in the shared edge.
pub fn octagon_triangle() -> SimpleGraph {
    let mut edges: Vec<(String, String)> =
        (0..8).map(|i| (format!("o{}", i + 1), format!("o{}", (i + 1) % 8 + 1))).collect();
    edges.push(("t".to_owned(), "o1".to_owned()));
    edges.push(("t".to_owned(), "o2".to_owned()));
    let mut names: Vec<String> = (1..=8).map(|i| format!("o{i}")).collect();
    names.push("t".to_owned());
    SimpleGraph::new(&names, &edges).expect("octagon-triangle fixture")
}

/// A hexagon with a centre vertex joined to three pairwise non-adjacent
/// rim vertices. Triangle-free and unpinched; removing the centre leaves
/// the hexagon, so its unpinched decomposition is a vertex removal.
pub fn hexagon_spokes() -> SimpleGraph {
    SimpleGraph::new(
        &["a", "b", "c", "d", "e", "f", "p"],
        &[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "f"),
            ("f", "a"),
            ("p", "a"),
            ("p", "c"),
            ("p", "e"),
        ],
    )
    .expect("hexagon-spokes fixture")
}

/// A 5-cycle with an extra vertex attached to two non-adjacent cycle
/// vertices (a path attachment of length two). Triangle-free, unpinched.
pub fn pentagon_with_attachment() -> SimpleGraph {
    SimpleGraph::new(
        &["c1", "c2", "c3", "c4", "c5", "w"],
        &[
            ("c1", "c2"),
            ("c2", "c3"),
            ("c3", "c4"),
            ("c4", "c5"),
            ("c5", "c1"),
            ("w", "c1"),
            ("w", "c3"),
        ],
    )
    .expect("pentagon-attachment fixture")
}

/// The octahedron K_{2,2,2}: unpinched with clique number 3. Stand-in for
/// a source graph with no complete cut that neither a triangle piece nor
/// an octagon piece can absorb.
pub fn octahedron() -> SimpleGraph {
    let names = ["u1", "u2", "v1", "v2", "w1", "w2"];
    let mut edges = Vec::new();
    for a in ["u1", "u2"] {
        for b in ["v1", "v2", "w1", "w2"] {
            edges.push((a, b));
        }
    }
    for a in ["v1", "v2"] {
        for b in ["w1", "w2"] {
            edges.push((a, b));
        }
    }
    SimpleGraph::new(&names, &edges).expect("octahedron fixture")
}
