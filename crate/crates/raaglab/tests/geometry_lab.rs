//! Finite-scale geometry checks that cut across modules: standard Cayley
//! balls of right-angled Artin groups, coset separators, clique structure
//! of quasi-median balls, and variable thickening.

use std::sync::Arc;

use raaglab::graph::{Presentation, SimpleGraph, WeightedGraph};
use raaglab::qm::{build_ball, hyperplanes};
use raaglab::separation::{
    check_witness, coarse_components, variable_thickening, MetricGraph, SeparationWitness,
};
use raaglab::words::NormalForm;

/// Independent quadratic-time closure: pairwise distances, then the
/// transitive closure of "within k".
fn closure_components(x: &MetricGraph, survivors: &[usize], k: u64) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; x.vertex_count()];
    let dist: std::collections::BTreeMap<usize, Vec<u64>> =
        survivors.iter().map(|&v| (v, x.distances_from(&[v]))).collect();
    for &start in survivors {
        if assigned[start] {
            continue;
        }
        let mut class = vec![start];
        assigned[start] = true;
        loop {
            let mut grew = false;
            for &w in survivors {
                if assigned[w] {
                    continue;
                }
                if class.iter().any(|&v| dist[&v][w] <= k) {
                    class.push(w);
                    assigned[w] = true;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

#[test]
fn vertical_coset_separates_the_product_of_free_groups() {
    // A(C4) is F2 x F2; the vertical fiber is the parabolic on {b, d}
    let pres = Arc::new(Presentation::raag(SimpleGraph::cycle(4)));
    let (ball, elements) = MetricGraph::standard_cayley_ball(&pres, 4, None).unwrap();
    let vertical = pres.graph().mask_of(&["b", "d"]).unwrap();
    let z: Vec<usize> = (0..ball.vertex_count())
        .filter(|&v| elements[v].supported_on(vertical))
        .collect();
    let ambient: Vec<usize> = (0..ball.vertex_count()).collect();

    let components = coarse_components(&ball, &ambient, &z, 1, 1);
    assert!(components.len() >= 2, "the thickened fiber must coarsely separate");

    // quadratic-time closure oracle over the same survivors
    let z_dist = ball.distances_from(&z);
    let survivors: Vec<usize> =
        ambient.iter().copied().filter(|&v| z_dist[v] > 1).collect();
    let expected = closure_components(&ball, &survivors, 1);
    assert_eq!(components, expected, "component partition must match the closure oracle");
}

#[test]
fn cyclic_coset_witness_in_the_p3_group() {
    // A(P3) = Z x F2: the <b> coset cuts the a-side from the c-side
    let pres = Arc::new(Presentation::raag(SimpleGraph::path(3)));
    let (ball, elements) = MetricGraph::standard_cayley_ball(&pres, 4, None).unwrap();
    let b_axis = pres.graph().mask_of(&["b"]).unwrap();
    let z: Vec<usize> = (0..ball.vertex_count())
        .filter(|&v| elements[v].supported_on(b_axis))
        .collect();
    let ambient: Vec<usize> = (0..ball.vertex_count()).collect();
    let components = coarse_components(&ball, &ambient, &z, 1, 0);
    assert!(components.len() >= 2);

    // pick the components holding a^4 and c^4 and exhibit them as a witness
    let locate = |name: &str| {
        let target = NormalForm::from_named(&pres, &[(name.to_owned(), 4)]).unwrap();
        let idx = elements.iter().position(|e| *e == target).expect("deep element in ball");
        components
            .iter()
            .position(|c| c.contains(&idx))
            .map(|ci| (ci, idx))
            .expect("deep element survives")
    };
    let (ca, deep_a) = locate("a");
    let (cc, deep_c) = locate("c");
    assert_ne!(ca, cc, "the a-side and c-side fall in different components");
    let witness = SeparationWitness {
        separator: z,
        k: 1,
        l: 0,
        d: 3,
        components: vec![components[ca].clone(), components[cc].clone()],
        deep_points: vec![deep_a, deep_c],
    };
    assert!(check_witness(&ball, &witness, &ambient, false).unwrap());
    // demanding more depth than the ball holds flips the witness
    let greedy = SeparationWitness { d: 5, ..witness };
    assert!(!check_witness(&ball, &greedy, &ambient, false).unwrap());
}

#[test]
fn cliques_of_the_ball_are_factor_cosets() {
    for (graph, nu) in [
        (SimpleGraph::path(3), 3u32),
        (SimpleGraph::cycle(4), 2),
        (SimpleGraph::from_indices(2, &[]).unwrap(), 3),
    ] {
        let weighted = WeightedGraph::uniform(graph, nu).unwrap();
        let ball = build_ball(&weighted, 3, None).unwrap();
        for v in (0..ball.vertex_count()).filter(|&v| ball.in_reliable_core(v)) {
            // no mixed-label triangles: maximal cliques carry one factor
            let nbrs = ball.neighbors(v).to_vec();
            for (i, &(y, e1)) in nbrs.iter().enumerate() {
                for &(z, e2) in &nbrs[i + 1..] {
                    let (l1, l2) = (ball.edges()[e1].label, ball.edges()[e2].label);
                    if l1 != l2 {
                        assert!(
                            ball.edge_between(y, z).is_none(),
                            "mixed-label triangle at vertex {v}"
                        );
                    }
                }
            }
            // and each single-label neighbourhood closes up into a clique
            for u in 0..ball.weighted().graph().vertex_count() {
                let members: Vec<usize> = nbrs
                    .iter()
                    .filter(|&&(_, e)| ball.edges()[e].label == u)
                    .map(|&(y, _)| y)
                    .collect();
                for (i, &y) in members.iter().enumerate() {
                    for &z in &members[i + 1..] {
                        assert!(ball.edge_between(y, z).is_some(), "coset clique not complete");
                    }
                }
            }
        }
    }
}

#[test]
fn hyperplane_labels_are_constant_on_every_ball() {
    for (graph, nu) in [(SimpleGraph::path(3), 3u32), (SimpleGraph::cycle(4), 3)] {
        let weighted = WeightedGraph::uniform(graph, nu).unwrap();
        let ball = build_ball(&weighted, 3, None).unwrap();
        for h in hyperplanes(&ball) {
            assert!(h.edges.iter().all(|&e| ball.edges()[e].label == h.label));
            assert_eq!(h.sectors.len(), nu as usize);
        }
    }
}

#[test]
fn standard_length_matches_cayley_ball_distance() {
    // the word-metric formula vs breadth-first search over the standard
    // generators, on every element of a radius-4 ball
    let mut presentations = vec![
        Presentation::raag(SimpleGraph::cycle(4)),
        Presentation::raag(SimpleGraph::from_indices(2, &[]).unwrap()),
    ];
    let mixed: std::collections::BTreeMap<String, u32> =
        [("a".to_owned(), 5), ("b".to_owned(), 2)].into_iter().collect();
    presentations
        .push(Presentation::new(SimpleGraph::from_indices(2, &[(0, 1)]).unwrap(), &mixed).unwrap());
    for pres in presentations {
        let pres = Arc::new(pres);
        let (ball, elements) = MetricGraph::standard_cayley_ball(&pres, 4, None).unwrap();
        let dist = ball.distances_from(&[0]);
        for (v, element) in elements.iter().enumerate() {
            assert_eq!(dist[v], element.standard_length(&pres), "element {element:?}");
        }
    }
}

#[test]
fn diagonal_pair_in_the_triangle_product() {
    let weighted =
        WeightedGraph::uniform(SimpleGraph::from_indices(2, &[(0, 1)]).unwrap(), 3).unwrap();
    let ball = build_ball(&weighted, 4, None).unwrap();
    let hyps = hyperplanes(&ball);
    let pres = ball.weighted().presentation().clone();
    let at = |pairs: &[(&str, i64)]| {
        let named: Vec<(String, i64)> = pairs.iter().map(|&(v, e)| (v.to_owned(), e)).collect();
        ball.index_of(&NormalForm::from_named(&pres, &named).unwrap()).unwrap()
    };
    let ab = at(&[("a", 1), ("b", 1)]);
    let a2b2 = at(&[("a", 2), ("b", 2)]);
    assert_eq!(
        raaglab::qm::separating_hyperplane_distance(&ball, &hyps, ab, a2b2).unwrap(),
        2,
        "both hyperplanes separate the diagonal pair"
    );
}

#[test]
fn variable_thickening_grows_with_the_radius_function() {
    let grid = MetricGraph::grid_ball(6);
    let base = grid.index_of("0,0").unwrap();
    let z: Vec<usize> = (-6i64..=6)
        .map(|i| grid.index_of(&format!("{i},0")).unwrap())
        .collect();
    // a slowly growing allowance: roughly log log of the distance
    let slow = |d: u64| (64 - (d + 2).leading_zeros() as u64).ilog2() as u64;
    let thick_slow = variable_thickening(&grid, base, &z, slow);
    let thick_flat = variable_thickening(&grid, base, &z, |_| 0);
    let thick_linear = variable_thickening(&grid, base, &z, |d| d);
    assert_eq!(thick_flat.len(), z.len());
    assert!(thick_flat.len() <= thick_slow.len());
    assert!(thick_slow.len() <= thick_linear.len());
    // the flat thickening is the set itself; the slow one stays near the line
    let from_line = grid.distances_from(&z);
    assert!(thick_slow.iter().all(|&v| from_line[v] <= 3));
}
