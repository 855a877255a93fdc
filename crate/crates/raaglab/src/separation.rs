//! Finite-scale coarse-separation experiments: relative growth of a
//! family, k-coarse components after removing a thickened separator, and
//! witness checking.

use serde::{Deserialize, Serialize};

use crate::graph::Presentation;
use crate::qm::QmBall;
use crate::words::NormalForm;
use crate::{Error, Result};

/// A finite graph with nonnegative integer edge weights and a distance
/// oracle. Vertices carry names so experiment files can refer to them.
#[derive(Debug, Clone)]
pub struct MetricGraph {
    names: Vec<String>,
    adj: Vec<Vec<(usize, u32)>>,
}

impl MetricGraph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!("edge ({a},{b}) out of range")));
            }
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        Ok(MetricGraph { names, adj })
    }

    pub fn from_simple(g: &crate::graph::SimpleGraph) -> Self {
        let names = g.names().to_vec();
        let mut adj = vec![Vec::new(); names.len()];
        for (a, b) in g.edges() {
            adj[a].push((b, 1));
            adj[b].push((a, 1));
        }
        MetricGraph { names, adj }
    }

    pub fn from_ball(ball: &QmBall) -> Self {
        let pres = ball.weighted().presentation();
        let names = ball
            .vertices()
            .iter()
            .map(|nf| {
                if nf.is_identity() {
                    "1".to_owned()
                } else {
                    nf.to_named(pres)
                        .iter()
                        .map(|(v, e)| format!("{v}^{e}"))
                        .collect::<Vec<_>>()
                        .join(".")
                }
            })
            .collect();
        let mut adj = vec![Vec::new(); ball.vertex_count()];
        for e in ball.edges() {
            adj[e.a].push((e.b, 1));
            adj[e.b].push((e.a, 1));
        }
        MetricGraph { names, adj }
    }

    /// Grid ball: vertices (i, j) with |i| + |j| <= radius, unit edges.
    pub fn grid_ball(radius: i64) -> Self {
        let mut ids = std::collections::BTreeMap::new();
        let mut names = Vec::new();
        for i in -radius..=radius {
            for j in -radius..=radius {
                if i.abs() + j.abs() <= radius {
                    ids.insert((i, j), names.len());
                    names.push(format!("{i},{j}"));
                }
            }
        }
        let mut edges = Vec::new();
        for (&(i, j), &a) in &ids {
            for (di, dj) in [(1, 0), (0, 1)] {
                if let Some(&b) = ids.get(&(i + di, j + dj)) {
                    edges.push((a, b, 1));
                }
            }
        }
        MetricGraph::new(names, &edges).expect("grid ball")
    }

    /// Ball of the Cayley graph over the standard generating set (one
    /// letter per factor), with vertices named by their canonical words.
    /// This is how right-angled Artin groups enter the lab; their
    /// quasi-median balls over all factor elements would be infinite.
    pub fn standard_cayley_ball(
        pres: &Presentation,
        radius: u32,
        cap: Option<usize>,
    ) -> Result<(Self, Vec<NormalForm>)> {
        let cap = cap.unwrap_or(crate::qm::DEFAULT_VERTEX_CAP);
        let n = pres.graph().vertex_count();
        let mut elements: Vec<NormalForm> = vec![NormalForm::identity()];
        let mut index = std::collections::HashMap::new();
        index.insert(NormalForm::identity(), 0usize);
        let mut edges: Vec<(usize, usize, u32)> = Vec::new();
        let mut frontier = vec![0usize];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &i in &frontier {
                let g = elements[i].clone();
                for v in 0..n {
                    for step in [1i64, -1] {
                        let h = g.mul_syllable(pres, v, step);
                        let j = match index.get(&h) {
                            Some(&j) => j,
                            None => {
                                let j = elements.len();
                                elements.push(h.clone());
                                index.insert(h, j);
                                next.push(j);
                                j
                            }
                        };
                        if i < j {
                            edges.push((i, j, 1));
                        }
                    }
                }
            }
            if elements.len() > cap {
                return Err(Error::Resource { estimate: elements.len(), cap });
            }
            frontier = next;
        }
        let names = elements
            .iter()
            .map(|nf| {
                if nf.is_identity() {
                    "1".to_owned()
                } else {
                    nf.to_named(pres)
                        .iter()
                        .map(|(v, e)| format!("{v}^{e}"))
                        .collect::<Vec<_>>()
                        .join(".")
                }
            })
            .collect();
        Ok((MetricGraph::new(names, &edges)?, elements))
    }

    /// Ball of the infinite tree in which every vertex has `degree`
    /// neighbours, rooted at vertex 0.
    pub fn regular_tree_ball(degree: usize, radius: u32) -> Self {
        let mut names = vec!["0".to_owned()];
        let mut edges = Vec::new();
        let mut frontier = vec![0usize];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &v in &frontier {
                let children = if v == 0 { degree } else { degree - 1 };
                for _ in 0..children {
                    let id = names.len();
                    names.push(format!("{id}"));
                    edges.push((v, id, 1));
                    next.push(id);
                }
            }
            frontier = next;
        }
        MetricGraph::new(names, &edges).expect("tree ball")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::input(format!("unknown vertex {name:?}")))
    }

    /// Dijkstra distances from a set of sources.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.names.len()];
        let mut heap = std::collections::BinaryHeap::new();
        for &s in sources {
            dist[s] = 0;
            heap.push(std::cmp::Reverse((0u64, s)));
        }
        while let Some(std::cmp::Reverse((d, x))) = heap.pop() {
            if d > dist[x] {
                continue;
            }
            for &(y, w) in &self.adj[x] {
                let nd = d + w as u64;
                if nd < dist[y] {
                    dist[y] = nd;
                    heap.push(std::cmp::Reverse((nd, y)));
                }
            }
        }
        dist
    }
}

/// Relative growth of a family of vertex sets at sampled radii.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub radii: Vec<u64>,
    pub values: Vec<u64>,
    /// Regression slope of ln V(R) over the largest half of the radii.
    pub slope: f64,
    pub classification: GrowthClass,
    /// Finite samples cannot certify the limsup; the flag is advisory.
    pub caveat: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthClass {
    Exponential,
    Subexponential,
}

/// Advisory threshold on the log-growth slope: half of ln 2.
pub const GROWTH_SLOPE_THRESHOLD: f64 = 0.346_573_590_279_972_7;

/// V(R) = max over family members S and base points s of |B(s,R) ∩ S|,
/// with an advisory exponential/subexponential flag from the slope of
/// ln V over the largest half of the sampled radii.
pub fn relative_growth(
    x: &MetricGraph,
    family: &[Vec<usize>],
    radii: &[u64],
) -> Result<GrowthProfile> {
    if family.is_empty() || family.iter().any(|s| s.is_empty()) {
        return Err(Error::input("relative growth needs nonempty family members"));
    }
    for s in family {
        if let Some(&v) = s.iter().find(|&&v| v >= x.vertex_count()) {
            return Err(Error::input(format!("family vertex {v} out of range")));
        }
    }
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let mut values = vec![0u64; radii.len()];
    for member in family {
        for &base in member {
            let dist = x.distances_from(&[base]);
            for (i, &radius) in radii.iter().enumerate() {
                let count = member.iter().filter(|&&v| dist[v] <= radius).count() as u64;
                values[i] = values[i].max(count);
            }
        }
    }

    let half = radii.len().div_ceil(2);
    let tail: Vec<(f64, f64)> = radii[radii.len() - half..]
        .iter()
        .zip(&values[radii.len() - half..])
        .map(|(&r, &v)| (r as f64, (v.max(1) as f64).ln()))
        .collect();
    let slope = regression_slope(&tail);
    let classification = if slope > GROWTH_SLOPE_THRESHOLD {
        GrowthClass::Exponential
    } else {
        GrowthClass::Subexponential
    };
    Ok(GrowthProfile {
        radii,
        values,
        slope,
        classification,
        caveat: "finite-scale classification; the asymptotic limsup is not certified".to_owned(),
    })
}

fn regression_slope(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < f64::EPSILON {
        0.0
    } else {
        (n * sxy - sx * sy) / denom
    }
}

/// Thickening with a distance-dependent radius: the union of the balls
/// B(z, r(d(base, z))) over z in the set. The radius function is caller
/// supplied; a slowly growing one keeps the thickened set's growth close
/// to the original.
pub fn variable_thickening(
    x: &MetricGraph,
    base: usize,
    z: &[usize],
    radius_at: impl Fn(u64) -> u64,
) -> Vec<usize> {
    let from_base = x.distances_from(&[base]);
    let mut member = vec![false; x.vertex_count()];
    for &s in z {
        let allowance = radius_at(from_base[s]);
        let dist = x.distances_from(&[s]);
        for v in 0..x.vertex_count() {
            if dist[v] <= allowance {
                member[v] = true;
            }
        }
    }
    (0..x.vertex_count()).filter(|&v| member[v]).collect()
}

/// Partition of `ambient` minus the L-neighbourhood of `z` into classes of
/// the transitive closure of "distance at most k in the ambient graph".
/// Classes are ordered by least vertex.
pub fn coarse_components(
    x: &MetricGraph,
    ambient: &[usize],
    z: &[usize],
    k: u64,
    l: u64,
) -> Vec<Vec<usize>> {
    let z_dist = if z.is_empty() { vec![u64::MAX; x.vertex_count()] } else { x.distances_from(z) };
    let mut survivors: Vec<usize> = ambient
        .iter()
        .copied()
        .filter(|&v| z_dist[v] > l)
        .collect();
    survivors.sort_unstable();
    survivors.dedup();

    let mut class_of: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &start in &survivors {
        if class_of.contains_key(&start) {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        let mut stack = vec![start];
        class_of.insert(start, id);
        while let Some(v) = stack.pop() {
            members.push(v);
            let dist = x.distances_from(&[v]);
            for &w in &survivors {
                if !class_of.contains_key(&w) && dist[w] <= k {
                    class_of.insert(w, id);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// A claimed coarse separation: separator, parameters, the components it
/// leaves, and one deep point per component.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub separator: Vec<usize>,
    pub k: u64,
    pub l: u64,
    pub d: u64,
    pub components: Vec<Vec<usize>>,
    /// One vertex per listed component, claimed to be at distance >= d
    /// from the separator.
    pub deep_points: Vec<usize>,
}

/// Verifies a witness: at least two listed components must be genuine
/// k-coarse components of `ambient` minus the thickened separator, and
/// every deep point must lie at distance >= d from the separator (from its
/// L-neighbourhood instead when `measure_to_thickened` is set).
pub fn check_witness(
    x: &MetricGraph,
    w: &SeparationWitness,
    ambient: &[usize],
    measure_to_thickened: bool,
) -> Result<bool> {
    if w.components.len() != w.deep_points.len() {
        return Err(Error::input("one deep point per component is required"));
    }
    if w.components.len() < 2 {
        return Err(Error::input("a witness needs at least two components"));
    }
    for (&p, comp) in w.deep_points.iter().zip(&w.components) {
        if !comp.contains(&p) {
            return Err(Error::input(format!("deep point {p} is not in its component")));
        }
    }
    let genuine = coarse_components(x, ambient, &w.separator, w.k, w.l);
    let genuine_sets: Vec<std::collections::BTreeSet<usize>> =
        genuine.iter().map(|c| c.iter().copied().collect()).collect();
    let matching = w
        .components
        .iter()
        .filter(|c| {
            let set: std::collections::BTreeSet<usize> = c.iter().copied().collect();
            genuine_sets.contains(&set)
        })
        .count();
    if matching < 2 {
        return Ok(false);
    }
    let z_dist = x.distances_from(&w.separator);
    let threshold = if measure_to_thickened { w.d + w.l } else { w.d };
    Ok(w.deep_points.iter().all(|&p| z_dist[p] >= threshold))
}
