//! Rays through obstructed rooted binary trees.
//!
//! The tree is the depth-bounded rooted 2-branching tree in heap
//! numbering: the root is 1 and the children of v are 2v and 2v+1, so the
//! level of v is the position of its leading bit. Given an obstruction set
//! S, a ray is admissible if it meets S only within distance r0 of the
//! root. The spherical-growth margin Σ_{k ≥ r0} σ_S(k)/2^k controls
//! existence: the bound 1 is boundary-tight (a full sphere at any level
//! realizes it and blocks every ray), while margin ≤ 1/2 guarantees a ray.

use std::collections::BTreeSet;

use crate::{Error, Result};

/// The margin below which a ray is guaranteed to exist.
pub const SAFE_MARGIN: f64 = 0.5;
/// The boundary-tight margin: at exactly 1 a ray can fail to exist.
pub const BOUNDARY_MARGIN: f64 = 1.0;

/// Level of a heap-numbered tree vertex (root 1 has level 0).
pub fn level(v: u64) -> u32 {
    debug_assert!(v >= 1);
    63 - v.leading_zeros()
}

fn check_vertices(depth: u32, s: &BTreeSet<u64>) -> Result<()> {
    for &v in s {
        if v == 0 || level(v) > depth {
            return Err(Error::input(format!("vertex {v} is not in the depth-{depth} tree")));
        }
    }
    Ok(())
}

/// Σ_{k = r0}^{depth} σ_S(k) / 2^k, where σ_S(k) counts obstruction
/// vertices at level k.
pub fn spectral_margin(depth: u32, s: &BTreeSet<u64>, r0: u32) -> Result<f64> {
    check_vertices(depth, s)?;
    let mut counts = vec![0u64; depth as usize + 1];
    for &v in s {
        counts[level(v) as usize] += 1;
    }
    Ok((r0..=depth).map(|k| counts[k as usize] as f64 / 2f64.powi(k as i32)).sum())
}

/// Finds a root-to-leaf path meeting `s` only inside the radius-r0 ball
/// around the root, exploring left children first. Absence is a valid
/// outcome, not an error.
pub fn tree_ray_finder(depth: u32, s: &BTreeSet<u64>, r0: u32) -> Result<Option<Vec<u64>>> {
    check_vertices(depth, s)?;
    let mut path: Vec<u64> = vec![1];
    if level(1) > r0 && s.contains(&1) {
        return Ok(None);
    }
    // depth-first over the path stack; path always holds admissible vertices
    loop {
        let v = *path.last().unwrap();
        if level(v) == depth {
            return Ok(Some(path));
        }
        let mut descended = false;
        for child in [2 * v, 2 * v + 1] {
            if level(child) <= r0 || !s.contains(&child) {
                path.push(child);
                descended = true;
                break;
            }
        }
        if descended {
            continue;
        }
        // backtrack to the deepest ancestor with an unexplored right branch
        loop {
            let dead = path.pop().expect("root is admissible");
            let Some(&parent) = path.last() else {
                return Ok(None);
            };
            if dead == 2 * parent {
                let right = 2 * parent + 1;
                if level(right) <= r0 || !s.contains(&right) {
                    path.push(right);
                    break;
                }
            }
        }
    }
}

/// Replays a claimed ray against its obstruction set.
pub fn validate_ray(depth: u32, s: &BTreeSet<u64>, r0: u32, ray: &[u64]) -> bool {
    if ray.len() != depth as usize + 1 || ray.first() != Some(&1) {
        return false;
    }
    for w in ray.windows(2) {
        if w[1] != 2 * w[0] && w[1] != 2 * w[0] + 1 {
            return false;
        }
    }
    ray.iter().all(|v| level(*v) <= r0 || !s.contains(v))
}
