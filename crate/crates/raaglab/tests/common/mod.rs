//! Shared oracles and random generators for the integration suites.
//!
//! The move-closure oracle decides word equality by exhausting the
//! elementary moves (cancellation, merging, shuffle) from both sides and
//! intersecting the reachable sets; it never consults the normal-form
//! implementation.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;

use raaglab::graph::{Presentation, SimpleGraph};
use raaglab::words::{GroupWord, Syllable};

pub type RawWord = Vec<(usize, i64)>;

fn norm_exp(pres: &Presentation, v: usize, e: i64) -> i64 {
    match pres.weight(v) {
        Some(n) => e.rem_euclid(n as i64),
        None => e,
    }
}

/// Drops trivial syllables, normalizing exponents per factor.
fn tidy(pres: &Presentation, word: &[(usize, i64)]) -> RawWord {
    word.iter()
        .map(|&(v, e)| (v, norm_exp(pres, v, e)))
        .filter(|&(_, e)| e != 0)
        .collect()
}

/// All words reachable from `start` by shuffles, merges and cancellations.
pub fn move_closure(pres: &Presentation, start: &[(usize, i64)]) -> HashSet<RawWord> {
    let g = pres.graph();
    let mut seen: HashSet<RawWord> = HashSet::new();
    let mut stack = vec![tidy(pres, start)];
    while let Some(word) = stack.pop() {
        if !seen.insert(word.clone()) {
            continue;
        }
        for i in 0..word.len().saturating_sub(1) {
            let (u, a) = word[i];
            let (v, b) = word[i + 1];
            if u == v {
                let merged = norm_exp(pres, u, a + b);
                let mut next = word.clone();
                if merged == 0 {
                    next.drain(i..=i + 1);
                } else {
                    next[i] = (u, merged);
                    next.remove(i + 1);
                }
                stack.push(next);
            } else if g.adjacent(u, v) {
                let mut next = word.clone();
                next.swap(i, i + 1);
                stack.push(next);
            }
        }
    }
    seen
}

/// Ground-truth equality by closure intersection.
pub fn oracle_equal(pres: &Presentation, w1: &[(usize, i64)], w2: &[(usize, i64)]) -> bool {
    let c1 = move_closure(pres, w1);
    let c2 = move_closure(pres, w2);
    let (small, large) = if c1.len() <= c2.len() { (&c1, &c2) } else { (&c2, &c1) };
    small.iter().any(|w| large.contains(w))
}

/// A word that no move shortens.
pub fn is_reduced_word(pres: &Presentation, word: &RawWord) -> bool {
    move_closure(pres, word).iter().all(|w| w.len() >= word.len())
}

/// Random presentation on at most `max_vertices` vertices with factor
/// orders drawn from {2, 3, infinity}.
pub fn random_presentation(rng: &mut impl Rng, max_vertices: usize) -> Arc<Presentation> {
    let n = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let graph = SimpleGraph::from_indices(n, &edges).expect("random graph");
    let mut weights = std::collections::BTreeMap::new();
    for name in graph.names() {
        match rng.gen_range(0..3) {
            0 => {
                weights.insert(name.clone(), 2);
            }
            1 => {
                weights.insert(name.clone(), 3);
            }
            _ => {}
        }
    }
    Arc::new(Presentation::new(graph, &weights).expect("random presentation"))
}

/// Random raw word with at most `max_syllables` syllables; exponents may
/// be zero or out of range on purpose.
pub fn random_raw_word(rng: &mut impl Rng, pres: &Presentation, max_syllables: usize) -> RawWord {
    let n = pres.graph().vertex_count();
    let len = rng.gen_range(0..=max_syllables);
    (0..len).map(|_| (rng.gen_range(0..n), rng.gen_range(-3..=3))).collect()
}

/// Applies `count` random element-preserving moves (shuffles, merges,
/// splits) to produce a different word for the same group element.
pub fn random_equal_mutation(
    rng: &mut impl Rng,
    pres: &Presentation,
    word: &RawWord,
    count: usize,
    max_syllables: usize,
) -> RawWord {
    let g = pres.graph();
    let mut out = tidy(pres, word);
    for _ in 0..count {
        if out.is_empty() {
            break;
        }
        match rng.gen_range(0..3) {
            // shuffle
            0 => {
                let candidates: Vec<usize> = (0..out.len() - 1)
                    .filter(|&i| out[i].0 != out[i + 1].0 && g.adjacent(out[i].0, out[i + 1].0))
                    .collect();
                if let Some(&i) = pick(rng, &candidates) {
                    out.swap(i, i + 1);
                }
            }
            // merge
            1 => {
                let candidates: Vec<usize> =
                    (0..out.len() - 1).filter(|&i| out[i].0 == out[i + 1].0).collect();
                if let Some(&i) = pick(rng, &candidates) {
                    let merged = norm_exp(pres, out[i].0, out[i].1 + out[i + 1].1);
                    if merged == 0 {
                        out.drain(i..=i + 1);
                    } else {
                        out[i].1 = merged;
                        out.remove(i + 1);
                    }
                }
            }
            // split one syllable in two
            _ => {
                if out.len() < max_syllables {
                    let i = rng.gen_range(0..out.len());
                    let (v, e) = out[i];
                    let first = rng.gen_range(-2..=2);
                    let second = e - first;
                    if norm_exp(pres, v, first) != 0 && norm_exp(pres, v, second) != 0 {
                        out[i] = (v, first);
                        out.insert(i + 1, (v, second));
                    }
                }
            }
        }
    }
    out
}

fn pick<'a, T>(rng: &mut impl Rng, options: &'a [T]) -> Option<&'a T> {
    if options.is_empty() {
        None
    } else {
        Some(&options[rng.gen_range(0..options.len())])
    }
}

pub fn group_word(pres: &Arc<Presentation>, raw: &[(usize, i64)]) -> GroupWord {
    GroupWord::new(
        pres.clone(),
        raw.iter().map(|&(vertex, exponent)| Syllable { vertex, exponent }).collect(),
    )
    .expect("raw word over its own presentation")
}
