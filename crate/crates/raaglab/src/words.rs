//! Words and normal forms in graph products with cyclic vertex groups.
//!
//! A word is a sequence of syllables (vertex, exponent). Three elementary
//! moves preserve the group element: dropping trivial syllables, merging
//! adjacent syllables of the same vertex, and swapping adjacent syllables
//! whose vertices are joined by an edge. A word none of these shortens is
//! graphically reduced; reduced representatives of an element differ only
//! by swaps, so sorting the swaps out yields a canonical form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graph::Presentation;
use crate::{Error, Result};

/// One factor element: a vertex of the presentation graph and an exponent,
/// normalized to `1..=n-1` for a finite factor Z_n and nonzero for Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub vertex: usize,
    pub exponent: i64,
}

/// An unreduced word over a graph-product presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWord {
    presentation: Arc<Presentation>,
    syllables: Vec<Syllable>,
}

/// The canonical graphically reduced representative of a group element:
/// the lexicographically least member (by vertex declaration order) of its
/// shuffle class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    syllables: Vec<Syllable>,
}

fn normalize_exponent(pres: &Presentation, vertex: usize, exponent: i64) -> i64 {
    match pres.weight(vertex) {
        Some(n) => exponent.rem_euclid(n as i64),
        None => exponent,
    }
}

fn adjacent(pres: &Presentation, u: usize, v: usize) -> bool {
    pres.graph().adjacent(u, v)
}

/// Appends one syllable to a reduced word, keeping it reduced.
fn push_reduced(pres: &Presentation, out: &mut Vec<Syllable>, vertex: usize, exponent: i64) {
    let exponent = normalize_exponent(pres, vertex, exponent);
    if exponent == 0 {
        return;
    }
    // walk left through syllables that commute with this one
    let mut i = out.len();
    while i > 0 && out[i - 1].vertex != vertex && adjacent(pres, out[i - 1].vertex, vertex) {
        i -= 1;
    }
    if i > 0 && out[i - 1].vertex == vertex {
        let merged = normalize_exponent(pres, vertex, out[i - 1].exponent + exponent);
        if merged == 0 {
            // a cancellation may let the parts on either side interact
            out.remove(i - 1);
            let tail = out.split_off(i - 1);
            for s in tail {
                push_reduced(pres, out, s.vertex, s.exponent);
            }
        } else {
            out[i - 1].exponent = merged;
        }
    } else {
        out.push(Syllable { vertex, exponent });
    }
}

fn reduce(pres: &Presentation, syllables: &[Syllable]) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(syllables.len());
    for s in syllables {
        push_reduced(pres, &mut out, s.vertex, s.exponent);
    }
    out
}

/// Lexicographically least linearization of a reduced word under legal
/// shuffles: repeatedly emit the least-vertex syllable none of whose left
/// neighbours blocks it (same vertex or non-adjacent).
fn canonicalize(pres: &Presentation, reduced: Vec<Syllable>) -> Vec<Syllable> {
    let mut items = reduced;
    let mut out = Vec::with_capacity(items.len());
    while !items.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..items.len() {
            let available = (0..i).all(|j| {
                items[j].vertex != items[i].vertex
                    && adjacent(pres, items[j].vertex, items[i].vertex)
            });
            if available && best.is_none_or(|b| items[i].vertex < items[b].vertex) {
                best = Some(i);
            }
        }
        out.push(items.remove(best.expect("a nonempty word has an available syllable")));
    }
    out
}

impl GroupWord {
    pub fn new(presentation: Arc<Presentation>, syllables: Vec<Syllable>) -> Result<Self> {
        let n = presentation.graph().vertex_count();
        for s in &syllables {
            if s.vertex >= n {
                return Err(Error::input(format!("syllable vertex index {} out of range", s.vertex)));
            }
        }
        Ok(GroupWord { presentation, syllables })
    }

    /// Builds a word from (vertex name, exponent) pairs.
    pub fn from_named(presentation: Arc<Presentation>, pairs: &[(String, i64)]) -> Result<Self> {
        let syllables = pairs
            .iter()
            .map(|(name, e)| {
                Ok(Syllable { vertex: presentation.graph().index_of(name)?, exponent: *e })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord { presentation, syllables })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// The canonical reduced representative of this word's group element.
    pub fn normal_form(&self) -> NormalForm {
        NormalForm::of(&self.presentation, &self.syllables)
    }

    /// Number of syllables of the normal form; the distance from the
    /// identity in the Cayley graph over all factor elements.
    pub fn syllable_length(&self) -> usize {
        reduce(&self.presentation, &self.syllables).len()
    }

    /// Length in the standard one-letter-per-factor generating set.
    pub fn word_metric_length(&self) -> u64 {
        self.normal_form().standard_length(&self.presentation)
    }
}

/// True iff the two words represent the same group element.
pub fn words_equal(w1: &GroupWord, w2: &GroupWord) -> Result<bool> {
    if w1.presentation != w2.presentation {
        return Err(Error::input("words over different presentations are not comparable"));
    }
    Ok(w1.normal_form() == w2.normal_form())
}

/// Reduces and canonicalizes a word.
pub fn apply_moves_to_normal_form(w: &GroupWord) -> NormalForm {
    w.normal_form()
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm { syllables: Vec::new() }
    }

    pub fn of(pres: &Presentation, syllables: &[Syllable]) -> Self {
        NormalForm { syllables: canonicalize(pres, reduce(pres, syllables)) }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    /// Right multiplication by a single factor element.
    pub fn mul_syllable(&self, pres: &Presentation, vertex: usize, exponent: i64) -> NormalForm {
        let mut sylls = self.syllables.clone();
        push_reduced(pres, &mut sylls, vertex, exponent);
        NormalForm { syllables: canonicalize(pres, sylls) }
    }

    pub fn mul(&self, pres: &Presentation, other: &NormalForm) -> NormalForm {
        let mut sylls = self.syllables.clone();
        for s in &other.syllables {
            push_reduced(pres, &mut sylls, s.vertex, s.exponent);
        }
        NormalForm { syllables: canonicalize(pres, sylls) }
    }

    pub fn inverse(&self, pres: &Presentation) -> NormalForm {
        let sylls: Vec<Syllable> = self
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable {
                vertex: s.vertex,
                exponent: normalize_exponent(pres, s.vertex, -s.exponent),
            })
            .collect();
        NormalForm { syllables: canonicalize(pres, sylls) }
    }

    /// Sum over syllables of the factor word length: `min(e, n - e)` in
    /// Z_n and `|e|` in Z.
    pub fn standard_length(&self, pres: &Presentation) -> u64 {
        self.syllables
            .iter()
            .map(|s| match pres.weight(s.vertex) {
                Some(n) => (s.exponent as u64).min(n as u64 - s.exponent as u64),
                None => s.exponent.unsigned_abs(),
            })
            .sum()
    }

    /// Expansion into standard generator letters `(vertex, ±1)`, geodesic
    /// in the standard metric.
    pub fn standard_letters(&self, pres: &Presentation) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for s in &self.syllables {
            let signed = match pres.weight(s.vertex) {
                Some(n) => {
                    if s.exponent * 2 <= n as i64 {
                        s.exponent
                    } else {
                        s.exponent - n as i64
                    }
                }
                None => s.exponent,
            };
            let step = signed.signum();
            for _ in 0..signed.unsigned_abs() {
                out.push((s.vertex, step));
            }
        }
        out
    }

    pub fn to_named(&self, pres: &Presentation) -> Vec<(String, i64)> {
        self.syllables
            .iter()
            .map(|s| (pres.graph().name(s.vertex).to_owned(), s.exponent))
            .collect()
    }

    /// Word from (vertex name, exponent) pairs, reduced on construction.
    pub fn from_named(pres: &Presentation, pairs: &[(String, i64)]) -> Result<Self> {
        let syllables = pairs
            .iter()
            .map(|(name, e)| Ok(Syllable { vertex: pres.graph().index_of(name)?, exponent: *e }))
            .collect::<Result<Vec<_>>>()?;
        Ok(NormalForm::of(pres, &syllables))
    }

    /// Splits `self = head · rest` where `head` collects every syllable on
    /// a vertex of `parabolic_mask` that legal shuffles can move to the
    /// front, and `rest` is what remains. `rest` is the minimal-length
    /// representative of the left coset ⟨parabolic⟩·self, so its standard
    /// length is the distance from `self` to any g⟨parabolic⟩ with
    /// g⁻¹·self = self reduced accordingly.
    pub fn strip_leading_parabolic(
        &self,
        pres: &Presentation,
        parabolic_mask: u64,
    ) -> (NormalForm, NormalForm) {
        let mut rest = self.syllables.clone();
        let mut head = Vec::new();
        loop {
            let movable = (0..rest.len()).find(|&i| {
                parabolic_mask & (1 << rest[i].vertex) != 0
                    && (0..i).all(|j| adjacent(pres, rest[j].vertex, rest[i].vertex))
            });
            match movable {
                Some(i) => head.push(rest.remove(i)),
                None => break,
            }
        }
        (NormalForm::of(pres, &head), NormalForm { syllables: canonicalize(pres, rest) })
    }

    /// Mirror image of [`Self::strip_leading_parabolic`]: `self = rest · tail`
    /// with `tail` the parabolic syllables movable to the back. `rest` is the
    /// minimal representative of the right coset self·⟨parabolic⟩.
    pub fn strip_trailing_parabolic(
        &self,
        pres: &Presentation,
        parabolic_mask: u64,
    ) -> (NormalForm, NormalForm) {
        let mut rest = self.syllables.clone();
        let mut tail = Vec::new();
        loop {
            let movable = (0..rest.len()).rev().find(|&i| {
                parabolic_mask & (1 << rest[i].vertex) != 0
                    && (i + 1..rest.len()).all(|j| adjacent(pres, rest[j].vertex, rest[i].vertex))
            });
            match movable {
                Some(i) => tail.insert(0, rest.remove(i)),
                None => break,
            }
        }
        (NormalForm { syllables: canonicalize(pres, rest) }, NormalForm::of(pres, &tail))
    }

    /// Every syllable lies on a vertex of `mask`.
    pub fn supported_on(&self, mask: u64) -> bool {
        self.syllables.iter().all(|s| mask & (1 << s.vertex) != 0)
    }
}
