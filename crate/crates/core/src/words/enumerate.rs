//! Depth-first enumeration of words under a per-vertex index budget.
//!
//! Words grow on the left: from `C` the search visits every word `ℓ C`.
//! Every finite word with `#{i : v_i(C) = v} ≤ budget[v]` for all `v` is
//! visited exactly once, so a word and its inverse are both seen.

use std::collections::BTreeSet;

use super::{can_prepend, powers_are_words, primitive_root_len, Word};
use crate::algebra::{Letter, StringAlgebra};

/// Callbacks for [`visit_words`]. `extend` returning `None` prunes the
/// branch below `ℓ C` (and skips it as a closed candidate).
pub trait WordVisitor {
    type State;
    fn start(&mut self, vertex: usize) -> Option<Self::State>;
    fn extend(&mut self, state: &Self::State, l: Letter) -> Option<Self::State>;
    /// A finite word within budget; `letters` is empty for the trivial word at `vertex`.
    fn finite(&mut self, letters: &[Letter], vertex: usize, state: &Self::State);
    /// A closed word whose powers are all words and which is not a proper power.
    fn closed(&mut self, letters: &[Letter], state: &Self::State);
}

pub fn visit_words<V: WordVisitor>(alg: &StringAlgebra, budget: &[usize], visitor: &mut V) {
    assert_eq!(budget.len(), alg.num_vertices());
    for v in 0..alg.num_vertices() {
        if budget[v] == 0 {
            continue;
        }
        let Some(state) = visitor.start(v) else { continue };
        visitor.finite(&[], v, &state);
        let mut counts = vec![0usize; budget.len()];
        counts[v] = 1;
        // Letters stored reversed so prepending is a push.
        let mut rev: Vec<Letter> = Vec::new();
        dfs(alg, budget, visitor, &mut rev, &mut counts, v, &state);
    }
}

fn dfs<V: WordVisitor>(
    alg: &StringAlgebra,
    budget: &[usize],
    visitor: &mut V,
    rev: &mut Vec<Letter>,
    counts: &mut [usize],
    tail: usize,
    state: &V::State,
) {
    let word: Vec<Letter> = rev.iter().rev().copied().collect();
    let head = word.first().map_or(tail, |&l| alg.letter_head(l));
    for l in alg.letters() {
        if alg.letter_tail(l) != head || !can_prepend(alg, l, &word) {
            continue;
        }
        let Some(next) = visitor.extend(state, l) else { continue };
        let h = alg.letter_head(l);
        rev.push(l);
        if h == tail {
            let closed: Vec<Letter> = rev.iter().rev().copied().collect();
            if powers_are_words(alg, &closed) && primitive_root_len(&closed) == closed.len() {
                visitor.closed(&closed, &next);
            }
        }
        counts[h] += 1;
        if counts[h] <= budget[h] {
            let letters: Vec<Letter> = rev.iter().rev().copied().collect();
            visitor.finite(&letters, h, &next);
            dfs(alg, budget, visitor, rev, counts, tail, &next);
        }
        counts[h] -= 1;
        rev.pop();
    }
}

/// One representative per equivalence class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumeratedWords {
    pub finite: Vec<Word>,
    pub periodic: Vec<Word>,
}

struct Collect {
    finite: BTreeSet<Word>,
    periodic: BTreeSet<Word>,
}

impl WordVisitor for Collect {
    type State = ();
    fn start(&mut self, _: usize) -> Option<()> {
        Some(())
    }
    fn extend(&mut self, _: &(), _: Letter) -> Option<()> {
        Some(())
    }
    fn finite(&mut self, letters: &[Letter], vertex: usize, _: &()) {
        let w = if letters.is_empty() {
            Word::trivial(vertex, 1)
        } else {
            Word::Finite(letters.to_vec())
        };
        self.finite.insert(w.canonical());
    }
    fn closed(&mut self, letters: &[Letter], _: &()) {
        self.periodic.insert(Word::Periodic(letters.to_vec()).canonical());
    }
}

/// Every finite word within `budget` and every periodic word whose period
/// fits `budget`, one per equivalence class, canonical and sorted.
pub fn enumerate_words(alg: &StringAlgebra, budget: &[usize]) -> EnumeratedWords {
    let mut c = Collect {
        finite: BTreeSet::new(),
        periodic: BTreeSet::new(),
    };
    visit_words(alg, budget, &mut c);
    EnumeratedWords {
        finite: c.finite.into_iter().collect(),
        periodic: c.periodic.into_iter().collect(),
    }
}
