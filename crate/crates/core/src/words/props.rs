//! Finiteness predicates for the string module of a word.
//!
//! `eventually inverse`: finitely many direct letters to the right of 0.
//! `vertex-finite`: every vertex occurs finitely often to the right of 0.
//! A string module is finitely generated when both the word and its inverse
//! are eventually inverse, and finitely controlled when each of them is
//! eventually inverse or vertex-finite.
//!
//! In a finite quiver an infinite side always revisits some vertex, so
//! vertex-finiteness can only hold through a grading: with arrows of nonzero
//! degree the vertices of a graded window are pairs (vertex, degree), and a
//! periodic side is vertex-finite exactly when one period changes the degree.

use serde::Serialize;

use super::{invert_letters, Word};
use crate::algebra::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WordProps {
    pub eventually_inverse: bool,
    pub vertex_finite: bool,
    pub inverse_eventually_inverse: bool,
    pub inverse_vertex_finite: bool,
    pub finitely_generated: bool,
    pub finitely_controlled: bool,
}

/// The repeating block to the right of position 0, if that side is infinite.
fn right_period(w: &Word) -> Option<Vec<Letter>> {
    match w {
        Word::Trivial { .. } | Word::Finite(_) => None,
        Word::Periodic(e) => Some(e.clone()),
        Word::Eventually { period, .. } => Some(period.clone()),
        Word::TwoSided(t) => (!t.right_period.is_empty()).then(|| t.right_period.clone()),
    }
}

fn side(period: Option<Vec<Letter>>, grading: Option<&[i64]>) -> (bool, bool) {
    match period {
        None => (true, true),
        Some(b) => {
            let ev_inverse = b.iter().all(|l| l.inverse);
            let drift: i64 = match grading {
                Some(g) => b.iter().map(|l| if l.inverse { g[l.arrow] } else { -g[l.arrow] }).sum(),
                None => 0,
            };
            (ev_inverse, drift != 0)
        }
    }
}

/// Predicates for `w` and `w⁻¹`; `grading` gives an integer degree per arrow.
pub fn props(w: &Word, grading: Option<&[i64]>) -> WordProps {
    let (ei, vf) = side(right_period(w), grading);
    let left = match w {
        Word::Periodic(e) => Some(invert_letters(e)),
        Word::TwoSided(t) => (!t.left_period.is_empty()).then(|| invert_letters(&t.left_period)),
        _ => None,
    };
    let (iei, ivf) = side(left, grading);
    WordProps {
        eventually_inverse: ei,
        vertex_finite: vf,
        inverse_eventually_inverse: iei,
        inverse_vertex_finite: ivf,
        finitely_generated: ei && iei,
        finitely_controlled: (ei || vf) && (iei || ivf),
    }
}
