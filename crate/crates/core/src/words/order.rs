//! The total order on `W_{v,ε}`.
//!
//! At the first position where two words differ, a direct letter sorts
//! below the end of a word, which sorts below an inverse letter.

use std::cmp::Ordering;

use super::Word;
use crate::algebra::{Letter, StringAlgebra};
use crate::error::{Error, Result};

fn key(l: Option<Letter>) -> u8 {
    match l {
        Some(l) if l.is_direct() => 0,
        None => 1,
        Some(_) => 2,
    }
}

/// Positions that must agree before two eventually periodic words are equal.
fn agreement_bound(c: &Word, d: &Word) -> Option<usize> {
    let shape = |w: &Word| match w {
        Word::Eventually { prefix, period } => Some((prefix.len(), period.len())),
        _ => None,
    };
    let (a1, b1) = shape(c)?;
    let (a2, b2) = shape(d)?;
    Some(a1 + a2 + b1 * b2 + 1)
}

/// Compares two words of `W_{v,ε}` (trivial, finite or eventually periodic).
pub fn compare(alg: &StringAlgebra, c: &Word, d: &Word) -> Result<Ordering> {
    if !c.is_n_word() || !d.is_n_word() {
        return Err(Error::Domain("comparison needs finite or eventually periodic words".into()));
    }
    if c.head(alg) != d.head(alg) || c.sign(alg) != d.sign(alg) {
        return Err(Error::Domain("words lie in different sets W_{v,ε}".into()));
    }
    let bound = agreement_bound(c, d);
    let mut i = 1;
    loop {
        if bound.is_some_and(|b| i > b) {
            return Ok(Ordering::Equal);
        }
        let (x, y) = (c.letter_at(i), d.letter_at(i));
        if x != y {
            let (kx, ky) = (key(x), key(y));
            if kx == ky {
                return Err(Error::Internal(format!(
                    "two letters of one kind continue a common prefix at position {i}"
                )));
            }
            return Ok(kx.cmp(&ky));
        }
        if x.is_none() {
            return Ok(Ordering::Equal);
        }
        i += 1;
    }
}
