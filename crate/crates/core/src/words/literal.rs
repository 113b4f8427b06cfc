//! Text syntax for words.
//!
//! * `x y^-1 x`: finite word, letters separated by spaces
//! * `1_v_+`, `1_v_-`: trivial words
//! * `periodic: x y^-1`: the periodic word with that period
//! * `eventually: y^-1 x x | y^-1`: prefix, then the repeated period
//! * `two-sided: ...(y y x^-1) | (x^-1)...`: left part as written, then the
//!   right part; parentheses mark the repeating blocks

use super::{fmt_letters, TwoSided, Word};
use crate::algebra::{Letter, StringAlgebra};
use crate::error::{Error, Result};

fn parse_letters(alg: &StringAlgebra, s: &str) -> Result<Vec<Letter>> {
    s.split_whitespace().map(|t| alg.parse_letter(t)).collect()
}

pub(super) fn parse_word(alg: &StringAlgebra, s: &str) -> Result<Word> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("periodic:") {
        return Word::periodic(alg, nonempty(parse_letters(alg, rest)?, s)?);
    }
    if let Some(rest) = s.strip_prefix("eventually:") {
        let (a, b) = rest
            .split_once('|')
            .ok_or_else(|| Error::Malformed(format!("{s:?}: expected 'prefix | period'")))?;
        let period = nonempty(parse_letters(alg, b)?, s)?;
        return Word::eventually(alg, parse_letters(alg, a)?, period);
    }
    if let Some(rest) = s.strip_prefix("two-sided:") {
        return parse_two_sided(alg, rest, s);
    }
    if let Some(t) = parse_trivial(alg, s) {
        return Ok(t);
    }
    Word::finite(alg, nonempty(parse_letters(alg, s)?, s)?)
}

fn nonempty(v: Vec<Letter>, s: &str) -> Result<Vec<Letter>> {
    if v.is_empty() {
        Err(Error::Malformed(format!("{s:?}: no letters")))
    } else {
        Ok(v)
    }
}

fn parse_trivial(alg: &StringAlgebra, s: &str) -> Option<Word> {
    let body = s.strip_prefix("1_")?;
    let (v, sign) = if let Some(v) = body.strip_suffix("_+") {
        (v, 1)
    } else {
        (body.strip_suffix("_-")?, -1)
    };
    alg.vertex_index(v).map(|vertex| Word::Trivial { vertex, sign })
}

fn parse_two_sided(alg: &StringAlgebra, rest: &str, whole: &str) -> Result<Word> {
    let bad = || Error::Malformed(format!("{whole:?}: expected '...(L) A | B (R)...'"));
    let (left, right) = rest.split_once('|').ok_or_else(bad)?;
    let left = left.trim();
    let (left_period, left_prefix) = match left.strip_prefix("...(") {
        Some(l) => {
            let (p, a) = l.split_once(')').ok_or_else(bad)?;
            (parse_letters(alg, p)?, parse_letters(alg, a)?)
        }
        None => (Vec::new(), parse_letters(alg, left)?),
    };
    let right = right.trim();
    let (right_prefix, right_period) = match right.strip_suffix(")...") {
        Some(r) => {
            let (b, p) = r.rsplit_once('(').ok_or_else(bad)?;
            (parse_letters(alg, b)?, parse_letters(alg, p)?)
        }
        None => (parse_letters(alg, right)?, Vec::new()),
    };
    Word::two_sided(
        alg,
        TwoSided {
            left_period,
            left_prefix,
            right_prefix,
            right_period,
        },
    )
}

pub(super) fn format_word(alg: &StringAlgebra, w: &Word) -> String {
    match w {
        Word::Trivial { vertex, sign } => {
            format!("1_{}_{}", alg.vertices()[*vertex], if *sign > 0 { '+' } else { '-' })
        }
        Word::Finite(c) => fmt_letters(alg, c),
        Word::Periodic(e) => format!("periodic: {}", fmt_letters(alg, e)),
        Word::Eventually { prefix, period } => {
            if prefix.is_empty() {
                format!("eventually: | {}", fmt_letters(alg, period))
            } else {
                format!("eventually: {} | {}", fmt_letters(alg, prefix), fmt_letters(alg, period))
            }
        }
        Word::TwoSided(t) => {
            let mut left = String::new();
            if !t.left_period.is_empty() {
                left.push_str(&format!("...({})", fmt_letters(alg, &t.left_period)));
            }
            if !t.left_prefix.is_empty() {
                if !left.is_empty() {
                    left.push(' ');
                }
                left.push_str(&fmt_letters(alg, &t.left_prefix));
            }
            let mut right = fmt_letters(alg, &t.right_prefix);
            if !t.right_period.is_empty() {
                if !right.is_empty() {
                    right.push(' ');
                }
                right.push_str(&format!("({})...", fmt_letters(alg, &t.right_period)));
            }
            format!("two-sided: {left} | {right}").replace("  ", " ")
        }
    }
}
