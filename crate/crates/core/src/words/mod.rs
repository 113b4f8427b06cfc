//! Words: finite, periodic (`∞E∞`), eventually periodic (`A·B^∞`) and
//! two-sided symbolic words, with inverse, shift, composition, the order on
//! `W_{v,ε}` and equivalence.

mod enumerate;
mod literal;
mod order;
mod props;

pub use enumerate::{enumerate_words, visit_words, EnumeratedWords, WordVisitor};
pub use order::compare;
pub use props::{props, WordProps};

use std::cmp::Ordering;

use crate::algebra::{Letter, StringAlgebra};
use crate::error::{Error, Result};

/// A word over a string algebra. Letter lists read left to right, `C_1 C_2 …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    /// `1_{v,ε}`.
    Trivial { vertex: usize, sign: i8 },
    /// `C_1 … C_n`, `n ≥ 1`.
    Finite(Vec<Letter>),
    /// The periodic `Z`-word `… E | E …` with primitive period `E`.
    Periodic(Vec<Letter>),
    /// The `N`-word `A B B B …`, normalised so that `B` is primitive and the
    /// last letters of `A` and `B` differ.
    Eventually { prefix: Vec<Letter>, period: Vec<Letter> },
    /// `… L L A | B R R …`; at least one period is nonempty.
    TwoSided(Box<TwoSided>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoSided {
    pub left_period: Vec<Letter>,
    pub left_prefix: Vec<Letter>,
    pub right_prefix: Vec<Letter>,
    pub right_period: Vec<Letter>,
}

/// Why a composition `C D` is undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComposeError {
    TailHeadMismatch,
    SignsNotOpposite,
    NotAWord,
}

impl std::fmt::Display for ComposeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ComposeError::TailHeadMismatch => "tail of the first word differs from head of the second",
            ComposeError::SignsNotOpposite => "the inverse of the first word and the second word have the same sign",
            ComposeError::NotAWord => "the concatenation is not a word",
        })
    }
}

pub fn invert_letters(c: &[Letter]) -> Vec<Letter> {
    c.iter().rev().map(|l| l.invert()).collect()
}

fn rotate(c: &[Letter], n: usize) -> Vec<Letter> {
    let k = n % c.len();
    c[k..].iter().chain(&c[..k]).copied().collect()
}

/// Smallest `d` with `c` a power of its first `d` letters.
fn primitive_root_len(c: &[Letter]) -> usize {
    let n = c.len();
    (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|i| c[i] == c[i % d]))
        .unwrap_or(n)
}

/// Conditions (a)–(c) on a finite letter sequence.
pub fn is_word_seq(alg: &StringAlgebra, c: &[Letter]) -> bool {
    for w in c.windows(2) {
        if alg.letter_tail(w[0]) != alg.letter_head(w[1]) || w[0].invert() == w[1] {
            return false;
        }
    }
    !contains_relation(alg, c, 0..c.len())
}

/// Whether a relation or an inverse relation occurs starting at some position in `starts`.
fn contains_relation(alg: &StringAlgebra, c: &[Letter], starts: std::ops::Range<usize>) -> bool {
    for r in alg.relations() {
        let m = r.len();
        for s in starts.clone() {
            if s + m > c.len() {
                break;
            }
            let w = &c[s..s + m];
            if w.iter().zip(r).all(|(l, &a)| l.is_direct() && l.arrow == a)
                || w.iter().zip(r.iter().rev()).all(|(l, &a)| l.inverse && l.arrow == a)
            {
                return true;
            }
        }
    }
    false
}

/// Whether `l C` is a word given that `C` is one (`C` may be empty).
pub fn can_prepend(alg: &StringAlgebra, l: Letter, c: &[Letter]) -> bool {
    match c.first() {
        None => true,
        Some(&c1) => {
            if alg.letter_tail(l) != alg.letter_head(c1) || l.invert() == c1 {
                return false;
            }
            let mut w = Vec::with_capacity(alg.max_relation_len());
            w.push(l);
            w.extend(c.iter().take(alg.max_relation_len() - 1));
            !contains_relation(alg, &w, 0..1)
        }
    }
}

/// Whether all powers of the closed letter sequence `e` are words.
pub fn powers_are_words(alg: &StringAlgebra, e: &[Letter]) -> bool {
    if e.is_empty() || alg.letter_tail(*e.last().unwrap()) != alg.letter_head(e[0]) {
        return false;
    }
    let reps = alg.max_relation_len() / e.len() + 2;
    let unrolled: Vec<Letter> = e.iter().copied().cycle().take(e.len() * reps).collect();
    is_word_seq(alg, &unrolled)
}

impl Word {
    pub fn trivial(vertex: usize, sign: i8) -> Word {
        Word::Trivial { vertex, sign }
    }

    /// A finite or trivial word; `head_sign` supplies the vertex and sign when
    /// `letters` is empty.
    pub fn finite(alg: &StringAlgebra, letters: Vec<Letter>) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::Malformed("empty letter list; use a trivial word".into()));
        }
        if !is_word_seq(alg, &letters) {
            return Err(Error::Domain(format!("{} is not a word", fmt_letters(alg, &letters))));
        }
        Ok(Word::Finite(letters))
    }

    /// The periodic word `∞E∞`; `E` must be primitive with every power a word.
    pub fn periodic(alg: &StringAlgebra, e: Vec<Letter>) -> Result<Word> {
        if !powers_are_words(alg, &e) {
            return Err(Error::Domain(format!("powers of {} are not words", fmt_letters(alg, &e))));
        }
        if primitive_root_len(&e) != e.len() {
            return Err(Error::Domain(format!("{} is a proper power", fmt_letters(alg, &e))));
        }
        Ok(Word::Periodic(e))
    }

    /// `A·B^∞`, normalised.
    pub fn eventually(alg: &StringAlgebra, prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Word> {
        if !powers_are_words(alg, &period) {
            return Err(Error::Domain(format!("powers of {} are not words", fmt_letters(alg, &period))));
        }
        let mut unrolled = prefix.clone();
        let reps = alg.max_relation_len() / period.len() + 2;
        unrolled.extend(period.iter().copied().cycle().take(period.len() * reps));
        if !is_word_seq(alg, &unrolled) {
            return Err(Error::Domain("prefix followed by the period is not a word".into()));
        }
        let (prefix, period) = normalize_eventual(prefix, period);
        Ok(Word::Eventually { prefix, period })
    }

    pub fn two_sided(alg: &StringAlgebra, t: TwoSided) -> Result<Word> {
        let reps = |p: &[Letter]| if p.is_empty() { 0 } else { alg.max_relation_len() / p.len() + 2 };
        for p in [&t.left_period, &t.right_period] {
            if !p.is_empty() && !powers_are_words(alg, p) {
                return Err(Error::Domain(format!("powers of {} are not words", fmt_letters(alg, p))));
            }
        }
        let mut unrolled: Vec<Letter> = t
            .left_period
            .iter()
            .copied()
            .cycle()
            .take(t.left_period.len() * reps(&t.left_period))
            .collect();
        unrolled.extend(&t.left_prefix);
        unrolled.extend(&t.right_prefix);
        unrolled.extend(t.right_period.iter().copied().cycle().take(t.right_period.len() * reps(&t.right_period)));
        if unrolled.is_empty() || !is_word_seq(alg, &unrolled) {
            return Err(Error::Domain("two-sided word fails the word conditions".into()));
        }
        match (t.left_period.is_empty(), t.right_period.is_empty()) {
            (true, true) => Word::finite(alg, unrolled),
            (true, false) => {
                let mut a = t.left_prefix.clone();
                a.extend(&t.right_prefix);
                Word::eventually(alg, a, t.right_period)
            }
            _ => Ok(Word::TwoSided(Box::new(t))),
        }
    }

    /// Letters of a finite word (empty for trivial words, the period for periodic ones).
    pub fn letters(&self) -> &[Letter] {
        match self {
            Word::Trivial { .. } => &[],
            Word::Finite(c) | Word::Periodic(c) => c,
            Word::Eventually { prefix, .. } => prefix,
            Word::TwoSided(t) => &t.right_prefix,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Word::Trivial { .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Word::Trivial { .. } | Word::Finite(_))
    }

    /// Finite, trivial or eventually periodic: the words that live in some `W_{v,ε}`.
    pub fn is_n_word(&self) -> bool {
        matches!(self, Word::Trivial { .. } | Word::Finite(_) | Word::Eventually { .. })
    }

    /// Length of a finite word.
    pub fn len(&self) -> Option<usize> {
        match self {
            Word::Trivial { .. } => Some(0),
            Word::Finite(c) => Some(c.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Letter `C_i` for `i ≥ 1` of an `N`-type word.
    pub fn letter_at(&self, i: usize) -> Option<Letter> {
        debug_assert!(i >= 1);
        match self {
            Word::Trivial { .. } => None,
            Word::Finite(c) => c.get(i - 1).copied(),
            Word::Eventually { prefix, period } => {
                if i <= prefix.len() {
                    Some(prefix[i - 1])
                } else {
                    Some(period[(i - 1 - prefix.len()) % period.len()])
                }
            }
            Word::Periodic(e) => Some(e[(i - 1) % e.len()]),
            Word::TwoSided(t) => {
                if i <= t.right_prefix.len() {
                    Some(t.right_prefix[i - 1])
                } else if t.right_period.is_empty() {
                    None
                } else {
                    Some(t.right_period[(i - 1 - t.right_prefix.len()) % t.right_period.len()])
                }
            }
        }
    }

    /// Head `v_0(C)` of an `N`-type word.
    pub fn head(&self, alg: &StringAlgebra) -> usize {
        match self {
            Word::Trivial { vertex, .. } => *vertex,
            _ => alg.letter_head(self.letter_at(1).expect("nonempty")),
        }
    }

    /// Sign of an `N`-type word: that of `C_1`, or `ε` for `1_{v,ε}`.
    pub fn sign(&self, alg: &StringAlgebra) -> i8 {
        match self {
            Word::Trivial { sign, .. } => *sign,
            _ => alg.sign(self.letter_at(1).expect("nonempty")),
        }
    }

    /// Tail `v_n(C)` of a finite word.
    pub fn tail(&self, alg: &StringAlgebra) -> Option<usize> {
        match self {
            Word::Trivial { vertex, .. } => Some(*vertex),
            Word::Finite(c) => Some(alg.letter_tail(*c.last().unwrap())),
            _ => None,
        }
    }

    /// Vertices `v_0 … v_n` of a finite word.
    pub fn vertex_sequence(&self, alg: &StringAlgebra) -> Vec<usize> {
        match self {
            Word::Trivial { vertex, .. } => vec![*vertex],
            Word::Finite(c) | Word::Periodic(c) => {
                let mut v = vec![alg.letter_head(c[0])];
                v.extend(c.iter().map(|&l| alg.letter_tail(l)));
                v
            }
            _ => panic!("vertex_sequence needs a finite or periodic word"),
        }
    }

    pub fn inverse(&self) -> Word {
        match self {
            Word::Trivial { vertex, sign } => Word::Trivial {
                vertex: *vertex,
                sign: -sign,
            },
            Word::Finite(c) => Word::Finite(invert_letters(c)),
            Word::Periodic(e) => Word::Periodic(invert_letters(e)),
            Word::Eventually { prefix, period } => Word::TwoSided(Box::new(TwoSided {
                left_period: invert_letters(period),
                left_prefix: invert_letters(prefix),
                right_prefix: Vec::new(),
                right_period: Vec::new(),
            })),
            Word::TwoSided(t) => {
                let inv = TwoSided {
                    left_period: invert_letters(&t.right_period),
                    left_prefix: invert_letters(&t.right_prefix),
                    right_prefix: invert_letters(&t.left_prefix),
                    right_period: invert_letters(&t.left_period),
                };
                if inv.left_period.is_empty() && inv.left_prefix.is_empty() {
                    let (prefix, period) = normalize_eventual(inv.right_prefix, inv.right_period);
                    Word::Eventually { prefix, period }
                } else {
                    Word::TwoSided(Box::new(inv))
                }
            }
        }
    }

    /// `C[n]`: rotation for periodic words, identity otherwise.
    pub fn shift(&self, n: i64) -> Word {
        match self {
            Word::Periodic(e) => {
                let k = n.rem_euclid(e.len() as i64) as usize;
                Word::Periodic(rotate(e, k))
            }
            other => other.clone(),
        }
    }

    /// `C D` for `C` finite or trivial and `D` of `N` type.
    pub fn compose(&self, alg: &StringAlgebra, d: &Word) -> std::result::Result<Word, ComposeError> {
        let tail = self.tail(alg).ok_or(ComposeError::NotAWord)?;
        if !d.is_n_word() {
            return Err(ComposeError::NotAWord);
        }
        if tail != d.head(alg) {
            return Err(ComposeError::TailHeadMismatch);
        }
        if self.inverse().sign(alg) == d.sign(alg) {
            return Err(ComposeError::SignsNotOpposite);
        }
        match (self, d) {
            (Word::Trivial { .. }, _) => Ok(d.clone()),
            (_, Word::Trivial { .. }) => Ok(self.clone()),
            (Word::Finite(c), Word::Finite(e)) => {
                let mut l = c.clone();
                l.extend(e);
                if is_word_seq(alg, &l) {
                    Ok(Word::Finite(l))
                } else {
                    Err(ComposeError::NotAWord)
                }
            }
            (Word::Finite(c), Word::Eventually { prefix, period }) => {
                let mut a = c.clone();
                a.extend(prefix);
                Word::eventually(alg, a, period.clone()).map_err(|_| ComposeError::NotAWord)
            }
            _ => Err(ComposeError::NotAWord),
        }
    }

    /// Least member of the equivalence class under the letter order, with
    /// `1_{v,+1}` for trivial classes.
    pub fn canonical(&self) -> Word {
        match self {
            Word::Trivial { vertex, .. } => Word::Trivial { vertex: *vertex, sign: 1 },
            Word::Finite(c) => {
                let inv = invert_letters(c);
                Word::Finite(if inv < *c { inv } else { c.clone() })
            }
            Word::Periodic(e) => Word::Periodic(canonical_rotation(e)),
            other => other.clone(),
        }
    }

    pub fn equivalent(&self, other: &Word) -> bool {
        self.canonical() == other.canonical()
    }

    /// `C(i, ε)` for a finite word: whichever of `C_{>i}` and `(C_{≤i})⁻¹` has sign `ε`.
    pub fn split_at(&self, alg: &StringAlgebra, i: usize, eps: i8) -> (Word, i8) {
        let (right, left) = self.halves(alg, i);
        if right.sign(alg) == eps {
            (right, 1)
        } else {
            debug_assert_eq!(left.sign(alg), eps);
            (left, -1)
        }
    }

    /// `(C_{>i}, (C_{≤i})⁻¹)` for a finite word; they have opposite signs.
    pub fn halves(&self, alg: &StringAlgebra, i: usize) -> (Word, Word) {
        if let Word::Trivial { vertex, sign } = *self {
            return (Word::trivial(vertex, sign), Word::trivial(vertex, -sign));
        }
        let c = self.letters();
        let n = c.len();
        assert!(i <= n, "split index out of range");
        let v = self.vertex_sequence(alg)[i];
        if i == 0 {
            let right = Word::Finite(c.to_vec());
            let s = right.sign(alg);
            return (right, Word::trivial(v, -s));
        }
        let left = Word::Finite(invert_letters(&c[..i]));
        let right = if i < n {
            Word::Finite(c[i..].to_vec())
        } else {
            Word::trivial(v, -left.sign(alg))
        };
        (right, left)
    }

    pub fn format(&self, alg: &StringAlgebra) -> String {
        literal::format_word(alg, self)
    }

    pub fn parse(alg: &StringAlgebra, s: &str) -> Result<Word> {
        literal::parse_word(alg, s)
    }
}

/// Least rotation of `e` or of its inverse.
pub fn canonical_rotation(e: &[Letter]) -> Vec<Letter> {
    let inv = invert_letters(e);
    let mut best = e.to_vec();
    for c in [e, inv.as_slice()] {
        for k in 0..c.len() {
            let r = rotate(c, k);
            if r < best {
                best = r;
            }
        }
    }
    best
}

fn normalize_eventual(mut prefix: Vec<Letter>, period: Vec<Letter>) -> (Vec<Letter>, Vec<Letter>) {
    let d = primitive_root_len(&period);
    let mut period = period[..d].to_vec();
    while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
        if a != b {
            break;
        }
        prefix.pop();
        period = rotate(&period, period.len() - 1);
    }
    (prefix, period)
}

pub(crate) fn fmt_letters(alg: &StringAlgebra, c: &[Letter]) -> String {
    c.iter().map(|&l| alg.letter_name(l)).collect::<Vec<_>>().join(" ")
}

/// Lexicographic order on letter sequences used for canonical representatives.
pub fn letter_seq_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests;
