//! The functorial filtration `C⁻(M) ⊆ C⁺(M)`, the refined functors
//! `F_{B,D}`, and the constructive covering search.

use crate::algebra::Letter;
use crate::error::{domain, internal, Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace, Vector};
use crate::linrel::LinearRelation;
use crate::repmod::Representation;
use crate::words::{invert_letters, is_word_seq, powers_are_words, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationPair {
    pub word: Word,
    pub plus: Subspace,
    pub minus: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedValue {
    pub b: Word,
    pub d: Word,
    pub plus: Subspace,
    pub minus: Subspace,
    /// Lifts to `F⁺` of a basis of `F⁺/F⁻`.
    pub reps: Vec<Vector>,
    /// The action of `T` on `F⁺/F⁻` in the basis `reps`, when `B⁻¹D` is periodic.
    pub t: Option<Matrix>,
}

impl RefinedValue {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

/// The letter `ℓ` of the requested kind with `C ℓ` a word, if any.
fn extension(m: &Representation, c: &Word, direct: bool) -> Option<Letter> {
    let alg = m.algebra();
    let tail = c.tail(alg)?;
    alg.letters()
        .into_iter()
        .filter(|l| l.is_direct() == direct && alg.letter_head(*l) == tail)
        .find(|&l| c.compose(alg, &Word::Finite(vec![l])).is_ok())
}

pub fn plus_minus(m: &Representation, c: &Word) -> Result<FiltrationPair> {
    let alg = m.algebra();
    let (plus, minus) = match c {
        Word::Trivial { .. } | Word::Finite(_) => {
            let r = m.word_relation(c);
            let tail = c.tail(alg).expect("finite word");
            let plus = match extension(m, c, false) {
                Some(x) => r.apply(&m.letter_relation(x).apply_zero()),
                None => r.apply_full(),
            };
            let minus = match extension(m, c, true) {
                Some(y) => r.apply(&m.letter_relation(y).apply_full()),
                None => r.apply(&Subspace::zero(m.field(), m.dim(tail))),
            };
            (plus, minus)
        }
        Word::Eventually { prefix, period } => {
            let start = alg.letter_head(period[0]);
            let b = m.letters_relation(period, start);
            let a = if prefix.is_empty() {
                LinearRelation::identity(m.field(), m.dim(start))
            } else {
                m.letters_relation(prefix, alg.letter_head(prefix[0]))
            };
            (a.apply(&b.double_prime()), a.apply(&b.prime()))
        }
        _ => return Err(domain("the filtration is indexed by finite or eventually periodic words")),
    };
    Ok(FiltrationPair {
        word: c.clone(),
        plus,
        minus,
    })
}

/// Whether `B⁻¹D` is a word, for `B`, `D` with a common head and opposite signs.
pub fn inverse_compose_is_word(m: &Representation, b: &Word, d: &Word) -> bool {
    let alg = m.algebra();
    let k = alg.max_relation_len();
    let take = |w: &Word| -> Vec<Letter> { (1..=k).map_while(|i| w.letter_at(i)).collect() };
    let mut seq = invert_letters(&take(b));
    seq.extend(take(d));
    is_word_seq(alg, &seq)
}

/// The period `E` when `B⁻¹D = ∞E∞` with `D = E^∞`.
fn periodic_junction(b: &Word, d: &Word) -> Option<Vec<Letter>> {
    match (b, d) {
        (
            Word::Eventually { prefix: pb, period: eb },
            Word::Eventually { prefix: pd, period: ed },
        ) if pb.is_empty() && pd.is_empty() && *eb == invert_letters(ed) => Some(ed.clone()),
        _ => None,
    }
}

fn check_pair(m: &Representation, b: &Word, d: &Word) -> Result<usize> {
    let alg = m.algebra();
    if !b.is_n_word() || !d.is_n_word() {
        return Err(domain("refined functors take finite or eventually periodic words"));
    }
    let v = b.head(alg);
    if d.head(alg) != v {
        return Err(domain("B and D have different heads"));
    }
    if b.sign(alg) == d.sign(alg) {
        return Err(domain("B and D have the same sign"));
    }
    Ok(v)
}

/// `F_{B,D}(M) = F⁺/F⁻`. Symmetric in `B` and `D` except for the `T`-action,
/// which is that of `D`'s period.
pub fn refined(m: &Representation, b: &Word, d: &Word) -> Result<RefinedValue> {
    let v = check_pair(m, b, d)?;
    let f = m.field();
    if !inverse_compose_is_word(m, b, d) {
        let z = Subspace::zero(f, m.dim(v));
        return Ok(RefinedValue {
            b: b.clone(),
            d: d.clone(),
            plus: z.clone(),
            minus: z,
            reps: Vec::new(),
            t: None,
        });
    }
    let bp = plus_minus(m, b)?;
    let dp = plus_minus(m, d)?;
    let plus = bp.plus.intersect(&dp.plus);
    let minus = bp.plus.intersect(&dp.minus).sum(&bp.minus.intersect(&dp.plus));
    let (reps, t) = match periodic_junction(b, d) {
        Some(e) => {
            let core = m.letters_relation(&e, v).core();
            if core.sharp != plus || core.flat != minus {
                return Err(internal("refined functor disagrees with the core of the period relation"));
            }
            // The relation of E acts as T⁻¹.
            let t = core
                .theta
                .inverse()
                .ok_or_else(|| internal("induced automorphism is singular"))?;
            (core.reps, Some(t))
        }
        None => (minus.quotient_basis(&plus)?, None),
    };
    Ok(RefinedValue {
        b: b.clone(),
        d: d.clone(),
        plus,
        minus,
        reps,
        t,
    })
}

/// `G⁺ = B⁻ + D⁺∩B⁺` and `G⁻ = B⁻ + D⁻∩B⁺`.
pub fn g_pair(m: &Representation, b: &Word, d: &Word) -> Result<(Subspace, Subspace)> {
    check_pair(m, b, d)?;
    let bp = plus_minus(m, b)?;
    let dp = plus_minus(m, d)?;
    Ok((
        bp.minus.sum(&dp.plus.intersect(&bp.plus)),
        bp.minus.sum(&dp.minus.intersect(&bp.plus)),
    ))
}

/// A word `C ∈ W_{v,ε}` with `m ∈ C⁺(M) \ C⁻(M)`.
pub fn covering_search(m: &Representation, v: usize, vec: &[Scalar], eps: i8) -> Result<Word> {
    covering_search_affine(m, v, vec, &Subspace::zero(m.field(), m.dim(v)), eps)
}

/// Covering search for the affine set `S = point + w`: returns `C` with `S`
/// meeting `C⁺(M)` but not `C⁻(M)`.
pub fn covering_search_affine(m: &Representation, v: usize, point: &[Scalar], w: &Subspace, eps: i8) -> Result<Word> {
    let alg = m.algebra();
    if v >= alg.num_vertices() || point.len() != m.dim(v) || w.ambient() != m.dim(v) {
        return Err(Error::Dimension("vector does not live in e_vM".into()));
    }
    if eps != 1 && eps != -1 {
        return Err(domain("sign must be 1 or -1"));
    }
    if w.contains(point) {
        return Err(domain("the set meets zero, so no word separates it"));
    }
    let meets = |x: &Subspace| w.sum(x).contains(point);
    let verified = |c: &Word| -> Result<bool> {
        let p = plus_minus(m, c)?;
        Ok(meets(&p.plus) && !meets(&p.minus))
    };

    let mut letters: Vec<Letter> = Vec::new();
    let mut rel = LinearRelation::identity(m.field(), m.dim(v));
    let max_steps = 4 * m.total_dim() + 8;
    loop {
        let d = if letters.is_empty() {
            Word::trivial(v, eps)
        } else {
            Word::Finite(letters.clone())
        };
        let mut next = None;
        if let Some(y) = extension(m, &d, true) {
            let r = rel.compose(&m.letter_relation(y));
            if meets(&r.apply_full()) {
                next = Some((y, r));
            }
        }
        if next.is_none() {
            if let Some(x) = extension(m, &d, false) {
                let r = rel.compose(&m.letter_relation(x));
                if !meets(&r.apply_zero()) {
                    next = Some((x, r));
                }
            }
        }
        let Some((l, r)) = next else {
            if verified(&d)? {
                return Ok(d);
            }
            return Err(internal("covering search stopped on a word that does not separate"));
        };
        letters.push(l);
        rel = r;

        let n = letters.len();
        if let Some(p) = (1..=n / 2).find(|&p| (p..n).all(|i| letters[i] == letters[i - p])) {
            let period = &letters[..p];
            if alg.letter_tail(period[p - 1]) == v && powers_are_words(alg, period) {
                if let Ok(c) = Word::eventually(alg, Vec::new(), period.to_vec()) {
                    if verified(&c)? {
                        return Ok(c);
                    }
                }
            }
        }
        if n > max_steps {
            return Err(internal("covering search did not settle"));
        }
    }
}

/// `(B, D) ∈ W_{v,1} × W_{v,-1}` with `m ∈ G⁺_{B,D}(M) \ G⁻_{B,D}(M)`.
pub fn refined_covering(m: &Representation, v: usize, vec: &[Scalar]) -> Result<(Word, Word)> {
    let b = covering_search(m, v, vec, 1)?;
    let bp = plus_minus(m, &b)?;
    let d = covering_search_affine(m, v, vec, &bp.minus, -1)?;
    let (gp, gm) = g_pair(m, &b, &d)?;
    if !gp.contains(vec) || gm.contains(vec) {
        return Err(internal("refined covering pair does not separate the vector"));
    }
    Ok((b, d))
}
