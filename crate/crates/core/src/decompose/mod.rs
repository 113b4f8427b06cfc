//! Decomposition into string and band modules.
//!
//! Candidate words come from a depth-first search bounded by `dim e_vM`.
//! A string word `C` is counted by `F_{C, 1_{v,-ε}}`, a band word `E` by
//! the `T`-module `F_{(E⁻¹)^∞, E^∞}`.

mod certify;
mod laurent;
mod report;

pub use certify::{certify, Certificate};
pub use laurent::{laurent_decompose, LaurentModule};
pub use report::{BandEntry, DecompositionReport, StringEntry};

use std::collections::BTreeMap;

use crate::algebra::{Letter, StringAlgebra};
use crate::error::{internal, Result};
use crate::exactla::Subspace;
use crate::functors::refined;
use crate::repmod::{BandCoefficient, Representation};
use crate::words::{invert_letters, visit_words, Word, WordVisitor};

/// The letter `ℓ` of the requested kind with `C ℓ` a word, if any.
fn extension(alg: &StringAlgebra, c: &Word, direct: bool) -> Option<Letter> {
    let tail = c.tail(alg)?;
    alg.letters()
        .into_iter()
        .filter(|l| l.is_direct() == direct && alg.letter_head(*l) == tail)
        .find(|&l| c.compose(alg, &Word::Finite(vec![l])).is_ok())
}

/// `(E, V)` and `((E⁻¹)[k], V⁻¹)` describe the same band; keep the one whose
/// word is the canonical representative.
pub fn canonical_band(e: &Word, coeff: &BandCoefficient) -> (Word, BandCoefficient) {
    let canon = e.canonical();
    let letters = e.letters();
    let n = letters.len();
    let is_rotation = (0..n).any(|k| Word::Periodic(letters.to_vec()).shift(k as i64) == canon);
    if is_rotation {
        (canon, coeff.clone())
    } else {
        (canon, coeff.inverse())
    }
}

/// Images `C Z` at the head of the current word, for the base subspaces `Z`
/// at its tail: `M`, `0`, then `ℓ M` or `ℓ 0` for each letter `ℓ` ending there.
#[derive(Clone)]
struct Images {
    tail: usize,
    imgs: Vec<Subspace>,
}

struct Search<'a> {
    m: &'a Representation,
    /// Per vertex, the letters whose images are tracked.
    base_letters: Vec<Vec<Letter>>,
    /// `start_images(v)` for every vertex.
    starts: Vec<Images>,
    strings: BTreeMap<Word, usize>,
    bands: BTreeMap<Word, Vec<(BandCoefficient, usize)>>,
    error: Option<crate::error::Error>,
}

impl Search<'_> {
    fn base_index(&self, tail: usize, l: Letter) -> usize {
        2 + self.base_letters[tail].iter().position(|&x| x == l).expect("tracked letter")
    }

    /// `(C⁺, C⁻)` read off the tracked images.
    fn plus_minus(&self, c: &Word, st: &Images) -> (Subspace, Subspace) {
        let alg = self.m.algebra();
        let plus = match extension(alg, c, false) {
            Some(x) => st.imgs[self.base_index(st.tail, x)].clone(),
            None => st.imgs[0].clone(),
        };
        let minus = match extension(alg, c, true) {
            Some(y) => st.imgs[self.base_index(st.tail, y)].clone(),
            None => st.imgs[1].clone(),
        };
        (plus, minus)
    }

    fn string_multiplicity(&self, c: &Word, st: &Images) -> usize {
        let alg = self.m.algebra();
        let v = c.head(alg);
        let d = Word::trivial(v, -c.sign(alg));
        let (bp, bm) = self.plus_minus(c, st);
        let (dp, dm) = self.plus_minus(&d, &self.starts[v]);
        let fp = bp.intersect(&dp);
        let fm = bp.intersect(&dm).sum(&bm.intersect(&dp));
        fp.dim() - fm.dim()
    }

    fn start_images(&self, v: usize) -> Images {
        let m = self.m;
        let f = m.field();
        let mut imgs = vec![Subspace::full(f, m.dim(v)), Subspace::zero(f, m.dim(v))];
        for &l in &self.base_letters[v] {
            let r = m.letter_relation(l);
            imgs.push(if l.is_direct() { r.apply_full() } else { r.apply_zero() });
        }
        Images { tail: v, imgs }
    }

    /// `E^k M = E^k 0` for some `k` puts `C♯` inside `C′ ∩ (C⁻¹)″ ⊆ C♭`, so
    /// the band cannot occur. Cheaper than the refined functor, which works
    /// with relations on `V ⊕ V`.
    fn band_vanishes(&self, e: &[Letter], st: &Images) -> bool {
        let apply = |s: &Subspace| {
            e.iter().rev().fold(s.clone(), |s, &l| {
                let a = self.m.action(l.arrow);
                if l.is_direct() {
                    s.image(a)
                } else {
                    s.preimage(a)
                }
            })
        };
        let (mut top, mut bottom) = (st.imgs[0].clone(), st.imgs[1].clone());
        loop {
            if top == bottom {
                return true;
            }
            let (t, b) = (apply(&top), apply(&bottom));
            if t == top && b == bottom {
                return false;
            }
            (top, bottom) = (t, b);
        }
    }

    fn record_band(&mut self, e: &[Letter]) -> Result<()> {
        let alg = self.m.algebra();
        let d = Word::eventually(alg, Vec::new(), e.to_vec())?;
        let b = Word::eventually(alg, Vec::new(), invert_letters(e))?;
        let f = refined(self.m, &b, &d)?;
        if f.dim() == 0 {
            return Ok(());
        }
        let t = f.t.ok_or_else(|| internal("periodic pair without a T-action"))?;
        let parts = laurent_decompose(&LaurentModule::new(t)?)?;
        self.bands.insert(Word::Periodic(e.to_vec()), parts);
        Ok(())
    }
}

impl WordVisitor for Search<'_> {
    type State = Images;

    fn start(&mut self, v: usize) -> Option<Images> {
        let st = &self.starts[v];
        (st.imgs[0] != st.imgs[1]).then(|| st.clone())
    }

    fn extend(&mut self, st: &Images, l: Letter) -> Option<Images> {
        let a = self.m.action(l.arrow);
        let imgs: Vec<Subspace> = st
            .imgs
            .iter()
            .map(|s| if l.is_direct() { s.image(a) } else { s.preimage(a) })
            .collect();
        (imgs[0] != imgs[1]).then_some(Images { tail: st.tail, imgs })
    }

    fn finite(&mut self, letters: &[Letter], vertex: usize, st: &Images) {
        let c = if letters.is_empty() {
            Word::trivial(vertex, 1)
        } else {
            Word::Finite(letters.to_vec())
        };
        if c.canonical() != c {
            return;
        }
        let n = self.string_multiplicity(&c, st);
        if n > 0 {
            self.strings.insert(c, n);
        }
    }

    fn closed(&mut self, letters: &[Letter], st: &Images) {
        let e = Word::Periodic(letters.to_vec());
        if self.error.is_some() || e.canonical() != e || self.bands.contains_key(&e) || self.band_vanishes(letters, st) {
            return;
        }
        if let Err(err) = self.record_band(letters) {
            self.error = Some(err);
        }
    }
}

pub fn decompose(m: &Representation) -> Result<DecompositionReport> {
    let alg = m.algebra();
    let base_letters = (0..alg.num_vertices())
        .map(|v| alg.letters().into_iter().filter(|&l| alg.letter_head(l) == v).collect())
        .collect();
    let mut s = Search {
        m,
        base_letters,
        starts: Vec::new(),
        strings: BTreeMap::new(),
        bands: BTreeMap::new(),
        error: None,
    };
    s.starts = (0..alg.num_vertices()).map(|v| s.start_images(v)).collect();
    visit_words(alg, m.dims(), &mut s);
    if let Some(e) = s.error {
        return Err(e);
    }
    // A second split of each string word must give the same count.
    for (c, &n) in &s.strings {
        if let Some(len) = c.len().filter(|&l| l >= 1) {
            let i = len.div_ceil(2);
            let (right, left) = c.halves(alg, i);
            if refined(m, &left, &right)?.dim() != n {
                return Err(internal(format!("split at {i} disagrees on {}", c.format(alg))));
            }
        }
    }
    let strings = s.strings.into_iter().map(|(word, mult)| StringEntry { word, mult }).collect();
    let mut bands: Vec<BandEntry> = s
        .bands
        .into_iter()
        .flat_map(|(word, parts)| {
            parts.into_iter().map(move |(coeff, mult)| BandEntry {
                word: word.clone(),
                coeff,
                mult,
            })
        })
        .collect();
    bands.sort_by(report::band_cmp);
    let report = DecompositionReport::new(alg, strings, bands);
    if report.audit != m.dims() {
        return Err(internal(format!(
            "dimension audit failed: summands give {:?}, module has {:?}",
            report.audit,
            m.dims()
        )));
    }
    Ok(report)
}

/// Whether two modules have the same summands.
pub fn krs_check(m1: &Representation, m2: &Representation) -> Result<bool> {
    if m1.algebra() != m2.algebra() || m1.field() != m2.field() || m1.dims() != m2.dims() {
        return Ok(false);
    }
    Ok(decompose(m1)?.same_summands(&decompose(m2)?))
}

#[cfg(test)]
mod tests;
