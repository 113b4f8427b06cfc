//! Quivers with zero relations, the string-algebra axioms, letter signs and
//! primitive cycles.
//!
//! Paths compose right to left: in the path `x y` the arrow `y` is applied
//! first, so `tail(x) = head(y)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub head: String,
    pub tail: String,
}

/// A letter: an arrow (`inverse = false`) or its formal inverse. The derived
/// order puts arrows in declaration order, each direct letter before its
/// inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: usize) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn invert(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn is_direct(self) -> bool {
        !self.inverse
    }
}

/// A validated string algebra `kQ/(ρ)` with a sign for every letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringAlgebra {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    heads: Vec<usize>,
    tails: Vec<usize>,
    /// Arrow-index sequences, leftmost arrow first.
    relations: Vec<Vec<usize>>,
    /// `signs[arrow] = [sign of direct letter, sign of inverse letter]`.
    signs: Vec<[i8; 2]>,
}

/// The serialisable form used in algebra files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    /// Keys are letter literals (`"x"`, `"x^-1"`), values `1` or `-1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<BTreeMap<String, i8>>,
}

impl StringAlgebra {
    /// Validates the quiver and relations, then takes explicit signs (checked)
    /// or computes the canonical sign assignment.
    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let mut alg = Self::unsigned(file)?;
        alg.validate_axioms()?;
        match &file.signs {
            Some(map) => {
                let mut signs = vec![[0i8; 2]; alg.arrows.len()];
                for (lit, &s) in map {
                    if s != 1 && s != -1 {
                        return Err(Error::Malformed(format!("sign of {lit} must be 1 or -1")));
                    }
                    let l = alg.parse_letter(lit)?;
                    signs[l.arrow][l.inverse as usize] = s;
                }
                if let Some(i) = signs.iter().position(|s| s.contains(&0)) {
                    return Err(Error::Malformed(format!("missing sign for a letter of arrow {}", alg.arrows[i].name)));
                }
                alg.signs = signs;
                if let Some((a, b)) = alg.sign_violation() {
                    return Err(Error::Domain(format!(
                        "sign condition violated by letters {} and {}",
                        alg.letter_name(a),
                        alg.letter_name(b)
                    )));
                }
            }
            None => alg.signs = alg.assign_signs()?,
        }
        Ok(alg)
    }

    /// Convenience constructor from string slices; relations are lists of arrow names.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&[&str]]) -> Result<Self> {
        Self::from_file(&AlgebraFile {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, h, t)| Arrow {
                    name: n.to_string(),
                    head: h.to_string(),
                    tail: t.to_string(),
                })
                .collect(),
            relations: relations
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
            signs: None,
        })
    }

    fn unsigned(file: &AlgebraFile) -> Result<Self> {
        let mut vindex = BTreeMap::new();
        for (i, v) in file.vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate vertex {v}")));
            }
        }
        let mut names = BTreeMap::new();
        let (mut heads, mut tails) = (Vec::new(), Vec::new());
        for (i, a) in file.arrows.iter().enumerate() {
            if a.name.is_empty() || a.name.contains(char::is_whitespace) || a.name.contains('^') {
                return Err(Error::Malformed(format!("bad arrow name {:?}", a.name)));
            }
            if names.insert(a.name.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate arrow {}", a.name)));
            }
            let h = *vindex
                .get(&a.head)
                .ok_or_else(|| Error::Malformed(format!("arrow {} has unknown head {}", a.name, a.head)))?;
            let t = *vindex
                .get(&a.tail)
                .ok_or_else(|| Error::Malformed(format!("arrow {} has unknown tail {}", a.name, a.tail)))?;
            heads.push(h);
            tails.push(t);
        }
        let mut relations = Vec::new();
        for r in &file.relations {
            if r.len() < 2 {
                return Err(Error::Malformed(format!("relation {r:?} has length < 2")));
            }
            let idx = r
                .iter()
                .map(|n| names.get(n).copied().ok_or_else(|| Error::Malformed(format!("unknown arrow {n} in relation"))))
                .collect::<Result<Vec<_>>>()?;
            for w in idx.windows(2) {
                if tails[w[0]] != heads[w[1]] {
                    return Err(Error::Malformed(format!("relation {} is not a path", r.join(" "))));
                }
            }
            relations.push(idx);
        }
        Ok(StringAlgebra {
            vertices: file.vertices.clone(),
            arrows: file.arrows.clone(),
            heads,
            tails,
            relations,
            signs: vec![[0, 0]; file.arrows.len()],
        })
    }

    /// Conditions (a) and (b) of a string algebra.
    fn validate_axioms(&self) -> Result<()> {
        for (v, name) in self.vertices.iter().enumerate() {
            let inn = self.heads.iter().filter(|&&h| h == v).count();
            let out = self.tails.iter().filter(|&&t| t == v).count();
            if inn > 2 || out > 2 {
                return Err(Error::Domain(format!(
                    "condition (a) fails at vertex {name}: head of {inn} arrows, tail of {out}"
                )));
            }
        }
        for y in 0..self.arrows.len() {
            let after = (0..self.arrows.len())
                .filter(|&x| self.tails[x] == self.heads[y] && !self.is_relation(&[x, y]))
                .count();
            let before = (0..self.arrows.len())
                .filter(|&z| self.heads[z] == self.tails[y] && !self.is_relation(&[y, z]))
                .count();
            if after > 1 || before > 1 {
                return Err(Error::Domain(format!(
                    "condition (b) fails at arrow {}: {after} nonzero paths x{n}, {before} nonzero paths {n}z",
                    self.arrows[y].name,
                    n = self.arrows[y].name
                )));
            }
        }
        Ok(())
    }

    pub fn is_relation(&self, path: &[usize]) -> bool {
        self.relations.iter().any(|r| r.as_slice() == path)
    }

    /// Two distinct letters with equal head and sign that are not `{x⁻¹, y}`
    /// for a relation `xy`.
    fn sign_violation(&self) -> Option<(Letter, Letter)> {
        let letters = self.letters();
        for (i, &a) in letters.iter().enumerate() {
            for &b in &letters[i + 1..] {
                if self.letter_head(a) == self.letter_head(b) && self.sign(a) == self.sign(b) && !self.sign_pair_ok(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn sign_pair_ok(&self, a: Letter, b: Letter) -> bool {
        let ok = |p: Letter, q: Letter| p.inverse && q.is_direct() && self.is_relation(&[p.arrow, q.arrow]);
        ok(a, b) || ok(b, a)
    }

    /// Backtracking over letters ordered by (head vertex, arrow name, direct
    /// first), trying `-1` before `+1`; the first complete assignment wins.
    fn assign_signs(&self) -> Result<Vec<[i8; 2]>> {
        let mut order = self.letters();
        order.sort_by(|a, b| {
            (self.letter_head(*a), &self.arrows[a.arrow].name, a.inverse).cmp(&(
                self.letter_head(*b),
                &self.arrows[b.arrow].name,
                b.inverse,
            ))
        });
        let mut assigned: Vec<(Letter, i8)> = Vec::with_capacity(order.len());
        if !self.backtrack(&order, &mut assigned) {
            return Err(Error::Domain("no sign assignment satisfies the sign condition".into()));
        }
        let mut signs = vec![[0i8; 2]; self.arrows.len()];
        for (l, s) in assigned {
            signs[l.arrow][l.inverse as usize] = s;
        }
        Ok(signs)
    }

    fn backtrack(&self, order: &[Letter], assigned: &mut Vec<(Letter, i8)>) -> bool {
        let Some(&l) = order.get(assigned.len()) else {
            return true;
        };
        for s in [-1i8, 1] {
            let clash = assigned
                .iter()
                .any(|&(m, t)| t == s && self.letter_head(m) == self.letter_head(l) && !self.sign_pair_ok(l, m));
            if clash {
                continue;
            }
            assigned.push((l, s));
            if self.backtrack(order, assigned) {
                return true;
            }
            assigned.pop();
        }
        false
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_head(&self, a: usize) -> usize {
        self.heads[a]
    }

    pub fn arrow_tail(&self, a: usize) -> usize {
        self.tails[a]
    }

    /// All letters, in the derived `Letter` order.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.arrows.len())
            .flat_map(|a| [Letter::direct(a), Letter::inv(a)])
            .collect()
    }

    pub fn letter_head(&self, l: Letter) -> usize {
        if l.inverse {
            self.tails[l.arrow]
        } else {
            self.heads[l.arrow]
        }
    }

    pub fn letter_tail(&self, l: Letter) -> usize {
        if l.inverse {
            self.heads[l.arrow]
        } else {
            self.tails[l.arrow]
        }
    }

    pub fn sign(&self, l: Letter) -> i8 {
        self.signs[l.arrow][l.inverse as usize]
    }

    /// Signs as a letter-literal map, for reports.
    pub fn sign_map(&self) -> BTreeMap<String, i8> {
        self.letters().into_iter().map(|l| (self.letter_name(l), self.sign(l))).collect()
    }

    pub fn letter_name(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.arrows[l.arrow].name)
        } else {
            self.arrows[l.arrow].name.clone()
        }
    }

    pub fn parse_letter(&self, s: &str) -> Result<Letter> {
        let s = s.trim();
        let (name, inverse) = match s.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (s, false),
        };
        let a = self
            .arrow_index(name)
            .ok_or_else(|| Error::Malformed(format!("unknown arrow {name:?}")))?;
        Ok(Letter { arrow: a, inverse })
    }

    /// Letters `l` that may follow `prev` in a word (`prev l` consecutive),
    /// ignoring relations of length > 2.
    pub fn successors(&self, prev: Letter) -> impl Iterator<Item = Letter> + '_ {
        self.letters()
            .into_iter()
            .filter(move |&l| self.letter_head(l) == self.letter_tail(prev) && l != prev.invert() && self.sign(l) != self.sign(prev.invert()))
    }

    /// Longest relation length (at least 2).
    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(2)
    }

    /// Every primitive cycle, one per starting arrow, listed by first arrow.
    pub fn primitive_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.arrows.len();
        let mut out = Vec::new();
        for a in 0..n {
            // Follow the unique continuation for up to n letters.
            let mut seq = vec![a];
            while seq.len() < n {
                let last = *seq.last().unwrap();
                let next = (0..n).find(|&b| self.tails[last] == self.heads[b] && !self.is_relation(&[last, b]));
                match next {
                    Some(b) => seq.push(b),
                    None => break,
                }
            }
            for p in 1..=seq.len() {
                let cand = &seq[..p];
                if self.tails[cand[p - 1]] != self.heads[cand[0]] {
                    continue;
                }
                if (1..p).any(|d| p % d == 0 && (0..p).all(|i| cand[i] == cand[i % d])) {
                    continue;
                }
                let reps = self.max_relation_len() / p + 2;
                let power: Vec<usize> = cand.iter().copied().cycle().take(p * reps).collect();
                if self.direct_path_avoids_relations(&power) {
                    out.push(cand.to_vec());
                    break;
                }
            }
        }
        out
    }

    /// True when no relation occurs as consecutive arrows of `path`.
    pub fn direct_path_avoids_relations(&self, path: &[usize]) -> bool {
        self.relations
            .iter()
            .all(|r| r.len() > path.len() || !path.windows(r.len()).any(|w| w == r.as_slice()))
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().map(|&a| self.arrows[a].name.clone()).collect())
                .collect(),
            signs: Some(self.sign_map()),
        }
    }
}

impl fmt::Display for StringAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(""))
            .collect();
        write!(
            f,
            "{} vertices, {} arrows, relations {{{}}}",
            self.vertices.len(),
            self.arrows.len(),
            rels.join(", ")
        )
    }
}

/// `k[x,y]/(xy)`.
pub fn kxy_mod_xy() -> StringAlgebra {
    StringAlgebra::new(&["v"], &[("x", "v", "v"), ("y", "v", "v")], &[&["x", "y"], &["y", "x"]]).unwrap()
}

/// `k<x,y>/(x², y²)`.
pub fn kxy_mod_squares() -> StringAlgebra {
    StringAlgebra::new(&["v"], &[("x", "v", "v"), ("y", "v", "v")], &[&["x", "x"], &["y", "y"]]).unwrap()
}

/// A gentle quiver on three vertices with arrows `a: 1→2`, `b: 2→3`,
/// `c: 3→1`, `d: 1→3` and relations `cd`, `dc`.
pub fn three_vertex_gentle() -> StringAlgebra {
    StringAlgebra::new(
        &["1", "2", "3"],
        &[("a", "2", "1"), ("b", "3", "2"), ("c", "1", "3"), ("d", "3", "1")],
        &[&["c", "d"], &["d", "c"]],
    )
    .unwrap()
}
