//! Linear relations between finite-dimensional spaces.
//!
//! A relation from `k^s` to `k^t` is stored as its graph, a subspace of
//! `k^(s+t)` whose first `s` coordinates are the source and last `t` the
//! target.

use crate::error::{internal, Result};
use crate::exactla::matrix::{add_vec, axpy, scale_vec, sub_vec, zero_vector};
use crate::exactla::{FieldSpec, Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    source: usize,
    target: usize,
    graph: Subspace,
}

impl LinearRelation {
    pub fn new(source: usize, target: usize, graph: Subspace) -> Self {
        assert_eq!(graph.ambient(), source + target, "graph ambient dimension");
        LinearRelation { source, target, graph }
    }

    /// Graph of the map `a : k^cols -> k^rows`.
    pub fn from_map(a: &Matrix) -> Self {
        let f = a.field();
        let (s, t) = (a.cols(), a.rows());
        let rows = (0..s)
            .map(|j| {
                let mut v = zero_vector(f, s + t);
                v[j] = f.one();
                for i in 0..t {
                    v[s + i] = a.get(i, j).clone();
                }
                v
            })
            .collect();
        Self::new(s, t, Subspace::span(f, s + t, rows))
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::from_map(&Matrix::identity(field, n))
    }

    /// Everything related to everything.
    pub fn full(field: FieldSpec, source: usize, target: usize) -> Self {
        Self::new(source, target, Subspace::full(field, source + target))
    }

    pub fn field(&self) -> FieldSpec {
        self.graph.field()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn relates(&self, v: &[Scalar], w: &[Scalar]) -> bool {
        let mut p = v.to_vec();
        p.extend_from_slice(w);
        self.graph.contains(&p)
    }

    pub fn invert(&self) -> LinearRelation {
        let (s, t) = (self.source, self.target);
        let rows = self
            .graph
            .basis()
            .iter()
            .map(|r| {
                let mut v = r[s..].to_vec();
                v.extend_from_slice(&r[..s]);
                v
            })
            .collect();
        Self::new(t, s, Subspace::span(self.field(), s + t, rows))
    }

    /// `self ∘ d`, where `d` relates `U` to `V` and `self` relates `V` to `W`.
    pub fn compose(&self, d: &LinearRelation) -> LinearRelation {
        assert_eq!(d.target, self.source, "compose: middle dimensions differ");
        let f = self.field();
        let (u, v, w) = (d.source, d.target, self.target);
        let n = u + v + w;
        // D ⊕ W and U ⊕ C inside U ⊕ V ⊕ W.
        let mut left: Vec<Vector> = d
            .graph
            .basis()
            .iter()
            .map(|r| {
                let mut x = r.clone();
                x.extend(zero_vector(f, w));
                x
            })
            .collect();
        for i in 0..w {
            let mut x = zero_vector(f, n);
            x[u + v + i] = f.one();
            left.push(x);
        }
        let mut right: Vec<Vector> = self
            .graph
            .basis()
            .iter()
            .map(|r| {
                let mut x = zero_vector(f, u);
                x.extend(r.iter().cloned());
                x
            })
            .collect();
        for i in 0..u {
            let mut x = zero_vector(f, n);
            x[i] = f.one();
            right.push(x);
        }
        let meet = Subspace::span(f, n, left).intersect(&Subspace::span(f, n, right));
        let rows = meet
            .basis()
            .iter()
            .map(|r| {
                let mut x = r[..u].to_vec();
                x.extend_from_slice(&r[u + v..]);
                x
            })
            .collect();
        Self::new(u, w, Subspace::span(f, u + w, rows))
    }

    /// `C H = { w : (v, w) ∈ C for some v ∈ H }`.
    pub fn apply(&self, h: &Subspace) -> Subspace {
        assert_eq!(h.ambient(), self.source, "apply: subspace ambient mismatch");
        let n = self.source + self.target;
        if h.is_full() {
            return self.graph.project(self.source..n);
        }
        let f = self.field();
        let mut rows: Vec<Vector> = h.embed(0, n).basis().to_vec();
        for i in 0..self.target {
            let mut x = zero_vector(f, n);
            x[self.source + i] = f.one();
            rows.push(x);
        }
        self.graph.intersect(&Subspace::span(f, n, rows)).project(self.source..n)
    }

    /// `C 0`.
    pub fn apply_zero(&self) -> Subspace {
        self.graph.slice(self.source..self.source + self.target)
    }

    /// `C V`.
    pub fn apply_full(&self) -> Subspace {
        self.graph.project(self.source..self.source + self.target)
    }

    /// Some `w ∈ within` with `(v, w) ∈ C`.
    pub fn image_in(&self, v: &[Scalar], within: &Subspace) -> Option<Vector> {
        let f = self.field();
        let (s, n) = (self.source, self.source + self.target);
        let mut rows: Vec<Vector> = within.embed(s, n).basis().to_vec();
        for i in 0..s {
            let mut x = zero_vector(f, n);
            x[i] = f.one();
            rows.push(x);
        }
        let r = self.graph.intersect(&Subspace::span(f, n, rows));
        let src: Vec<Vector> = r.basis().iter().map(|b| b[..s].to_vec()).collect();
        let alpha = Matrix::from_cols(f, s, &src).solve(v)?;
        let mut w = zero_vector(f, self.target);
        for (a, b) in alpha.iter().zip(r.basis()) {
            axpy(&mut w, a, &b[s..]);
        }
        Some(w)
    }

    /// `⋃ C^n 0`, the ascending chain stabilised.
    pub fn prime(&self) -> Subspace {
        self.check_endo();
        let mut cur = Subspace::zero(self.field(), self.source);
        loop {
            let next = self.apply(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `⋂ C^n V`, the descending chain stabilised.
    pub fn double_prime(&self) -> Subspace {
        self.check_endo();
        let mut cur = Subspace::full(self.field(), self.source);
        loop {
            let next = self.apply(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// The chain `0 ⊆ C0 ⊆ C²0 ⊆ …` up to stabilisation, starting with `0`.
    pub fn prime_levels(&self) -> Vec<Subspace> {
        let mut levels = vec![Subspace::zero(self.field(), self.source)];
        loop {
            let next = self.apply(levels.last().unwrap());
            if &next == levels.last().unwrap() {
                return levels;
            }
            levels.push(next);
        }
    }

    fn check_endo(&self) {
        assert_eq!(self.source, self.target, "endorelation expected");
    }

    pub fn core(&self) -> RelationCore {
        RelationCore::new(self)
    }
}

/// The subspaces `C′ ⊆ C″`, `C♭ ⊆ C♯` of an endorelation and the induced
/// automorphism `θ` of `C♯/C♭` in the basis `reps`.
#[derive(Clone, Debug)]
pub struct RelationCore {
    pub prime: Subspace,
    pub double_prime: Subspace,
    pub inv_prime: Subspace,
    pub inv_double_prime: Subspace,
    pub sharp: Subspace,
    pub flat: Subspace,
    /// Coset representatives of a basis of `C♯/C♭`.
    pub reps: Vec<Vector>,
    /// `θ(C♭ + reps[j]) = C♭ + Σ_i θ[i][j] reps[i]`.
    pub theta: Matrix,
    /// For each `j`, an image `w_j ∈ C♯ ∩ C reps[j]`.
    pub images: Vec<Vector>,
}

impl RelationCore {
    fn new(c: &LinearRelation) -> Self {
        let f = c.field();
        let ci = c.invert();
        let prime = c.prime();
        let double_prime = c.double_prime();
        let inv_prime = ci.prime();
        let inv_double_prime = ci.double_prime();
        let sharp = double_prime.intersect(&inv_double_prime);
        let flat = double_prime
            .intersect(&inv_prime)
            .sum(&prime.intersect(&inv_double_prime));
        let reps = flat.quotient_basis(&sharp).expect("flat ⊆ sharp");
        let k = reps.len();
        let mut theta = Matrix::zeros(f, k, k);
        let mut images = Vec::with_capacity(k);
        for (j, v) in reps.iter().enumerate() {
            let w = c.image_in(v, &sharp).expect("C♯ ⊆ C⁻¹C♯");
            let a = coords_mod(&reps, &flat, &w).expect("image lies in C♯");
            for (i, x) in a.into_iter().enumerate() {
                theta.set(i, j, x);
            }
            images.push(w);
        }
        RelationCore {
            prime,
            double_prime,
            inv_prime,
            inv_double_prime,
            sharp,
            flat,
            reps,
            theta,
            images,
        }
    }

    pub fn quotient_dim(&self) -> usize {
        self.reps.len()
    }
}

/// Coefficients `a` with `w - Σ a_i reps[i] ∈ flat`.
pub fn coords_mod(reps: &[Vector], flat: &Subspace, w: &[Scalar]) -> Option<Vector> {
    let f = flat.field();
    let n = flat.ambient();
    let mut cols = reps.to_vec();
    cols.extend(flat.basis().iter().cloned());
    let x = Matrix::from_cols(f, n, &cols).solve(w)?;
    Some(x[..reps.len()].to_vec())
}

/// A complement `U` of `C♭` in `C♯` on which the relation is the graph of an
/// automorphism with matrix `a`: `Σ_i a[i][j] u_i ∈ C u_j`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub u: Vec<Vector>,
    pub a: Matrix,
}

/// Constructive splitting: corrects coset representatives of `C♯/C♭` along
/// the finite chains through `C″∩(C⁻¹)′` and `C′∩(C⁻¹)″`.
pub fn split(c: &LinearRelation, core: &RelationCore) -> Result<Splitting> {
    let f = c.field();
    let n = c.source();
    let k = core.reps.len();
    let a = core.theta.clone();
    if k == 0 {
        return Ok(Splitting { u: Vec::new(), a });
    }
    let a_inv = a.inverse().ok_or_else(|| internal("induced automorphism is singular"))?;
    let ci = c.invert();
    let plus_part = core.double_prime.intersect(&core.inv_prime);
    let minus_part = core.prime.intersect(&core.inv_double_prime);
    // Levels (C⁻¹)^m 0 and C^m 0.
    let inv_levels = ci.prime_levels();
    let levels = c.prime_levels();

    let mut plus_chains: Vec<Vec<Vector>> = Vec::with_capacity(k); // index t ↦ b⁺_{-t}
    let mut minus_chains: Vec<Vec<Vector>> = Vec::with_capacity(k); // index t ↦ b⁻_{t}
    for j in 0..k {
        let mut lin = zero_vector(f, n);
        for i in 0..k {
            axpy(&mut lin, a.get(i, j), &core.reps[i]);
        }
        let b = sub_vec(&core.images[j], &lin);
        let (bp, bm) = split_sum(&plus_part, &minus_part, &b)
            .ok_or_else(|| internal("C♭ element does not split"))?;

        let mut chain = vec![bp.clone()];
        let mut level = level_of(&inv_levels, &bp)?;
        while level > 0 {
            let cur = chain.last().unwrap();
            let next = c
                .image_in(cur, &inv_levels[level - 1])
                .ok_or_else(|| internal("b⁺ chain broke"))?;
            chain.push(next);
            level -= 1;
        }
        plus_chains.push(chain);

        let mut chain = vec![bm.clone()];
        let mut level = level_of(&levels, &bm)?;
        while level > 0 {
            let cur = chain.last().unwrap();
            let next = ci
                .image_in(cur, &levels[level - 1])
                .ok_or_else(|| internal("b⁻ chain broke"))?;
            chain.push(next);
            level -= 1;
        }
        minus_chains.push(chain);
    }

    let max_plus = plus_chains.iter().map(Vec::len).max().unwrap_or(0);
    let max_minus = minus_chains.iter().map(Vec::len).max().unwrap_or(0);
    // M^{+,-t} = (A⁻¹)^{1+t}, M^{-,t} = -A^{t-1}.
    let mut plus_mats = Vec::with_capacity(max_plus);
    let mut p = a_inv.clone();
    for _ in 0..max_plus {
        plus_mats.push(p.clone());
        p = p.mul(&a_inv);
    }
    let mut minus_mats = vec![Matrix::identity(f, k)];
    for t in 1..max_minus {
        minus_mats.push(minus_mats[t - 1].mul(&a));
    }

    let mut u = Vec::with_capacity(k);
    for j in 0..k {
        let mut uj = core.reps[j].clone();
        for i in 0..k {
            for (t, b) in plus_chains[i].iter().enumerate() {
                axpy(&mut uj, plus_mats[t].get(i, j), b);
            }
            for (t, b) in minus_chains[i].iter().enumerate().skip(1) {
                let m = -minus_mats[t - 1].get(i, j);
                axpy(&mut uj, &m, b);
            }
        }
        u.push(uj);
    }

    let out = Splitting { u, a };
    verify_split(c, core, &out)?;
    Ok(out)
}

fn split_sum(p: &Subspace, m: &Subspace, b: &[Scalar]) -> Option<(Vector, Vector)> {
    let f = p.field();
    let mut cols = p.basis().to_vec();
    cols.extend(m.basis().iter().cloned());
    let x = Matrix::from_cols(f, b.len(), &cols).solve(b)?;
    let mut bp = zero_vector(f, b.len());
    for (c, v) in x.iter().zip(p.basis()) {
        axpy(&mut bp, c, v);
    }
    let bm = sub_vec(b, &bp);
    Some((bp, bm))
}

fn level_of(levels: &[Subspace], v: &[Scalar]) -> Result<usize> {
    levels
        .iter()
        .position(|l| l.contains(v))
        .ok_or_else(|| internal("vector outside the stabilised chain"))
}

/// Checks `C♯ = C♭ ⊕ U` and `Σ_i a_ij u_i ∈ C u_j`.
pub fn verify_split(c: &LinearRelation, core: &RelationCore, s: &Splitting) -> Result<()> {
    let f = c.field();
    let n = c.source();
    let span_u = Subspace::span(f, n, s.u.clone());
    if span_u.dim() != s.u.len() || !span_u.intersect(&core.flat).is_zero() {
        return Err(internal("splitting complement meets C♭"));
    }
    if span_u.sum(&core.flat) != core.sharp {
        return Err(internal("C♭ + U ≠ C♯"));
    }
    for j in 0..s.u.len() {
        let mut img = zero_vector(f, n);
        for i in 0..s.u.len() {
            img = add_vec(&img, &scale_vec(s.a.get(i, j), &s.u[i]));
        }
        if !c.relates(&s.u[j], &img) {
            return Err(internal("relation is not the automorphism on U"));
        }
    }
    Ok(())
}
