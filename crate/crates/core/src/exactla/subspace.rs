//! Subspaces of `k^n` in canonical reduced row-echelon form.
//!
//! Because the echelon basis is unique, `==` on [`Subspace`] is equality of
//! subspaces.

use super::field::{FieldSpec, Scalar};
use super::matrix::{axpy, is_zero_vec, rref_rows, scaled_products, Matrix, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::span(field, ambient, Matrix::identity(field, ambient).row_vectors())
    }

    pub fn span(field: FieldSpec, ambient: usize, mut vectors: Vec<Vector>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let pivots = rref_rows(&mut vectors, ambient);
        Subspace {
            field,
            ambient,
            basis: vectors,
            pivots,
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.cols(), m.row_vectors())
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), m.col_vectors())
    }

    /// `{x : m x = 0}`.
    pub fn kernel(m: &Matrix) -> Self {
        Self::span(m.field(), m.cols(), m.kernel_basis())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Echelon basis rows.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, &self.basis)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::Dimension(format!(
                "subspaces of {}^{} and {}^{}",
                self.field, self.ambient, other.field, other.ambient
            )));
        }
        Ok(())
    }

    /// Normal form of `v` modulo this subspace: zero exactly when `v` lies in it.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = -&w[p];
                axpy(&mut w, &f, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        is_zero_vec(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.dim() <= other.dim() && self.basis.iter().all(|b| other.contains(b))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.check_ambient(other).expect("sum of subspaces");
        if other.is_zero() || self.is_full() {
            return self.clone();
        }
        if self.is_zero() || other.is_full() {
            return other.clone();
        }
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span(self.field, self.ambient, v)
    }

    pub fn add_vector(&self, v: &[Scalar]) -> Subspace {
        if self.contains(v) {
            return self.clone();
        }
        let mut b = self.basis.clone();
        b.push(v.to_vec());
        Self::span(self.field, self.ambient, b)
    }

    /// Vectors orthogonal to every element under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        Self::kernel(&self.basis_matrix())
    }

    /// Intersection computed as the annihilator of the sum of annihilators.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.check_ambient(other).expect("intersection of subspaces");
        if self.is_zero() || other.is_full() {
            return self.clone();
        }
        if other.is_zero() || self.is_full() {
            return other.clone();
        }
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Vectors whose classes form a basis of `w / self`; requires `self ⊆ w`.
    pub fn quotient_basis(&self, w: &Subspace) -> Result<Vec<Vector>> {
        self.check_ambient(w)?;
        if !self.is_subspace_of(w) {
            return Err(Error::Dimension("quotient_basis needs U ⊆ W".into()));
        }
        let mut cur = self.clone();
        let mut out = Vec::new();
        for b in &w.basis {
            if !cur.contains(b) {
                cur = cur.add_vector(b);
                out.push(b.clone());
            }
        }
        Ok(out)
    }

    /// `{a u : u ∈ self}` for `a` of shape `m × ambient`.
    pub fn image(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.cols(), self.ambient, "image: shape mismatch");
        if let Some(v) = scaled_products(&self.basis, &a.transpose()) {
            return Self::span(self.field, a.rows(), v);
        }
        let v = self.basis.iter().map(|b| a.mul_vec(b)).collect();
        Self::span(self.field, a.rows(), v)
    }

    /// `{v : a v ∈ self}` for `a` of shape `ambient × n`.
    pub fn preimage(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.rows(), self.ambient, "preimage: shape mismatch");
        if self.is_full() {
            return Self::full(self.field, a.cols());
        }
        let ann = self.annihilator();
        if let Some(rows) = scaled_products(ann.basis(), a) {
            return Self::kernel(&Matrix::from_rows(self.field, a.cols(), &rows));
        }
        Self::kernel(&ann.basis_matrix().mul(a))
    }

    /// Embeds into `k^total` at coordinates `offset..offset+ambient`.
    pub fn embed(&self, offset: usize, total: usize) -> Subspace {
        let v = self
            .basis
            .iter()
            .map(|b| {
                let mut w = vec![self.field.zero(); total];
                w[offset..offset + self.ambient].clone_from_slice(b);
                w
            })
            .collect();
        Self::span(self.field, total, v)
    }

    /// Projection onto the coordinates `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Subspace {
        let v = self.basis.iter().map(|b| b[range.clone()].to_vec()).collect();
        Self::span(self.field, range.len(), v)
    }

    /// Elements whose coordinates outside `range` vanish, restricted to `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Subspace {
        let n = self.ambient;
        let mut outside = Vec::new();
        for i in (0..n).filter(|i| !range.contains(i)) {
            let mut e = vec![self.field.zero(); n];
            e[i] = self.field.one();
            outside.push(e);
        }
        let coords = Self::span(self.field, n, outside).annihilator();
        self.intersect(&coords).project(range)
    }
}
