//! Finite-dimensional `k[T,T⁻¹]`-modules: block structure of an invertible
//! matrix from its characteristic polynomial.

use crate::error::{domain, Result};
use crate::exactla::{Matrix, Subspace};
use crate::poly::{char_poly, factor, factor_cap};
use crate::repmod::BandCoefficient;

/// An invertible matrix, seen as the action of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentModule {
    t: Matrix,
}

impl LaurentModule {
    pub fn new(t: Matrix) -> Result<Self> {
        if !t.is_square() {
            return Err(domain("T must be square"));
        }
        if !t.is_invertible() {
            return Err(domain("T is singular"));
        }
        Ok(LaurentModule { t })
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }
}

/// Summands `k[T]/(g^r)` with multiplicities, sorted by `(g, r)`.
pub fn laurent_decompose(l: &LaurentModule) -> Result<Vec<(BandCoefficient, usize)>> {
    let t = &l.t;
    let n = t.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (g, e) in factor(&char_poly(t), factor_cap())? {
        let d = g.deg();
        let gt = g.eval_matrix(t);
        // ker g(T)^j for j = 0 ..= e + 1, in units of deg g.
        let mut k = vec![0usize];
        let mut p = Matrix::identity(t.field(), n);
        for _ in 0..=e {
            p = p.mul(&gt);
            k.push(Subspace::kernel(&p).dim() / d);
        }
        for r in 1..=e {
            let count = (k[r] - k[r - 1]) - (k[r + 1] - k[r]);
            if count > 0 {
                out.push((BandCoefficient { g: g.clone(), r }, count));
            }
        }
    }
    out.sort_by(|a, b| a.0.g.canonical_cmp(&b.0.g).then(a.0.r.cmp(&b.0.r)));
    Ok(out)
}
