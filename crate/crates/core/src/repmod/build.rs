//! String modules `M(C)` and band modules `M(E, k[T]/(g^r))`.

use super::Representation;
use crate::algebra::StringAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix};
use crate::poly::{factor, factor_cap, Poly};
use crate::words::Word;

/// `M(C)` with `basis[i] = (v_i, index of b_i inside e_{v_i}M)`.
#[derive(Clone, Debug)]
pub struct StringModule {
    pub rep: Representation,
    pub basis: Vec<(usize, usize)>,
}

/// `V = k[T]/(g^r)` with `g` monic irreducible and `g(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BandCoefficient {
    pub g: Poly,
    pub r: usize,
}

impl BandCoefficient {
    pub fn new(g: Poly, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("band power must be at least 1".into()));
        }
        if g.deg() == 0 || !g.is_monic() {
            return Err(Error::Domain(format!("{g} is not monic of positive degree")));
        }
        if g.coeff(0).is_zero() {
            return Err(Error::Domain(format!("{g} vanishes at 0, so T would not be invertible")));
        }
        let fs = factor(&g, factor_cap().max(g.deg()))?;
        if fs.len() != 1 || fs[0].1 != 1 {
            return Err(Error::Domain(format!("{g} is reducible")));
        }
        Ok(BandCoefficient { g, r })
    }

    pub fn dim(&self) -> usize {
        self.g.deg() * self.r
    }

    /// Companion matrix of `g^r`.
    pub fn t_matrix(&self) -> Matrix {
        self.g.pow(self.r).companion()
    }

    /// The coefficient of `V⁻¹`, where `T` acts as `T⁻¹`.
    pub fn inverse(&self) -> BandCoefficient {
        BandCoefficient {
            g: self.g.reciprocal(),
            r: self.r,
        }
    }
}

/// `M(E, V)` with `blocks[i] = (v_i, first index of V_i inside e_{v_i}M)`
/// for `0 ≤ i < n`, each block of size `dim V`.
#[derive(Clone, Debug)]
pub struct BandModule {
    pub rep: Representation,
    pub blocks: Vec<(usize, usize)>,
    pub t: Matrix,
}

/// Positions of `b_0 … b_n` grouped by vertex, in index order.
fn place(alg: &StringAlgebra, verts: &[usize], block: usize) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut dims = vec![0; alg.num_vertices()];
    let pos = verts
        .iter()
        .map(|&v| {
            let p = (v, dims[v]);
            dims[v] += block;
            p
        })
        .collect();
    (dims, pos)
}

pub fn string_module(alg: &StringAlgebra, field: FieldSpec, c: &Word) -> Result<StringModule> {
    if !c.is_finite() {
        return Err(Error::Domain("string modules need a finite word".into()));
    }
    let verts = c.vertex_sequence(alg);
    let (dims, basis) = place(alg, &verts, 1);
    let mut action: Vec<Matrix> = (0..alg.num_arrows())
        .map(|a| Matrix::zeros(field, dims[alg.arrow_head(a)], dims[alg.arrow_tail(a)]))
        .collect();
    for (i, &l) in c.letters().iter().enumerate() {
        // Letter C_{i+1} joins b_i and b_{i+1}.
        let (from, to) = if l.is_direct() {
            (basis[i + 1], basis[i])
        } else {
            (basis[i], basis[i + 1])
        };
        action[l.arrow].set(to.1, from.1, field.one());
    }
    let rep = Representation::new(alg.clone(), field, dims, action)
        .map_err(|e| Error::Internal(format!("string module violates a relation: {e}")))?;
    Ok(StringModule { rep, basis })
}

/// Band module with `b_{i+n} = T b_i`: a letter joining `b_{n-1}` and `b_n`
/// acts between `V_{n-1}` and `V_0` through `T` or `T⁻¹`.
pub fn band_module(alg: &StringAlgebra, e: &Word, coeff: &BandCoefficient) -> Result<BandModule> {
    let Word::Periodic(letters) = e else {
        return Err(Error::Domain("band modules need a periodic word".into()));
    };
    Word::periodic(alg, letters.clone())?;
    let field = coeff.g.field();
    let n = letters.len();
    let verts = e.vertex_sequence(alg);
    let d = coeff.dim();
    let (dims, blocks) = place(alg, &verts[..n], d);
    let t = coeff.t_matrix();
    let t_inv = t.inverse().expect("g(0) ≠ 0");
    let id = Matrix::identity(field, d);
    let mut action: Vec<Matrix> = (0..alg.num_arrows())
        .map(|a| Matrix::zeros(field, dims[alg.arrow_head(a)], dims[alg.arrow_tail(a)]))
        .collect();
    for (i, &l) in letters.iter().enumerate() {
        let wrap = i + 1 == n;
        let left = blocks[i];
        let right = blocks[(i + 1) % n];
        // Direct: x b_{i+1} = b_i. Inverse: x b_i = b_{i+1}.
        let (from, to, m) = match (l.is_direct(), wrap) {
            (true, false) => (right, left, &id),
            (true, true) => (right, left, &t_inv),
            (false, false) => (left, right, &id),
            (false, true) => (left, right, &t),
        };
        let mut cur = action[l.arrow].submatrix(to.1..to.1 + d, from.1..from.1 + d);
        cur = cur.add(m);
        action[l.arrow].paste(to.1, from.1, &cur);
    }
    let rep = Representation::new(alg.clone(), field, dims, action)
        .map_err(|e| Error::Internal(format!("band module violates a relation: {e}")))?;
    Ok(BandModule { rep, blocks, t })
}
