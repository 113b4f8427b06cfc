//! Finite-dimensional representations of a string algebra.

mod build;
mod graded;
mod io;
mod torsion;

pub use build::{band_module, string_module, BandCoefficient, BandModule, StringModule};
pub use graded::{graded_algebra, graded_ingest, GradedData, GradedWindow};
pub use io::{matrix_literal, parse_entry, FieldLiteral, RepFile};
pub use torsion::{torsion, Torsion};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Letter, StringAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix};
use crate::linrel::LinearRelation;
use crate::words::Word;

/// A representation: one space per vertex and one matrix per arrow, of
/// shape `dims[head] × dims[tail]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    alg: StringAlgebra,
    field: FieldSpec,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl Representation {
    /// Checks shapes, fields and every zero relation.
    pub fn new(alg: StringAlgebra, field: FieldSpec, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() || action.len() != alg.num_arrows() {
            return Err(Error::Dimension("one dimension per vertex and one matrix per arrow".into()));
        }
        for (a, m) in action.iter().enumerate() {
            let (h, t) = (alg.arrow_head(a), alg.arrow_tail(a));
            if m.rows() != dims[h] || m.cols() != dims[t] {
                return Err(Error::Dimension(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    alg.arrows()[a].name,
                    dims[h],
                    dims[t],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::Malformed(format!("arrow {} is over {}", alg.arrows()[a].name, m.field())));
            }
        }
        let rep = Representation { alg, field, dims, action };
        for r in rep.alg.relations() {
            if !rep.path_matrix(r).is_zero() {
                let names: Vec<&str> = r.iter().map(|&a| rep.alg.arrows()[a].name.as_str()).collect();
                return Err(Error::Domain(format!("relation {} does not act as zero", names.join(" "))));
            }
        }
        Ok(rep)
    }

    pub fn zero(alg: &StringAlgebra, field: FieldSpec) -> Self {
        let dims = vec![0; alg.num_vertices()];
        let action = (0..alg.num_arrows()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Representation {
            alg: alg.clone(),
            field,
            dims,
            action,
        }
    }

    pub fn algebra(&self) -> &StringAlgebra {
        &self.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of a direct path `x_1 … x_m` (so `x_m` acts first).
    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dims[self.alg.arrow_tail(*path.last().unwrap())]);
        for &a in path.iter().rev() {
            acc = self.action[a].mul(&acc);
        }
        acc
    }

    /// `rel(ℓ)` from `e_{tail ℓ}M` to `e_{head ℓ}M`.
    pub fn letter_relation(&self, l: Letter) -> LinearRelation {
        let g = LinearRelation::from_map(&self.action[l.arrow]);
        if l.is_direct() {
            g
        } else {
            g.invert()
        }
    }

    /// `rel(C_1) ∘ … ∘ rel(C_n)` from `e_{v_n}M` to `e_{v_0}M`.
    pub fn letters_relation(&self, letters: &[Letter], head: usize) -> LinearRelation {
        let mut acc = LinearRelation::identity(self.field, self.dims[head]);
        for &l in letters {
            acc = acc.compose(&self.letter_relation(l));
        }
        acc
    }

    /// The relation of a finite or trivial word, or of one period of a
    /// periodic word.
    pub fn word_relation(&self, c: &Word) -> LinearRelation {
        let head = c.head(&self.alg);
        match c {
            Word::Trivial { .. } => LinearRelation::identity(self.field, self.dims[head]),
            Word::Finite(l) | Word::Periodic(l) => self.letters_relation(l, head),
            _ => panic!("word_relation needs a finite word"),
        }
    }

    /// Offset of vertex `v`'s coordinates in the concatenation of all
    /// vertex spaces.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    /// `P_head · A · P_tail⁻¹` for invertible per-vertex matrices `p`.
    pub fn conjugate(&self, p: &[Matrix]) -> Result<Representation> {
        let inv: Vec<Matrix> = p
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Domain("change of basis is not invertible".into())))
            .collect::<Result<_>>()?;
        let action = (0..self.alg.num_arrows())
            .map(|a| p[self.alg.arrow_head(a)].mul(&self.action[a]).mul(&inv[self.alg.arrow_tail(a)]))
            .collect();
        Representation::new(self.alg.clone(), self.field, self.dims.clone(), action)
    }

    /// True when `theta` (one matrix per vertex, `N → self`) intertwines
    /// the actions of `n` and `self`.
    pub fn is_homomorphism_from(&self, n: &Representation, theta: &[Matrix]) -> bool {
        (0..self.alg.num_arrows()).all(|a| {
            let (h, t) = (self.alg.arrow_head(a), self.alg.arrow_tail(a));
            theta[h].mul(&n.action[a]) == self.action[a].mul(&theta[t])
        })
    }
}

/// Block-diagonal sum. Needs at least the algebra and field when `parts`
/// is empty, so those are passed explicitly.
pub fn direct_sum(alg: &StringAlgebra, field: FieldSpec, parts: &[Representation]) -> Result<Representation> {
    for p in parts {
        if p.alg != *alg || p.field != field {
            return Err(Error::Domain("direct sum of representations over different algebras or fields".into()));
        }
    }
    let dims = (0..alg.num_vertices())
        .map(|v| parts.iter().map(|p| p.dims[v]).sum())
        .collect();
    let action = (0..alg.num_arrows())
        .map(|a| {
            let blocks: Vec<Matrix> = parts.iter().map(|p| p.action[a].clone()).collect();
            block_diag_rect(field, &blocks)
        })
        .collect();
    Representation::new(alg.clone(), field, dims, action)
}

fn block_diag_rect(field: FieldSpec, blocks: &[Matrix]) -> Matrix {
    let rows = blocks.iter().map(Matrix::rows).sum();
    let cols = blocks.iter().map(Matrix::cols).sum();
    let mut out = Matrix::zeros(field, rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.paste(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    out
}

/// A representation conjugated by a random change of basis; `change[v]`
/// maps old coordinates at `v` to new ones.
#[derive(Clone, Debug)]
pub struct Scrambled {
    pub rep: Representation,
    pub change: Vec<Matrix>,
}

pub fn scramble(m: &Representation, seed: u64) -> Scrambled {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = m.field;
    let change: Vec<Matrix> = m
        .dims
        .iter()
        .map(|&d| loop {
            let p = Matrix::from_fn(f, d, d, |_, _| f.random(&mut rng));
            if p.is_invertible() {
                break p;
            }
        })
        .collect();
    let rep = m.conjugate(&change).expect("random change of basis is invertible");
    Scrambled { rep, change }
}
