//! Nilpotent and primitive torsion of the vertex spaces.

use super::Representation;
use crate::error::{internal, Result};
use crate::exactla::Subspace;

/// Per-vertex `τ⁰(e_vM)`, `τ¹(e_vM)`, and per primitive cycle (listed as in
/// [`StringAlgebra::primitive_cycles`](crate::algebra::StringAlgebra::primitive_cycles))
/// the pair `(τ_P⁰, τ_P¹)` inside `e_{head P}M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torsion {
    pub nilpotent: Vec<Subspace>,
    pub primitive: Vec<Subspace>,
    pub per_cycle: Vec<(Vec<usize>, Subspace, Subspace)>,
}

pub fn torsion(m: &Representation) -> Result<Torsion> {
    let alg = m.algebra();
    let f = m.field();
    let mut nilpotent: Vec<Subspace> = (0..alg.num_vertices()).map(|v| Subspace::full(f, m.dim(v))).collect();
    let mut primitive: Vec<Subspace> = (0..alg.num_vertices()).map(|v| Subspace::zero(f, m.dim(v))).collect();
    let mut per_cycle = vec![];
    for p in alg.primitive_cycles() {
        let v = alg.arrow_head(p[0]);
        let a = m.path_matrix(&p);
        let d = m.dim(v);
        let t0 = Subspace::kernel(&a.pow(d as u32));
        // Images of powers of P shrink until they stabilise.
        let mut img = Subspace::full(f, d);
        loop {
            let next = img.image(&a);
            if next == img {
                break;
            }
            img = next;
        }
        nilpotent[v] = nilpotent[v].intersect(&t0);
        let sum = primitive[v].sum(&img);
        if sum.dim() != primitive[v].dim() + img.dim() {
            return Err(internal("primitive torsion parts of different cycles overlap"));
        }
        primitive[v] = sum;
        per_cycle.push((p, t0, img));
    }
    Ok(Torsion {
        nilpotent,
        primitive,
        per_cycle,
    })
}
