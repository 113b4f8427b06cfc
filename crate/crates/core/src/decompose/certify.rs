//! An explicit isomorphism `θ: N → M` from the summands of a report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{extension, DecompositionReport};
use crate::algebra::Letter;
use crate::error::{domain, internal, Result};
use crate::exactla::{FieldSpec, Matrix, Scalar, Subspace, Vector};
use crate::functors::refined;
use crate::linrel::split;
use crate::repmod::{band_module, string_module, Representation};
use crate::words::Word;

#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: Representation,
    /// One matrix per vertex, `e_vN → e_vM`.
    pub theta: Vec<Matrix>,
}

enum End<'a> {
    Within(&'a Subspace),
    Fixed(&'a [Scalar]),
}

/// Solves for `m_0 … m_n` along `letters` with `m_0 = start`,
/// `(m_i, m_{i-1}) ∈ rel(C_i)` and the end condition on `m_n`, all at once.
fn solve_chain(m: &Representation, letters: &[Letter], head: usize, start: &[Scalar], end: End) -> Result<Vec<Vector>> {
    let alg = m.algebra();
    let f = m.field();
    let mut verts = vec![head];
    verts.extend(letters.iter().map(|&l| alg.letter_tail(l)));
    let mut offs = vec![0];
    for &v in &verts {
        offs.push(offs.last().unwrap() + m.dim(v));
    }
    let total = *offs.last().unwrap();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let pin = |rows: &mut Vec<Vector>, rhs: &mut Vec<Scalar>, off: usize, val: &[Scalar]| {
        for (j, x) in val.iter().enumerate() {
            let mut r = vec![f.zero(); total];
            r[off + j] = f.one();
            rows.push(r);
            rhs.push(x.clone());
        }
    };
    pin(&mut rows, &mut rhs, 0, start);
    for (i, &l) in letters.iter().enumerate() {
        let a = m.action(l.arrow);
        // Direct: m_i ↦ m_{i-1} = A m_i. Inverse: A m_{i-1} = m_{i+1}.
        let (src, dst) = if l.is_direct() { (i + 1, i) } else { (i, i + 1) };
        for r in 0..a.rows() {
            let mut row = vec![f.zero(); total];
            for c in 0..a.cols() {
                row[offs[src] + c] = a.get(r, c).clone();
            }
            row[offs[dst] + r] = &row[offs[dst] + r] - &f.one();
            rows.push(row);
            rhs.push(f.zero());
        }
    }
    let last = letters.len();
    match end {
        End::Within(z) => {
            for g in z.annihilator().basis() {
                let mut row = vec![f.zero(); total];
                row[offs[last]..offs[last + 1]].clone_from_slice(g);
                rows.push(row);
                rhs.push(f.zero());
            }
        }
        End::Fixed(val) => pin(&mut rows, &mut rhs, offs[last], val),
    }
    let x = Matrix::from_rows(f, total, &rows)
        .solve(&rhs)
        .ok_or_else(|| internal("witness chain system has no solution"))?;
    Ok((0..=last).map(|i| x[offs[i]..offs[i + 1]].to_vec()).collect())
}

/// A random invertible `X` with `a X t = X`.
fn intertwiner(f: FieldSpec, a: &Matrix, t: &Matrix, seed: u64) -> Result<Matrix> {
    let k = a.rows();
    let idx = |p: usize, q: usize| p * k + q;
    let mut sys = Matrix::zeros(f, k * k, k * k);
    for i in 0..k {
        for j in 0..k {
            for p in 0..k {
                for q in 0..k {
                    let mut c = a.get(i, p) * t.get(q, j);
                    if i == p && j == q {
                        c = &c - &f.one();
                    }
                    sys.set(idx(i, j), idx(p, q), c);
                }
            }
        }
    }
    let basis = sys.kernel_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let mut x = Matrix::zeros(f, k, k);
        for b in &basis {
            let c = f.random(&mut rng);
            for p in 0..k {
                for q in 0..k {
                    let cur = x.get(p, q) + &(&c * &b[idx(p, q)]);
                    x.set(p, q, cur);
                }
            }
        }
        if x.is_invertible() {
            return Ok(x);
        }
    }
    Err(internal("no invertible intertwiner found"))
}

/// Column placement: summand part `p` occupies `offsets[p][v]..` in `e_vN`.
struct Assembly {
    cols: Vec<Vec<Option<Vector>>>,
    next: Vec<usize>,
}

impl Assembly {
    fn put(&mut self, v: usize, idx: usize, col: Vector) {
        self.cols[v][self.next[v] + idx] = Some(col);
    }

    fn advance(&mut self, dims: &[usize]) {
        for (n, d) in self.next.iter_mut().zip(dims) {
            *n += d;
        }
    }
}

pub fn certify(m: &Representation, report: &DecompositionReport) -> Result<Certificate> {
    let alg = m.algebra();
    let f = m.field();
    if report.audit != m.dims() {
        return Err(domain(format!(
            "report accounts for dimensions {:?} but the module has {:?}",
            report.audit,
            m.dims()
        )));
    }
    let n = report.build(alg, f)?;
    let mut asm = Assembly {
        cols: n.dims().iter().map(|&d| vec![None; d]).collect(),
        next: vec![0; alg.num_vertices()],
    };

    for s in &report.strings {
        let c = &s.word;
        let v = c.head(alg);
        let d = Word::trivial(v, -c.sign(alg));
        let fv = refined(m, c, &d)?;
        if fv.dim() != s.mult {
            return Err(domain(format!("{} occurs {} times, not {}", c.format(alg), fv.dim(), s.mult)));
        }
        let sm = string_module(alg, f, c)?;
        let tail = c.tail(alg).expect("finite word");
        let z = match extension(alg, c, false) {
            Some(x) => m.letter_relation(x).apply_zero(),
            None => Subspace::full(f, m.dim(tail)),
        };
        for rep in &fv.reps {
            let chain = solve_chain(m, c.letters(), v, rep, End::Within(&z))?;
            for (i, &(vi, idx)) in sm.basis.iter().enumerate() {
                asm.put(vi, idx, chain[i].clone());
            }
            asm.advance(sm.rep.dims());
        }
    }

    let mut i = 0;
    while i < report.bands.len() {
        let e = &report.bands[i].word;
        let mut j = i;
        while j < report.bands.len() && report.bands[j].word == *e {
            j += 1;
        }
        let group = &report.bands[i..j];
        let letters = e.letters();
        let v = e.head(alg);
        let rel = m.letters_relation(letters, v);
        let core = rel.core();
        let sp = split(&rel, &core)?;
        let mut modules = Vec::new();
        let mut ts = Vec::new();
        for b in group {
            let bm = band_module(alg, e, &b.coeff)?;
            for _ in 0..b.mult {
                ts.push(bm.t.clone());
                modules.push(bm.clone());
            }
        }
        let t = Matrix::block_diag(f, &ts);
        if t.rows() != sp.u.len() {
            return Err(domain(format!("band {} has the wrong total dimension", e.format(alg))));
        }
        let x = intertwiner(f, &sp.a, &t, 0x5eed + i as u64)?;
        let ub = Matrix::from_cols(f, m.dim(v), &sp.u);
        let phi0 = ub.mul(&x);
        let phin = phi0.mul(&t);
        let mut start = 0;
        for bm in &modules {
            let dv = bm.t.rows();
            for c in 0..dv {
                let chain = solve_chain(m, letters, v, &phi0.col(start + c), End::Fixed(&phin.col(start + c)))?;
                for (k, &(vk, first)) in bm.blocks.iter().enumerate() {
                    asm.put(vk, first + c, chain[k].clone());
                }
            }
            asm.advance(bm.rep.dims());
            start += dv;
        }
        i = j;
    }

    let theta: Vec<Matrix> = asm
        .cols
        .into_iter()
        .enumerate()
        .map(|(v, cols)| {
            let cols: Option<Vec<Vector>> = cols.into_iter().collect();
            cols.map(|c| Matrix::from_cols(f, m.dim(v), &c))
                .ok_or_else(|| internal("a basis vector of N has no image"))
        })
        .collect::<Result<_>>()?;
    if !m.is_homomorphism_from(&n, &theta) {
        return Err(internal("assembled map is not a homomorphism"));
    }
    if let Some(v) = theta.iter().position(|t| !t.is_invertible()) {
        return Err(internal(format!("assembled map is not invertible at {}", alg.vertices()[v])));
    }
    Ok(Certificate { n, theta })
}
