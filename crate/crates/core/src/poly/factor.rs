//! Factorization into monic irreducibles.
//!
//! Over `F_p`: square-free decomposition, distinct-degree splitting, then
//! Cantor–Zassenhaus with a fixed-seed generator so results are reproducible.
//! Over `Q`: square-free decomposition, a scaling to a monic integer
//! polynomial, factorization modulo a small prime, Hensel lifting, and
//! recombination of the lifted factors. Linear factors are split off first;
//! the remaining degree is bounded by the factorization cap.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Scalar};

pub const DEFAULT_FACTOR_CAP: usize = 12;
pub const FACTOR_CAP_ENV: &str = "STRINGMOD_FACTOR_CAP";

/// The cap from the environment, or [`DEFAULT_FACTOR_CAP`].
pub fn factor_cap() -> usize {
    std::env::var(FACTOR_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_FACTOR_CAP)
}

/// Monic irreducible factors with multiplicities, sorted by
/// [`Poly::canonical_cmp`]. `cap` bounds the degree left for
/// recombination over `Q` after linear factors are removed.
pub fn factor(f: &Poly, cap: usize) -> Result<Vec<(Poly, usize)>> {
    assert!(!f.is_zero(), "factor of zero");
    let mut out = vec![];
    for (s, m) in square_free(&f.monic()) {
        let parts = match f.field() {
            FieldSpec::Prime(_) => factor_sqfree_fp(&s),
            FieldSpec::Rationals => factor_sqfree_q(&s, cap)?,
        };
        out.extend(parts.into_iter().map(|g| (g, m)));
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// `f = Π s_i^{m_i}` with each `s_i` square-free, monic and the `s_i`
/// pairwise coprime.
pub fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = vec![];
    if f.deg() == 0 {
        return out;
    }
    let p = f.field().characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        // Only in characteristic p: f(T) = g(T^p) = g(T)^p.
        for (g, m) in square_free(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if c.deg() > 0 {
        for (g, m) in square_free(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn pth_root(f: &Poly) -> Poly {
    let p = f.field().characteristic() as usize;
    assert!(p > 0);
    Poly::new(f.field(), f.coeffs().iter().step_by(p).cloned().collect())
}

fn pow_mod(b: &Poly, e: &BigUint, m: &Poly) -> Poly {
    let mut acc = Poly::one(b.field());
    let base = b.rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(m);
        if e.bit(i) {
            acc = acc.mul(&base).rem(m);
        }
    }
    acc
}

fn factor_sqfree_fp(f: &Poly) -> Vec<Poly> {
    let field = f.field();
    let p = BigUint::from(field.characteristic());
    let x = Poly::var(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = pow_mod(&h, &p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            equal_degree(&g, d, &mut rng, &mut out);
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        out.push(rest.monic());
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.deg();
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.field();
    let p = field.characteristic();
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + … + a^(2^(d-1)).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            pow_mod(&a, &e, f).sub(&Poly::one(field))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_exact(&g).unwrap(), d, rng, out);
            return;
        }
    }
}

type IPoly = Vec<BigInt>;

fn ip_trim(mut a: IPoly) -> IPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn ip_mul(a: &[BigInt], b: &[BigInt]) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ip_trim(out)
}

/// Coefficients reduced into `(-m/2, m/2]`.
fn ip_sym(a: &[BigInt], m: &BigInt) -> IPoly {
    let half = m / 2;
    ip_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &[BigInt], field: FieldSpec) -> Poly {
    Poly::new(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

fn from_fp(a: &Poly) -> IPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Fp { v, .. } => BigInt::from(*v),
            Scalar::Q(_) => unreachable!(),
        })
        .collect()
}

fn to_q(a: &[BigInt]) -> Poly {
    Poly::new(
        FieldSpec::Rationals,
        a.iter().map(|c| Scalar::Q(BigRational::from_integer(c.clone()))).collect(),
    )
}

/// Lifts `f ≡ g·h (mod p)`, with `g`, `h` monic and coprime mod `p`, to a
/// factorization modulo `p^k`.
fn hensel_pair(f: &[BigInt], g: &Poly, h: &Poly, k: u32) -> (IPoly, IPoly) {
    let field = g.field();
    let p = BigInt::from(field.characteristic());
    let (one, _, t) = g.ext_gcd(h);
    debug_assert!(one.is_one());
    let (mut gi, mut hi) = (from_fp(g), from_fp(h));
    let mut pj = p.clone();
    for _ in 1..k {
        let prod = ip_mul(&gi, &hi);
        let n = f.len().max(prod.len());
        let diff: IPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b) / &pj
            })
            .collect();
        let e = to_fp(&diff, field);
        let dg = t.mul(&e).rem(g);
        let dh = e.sub(&dg.mul(h)).div_exact(g).expect("hensel division");
        for (i, c) in from_fp(&dg).into_iter().enumerate() {
            gi[i] += c * &pj;
        }
        for (i, c) in from_fp(&dh).into_iter().enumerate() {
            if i >= hi.len() {
                hi.resize(i + 1, BigInt::zero());
            }
            hi[i] += c * &pj;
        }
        pj *= &p;
    }
    (gi, hi)
}

/// Lifts the monic factorization `f ≡ Π fs (mod p)` to `mod p^k`.
fn hensel_lift(f: &[BigInt], fs: &[Poly], k: u32) -> Vec<IPoly> {
    let field = fs[0].field();
    let pk = BigInt::from(field.characteristic()).pow(k);
    let mut out = vec![];
    let mut rest = f.to_vec();
    for (i, g) in fs.iter().enumerate() {
        if i + 1 == fs.len() {
            out.push(ip_sym(&rest, &pk));
            break;
        }
        let h = fs[i + 1..].iter().fold(Poly::one(field), |a, b| a.mul(b));
        let (gl, hl) = hensel_pair(&rest, g, &h, k);
        out.push(ip_sym(&gl, &pk));
        rest = ip_sym(&hl, &pk);
    }
    out
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Factors a square-free monic rational polynomial.
fn factor_sqfree_q(f: &Poly, cap: usize) -> Result<Vec<Poly>> {
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    // f̃(T) = d^n f(T/d) is monic with integer coefficients.
    let d = f.coeffs().iter().fold(BigInt::one(), |acc, c| match c {
        Scalar::Q(q) => acc.lcm(q.denom()),
        Scalar::Fp { .. } => unreachable!(),
    });
    let ft: IPoly = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Scalar::Q(q) => (q * BigRational::from_integer(d.pow((n - i) as u32))).to_integer(),
            Scalar::Fp { .. } => unreachable!(),
        })
        .collect();
    let unscale = |g: &IPoly| -> Poly {
        let m = g.len() - 1;
        Poly::new(
            FieldSpec::Rationals,
            g.iter()
                .enumerate()
                .map(|(i, c)| Scalar::Q(BigRational::new(c.clone(), d.pow((m - i) as u32))))
                .collect(),
        )
    };

    let p = (3u64..)
        .filter(|&p| is_small_prime(p))
        .find(|&p| {
            let fp = to_fp(&ft, FieldSpec::Prime(p));
            fp.gcd(&fp.derivative()).is_one()
        })
        .unwrap();
    let field = FieldSpec::Prime(p);
    let modular = factor_sqfree_fp(&to_fp(&ft, field));
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // Landau–Mignotte: every factor's coefficients are at most 2^n·‖f̃‖₂.
    let norm2: BigInt = ft.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pb.pow(k) <= &bound * 2 {
        k += 1;
    }
    let pk = pb.pow(k);
    let mut lifted = hensel_lift(&ft, &modular, k);

    let mut found: Vec<IPoly> = vec![];
    let mut rest = to_q(&ft);
    let try_divide = |rest: &Poly, g: &IPoly| -> Option<Poly> {
        let q = rest.div_exact(&to_q(g))?;
        q.coeffs()
            .iter()
            .all(|c| matches!(c, Scalar::Q(r) if r.is_integer()))
            .then_some(q)
    };
    // Linear factors first.
    lifted.retain(|g| {
        if g.len() == 2 {
            if let Some(q) = try_divide(&rest, g) {
                rest = q;
                found.push(g.clone());
                return false;
            }
        }
        true
    });
    if rest.deg() > cap {
        return Err(Error::FactorCap {
            degree: rest.deg(),
            cap,
        });
    }
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), s) {
            let prod = subset.iter().fold(vec![BigInt::one()], |a, &i| ip_mul(&a, &lifted[i]));
            let g = ip_sym(&prod, &pk);
            if let Some(q) = try_divide(&rest, &g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.deg() > 0 {
        let r: IPoly = rest
            .coeffs()
            .iter()
            .map(|c| match c {
                Scalar::Q(q) => q.to_integer(),
                Scalar::Fp { .. } => unreachable!(),
            })
            .collect();
        found.push(r);
    }
    Ok(found.iter().map(unscale).map(|g| g.monic()).collect())
}

/// All `s`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..s).collect();
    if s > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..s).rev().find(|&i| cur[i] < n - s + i) else { return out };
        cur[i] += 1;
        for j in i + 1..s {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_poly(field: FieldSpec, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        let mut c: Vec<Scalar> = (0..deg).map(|_| field.random(rng)).collect();
        c.push(field.one());
        Poly::new(field, c)
    }

    fn product(fs: &[(Poly, usize)], field: FieldSpec) -> Poly {
        fs.iter().fold(Poly::one(field), |a, (g, m)| a.mul(&g.pow(*m)))
    }

    /// Irreducibility by exhaustive trial division over a small prime field.
    fn irreducible_brute(g: &Poly) -> bool {
        let field = g.field();
        let p = field.characteristic();
        let n = g.deg();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut c = vec![];
                let mut x = code;
                for _ in 0..d {
                    c.push(field.from_i64((x % p) as i64));
                    x /= p;
                }
                c.push(field.one());
                if g.rem(&Poly::new(field, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn t2_plus_1_over_f5() {
        let f5 = FieldSpec::Prime(5);
        let fs = factor(&Poly::from_i64(f5, &[1, 0, 1]), 12).unwrap();
        assert_eq!(fs, vec![(Poly::from_i64(f5, &[2, 1]), 1), (Poly::from_i64(f5, &[3, 1]), 1)]);
    }

    #[test]
    fn characteristic_two_and_pth_powers() {
        let f2 = FieldSpec::Prime(2);
        // (T^2+T+1)^2 (T+1)^3 over F2
        let g = Poly::from_i64(f2, &[1, 1, 1]);
        let h = Poly::from_i64(f2, &[1, 1]);
        let f = g.pow(2).mul(&h.pow(3));
        let fs = factor(&f, 12).unwrap();
        assert_eq!(fs, vec![(h, 3), (g, 2)]);
    }

    #[test]
    fn rationals_with_hensel() {
        let q = FieldSpec::Rationals;
        // (T^2 - 2)(T^2 + T + 1)(T - 1/2)^2 (T^3 - T - 1)
        let parts = [
            (Poly::from_i64(q, &[-2, 0, 1]), 1),
            (Poly::from_i64(q, &[1, 1, 1]), 1),
            (Poly::parse(q, "T - 1/2").unwrap(), 2),
            (Poly::from_i64(q, &[-1, -1, 0, 1]), 1),
        ];
        let f = product(&parts, q);
        let fs = factor(&f, 12).unwrap();
        assert_eq!(product(&fs, q), f);
        assert_eq!(fs.len(), 4);
        for (g, m) in &fs {
            assert!(parts.iter().any(|(h, k)| h == g && k == m), "{g}");
        }
    }

    #[test]
    fn swinnerton_dyer_like_stays_irreducible() {
        // T^4 - 10T^2 + 1 splits modulo every prime but is irreducible over Q.
        let q = FieldSpec::Rationals;
        let f = Poly::from_i64(q, &[1, 0, -10, 0, 1]);
        assert_eq!(factor(&f, 12).unwrap(), vec![(f, 1)]);
    }

    #[test]
    fn cap_applies_after_linear_factors() {
        let q = FieldSpec::Rationals;
        let lin = (1..=5).fold(Poly::one(q), |a, r| a.mul(&Poly::from_i64(q, &[-r, 1])));
        let quad = Poly::from_i64(q, &[1, 0, 1]).mul(&Poly::from_i64(q, &[2, 0, 1]));
        let f = lin.mul(&quad);
        assert!(factor(&f, 4).is_ok());
        assert_eq!(factor(&f, 3), Err(Error::FactorCap { degree: 4, cap: 3 }));
    }

    proptest! {
        #[test]
        fn fp_factors_are_irreducible_and_multiply_back(seed in 0u64..1000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let field = FieldSpec::Prime(p);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_poly(field, 1 + (seed % 7) as usize, &mut rng)
                .mul(&random_poly(field, (seed % 3) as usize, &mut rng));
            let fs = factor(&f, 12).unwrap();
            prop_assert_eq!(product(&fs, field), f.monic());
            for (g, _) in &fs {
                prop_assert!(g.is_monic() && irreducible_brute(g));
            }
        }

        #[test]
        fn q_products_refactor(a in -3i64..4, b in -3i64..4, c in 1i64..4, r in 1usize..3) {
            let q = FieldSpec::Rationals;
            let f = Poly::from_i64(q, &[a, b, 1]).mul(&Poly::from_i64(q, &[c, 0, 0, 1]).pow(r));
            let fs = factor(&f, 12).unwrap();
            prop_assert_eq!(product(&fs, q), f.clone());
            // Irreducibility: each factor stays irreducible modulo the
            // product check of any two-way split by rational roots.
            for (g, _) in &fs {
                if g.deg() <= 3 {
                    let has_root = (-12i64..=12).any(|n| (1..=4).any(|d| g.eval(&q.from_ratio(n, d).unwrap()).is_zero()));
                    prop_assert!(g.deg() == 1 || !has_root);
                }
            }
        }
    }

    #[test]
    fn combinations_enumerate_all() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
