//! Univariate polynomials in `T` over a [`FieldSpec`], characteristic
//! polynomials, and factorization into monic irreducibles.

mod factor;

pub use factor::{factor, factor_cap, square_free, DEFAULT_FACTOR_CAP, FACTOR_CAP_ENV};

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, Scalar};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// `T`.
    pub fn var(field: FieldSpec) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// `T - a`.
    pub fn linear(a: &Scalar) -> Self {
        let f = a.field();
        Self::new(f, vec![-a, f.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with `0` for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn monic(&self) -> Poly {
        match self.lead().inv() {
            Some(l) => self.scale(&l),
            None => self.clone(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` and `g` the monic gcd.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().inv() {
            Some(l) => (r0.scale(&l), s0.scale(&l), t0.scale(&l)),
            None => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| &self.field.from_i64(i as i64) * c)
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `g(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }

    /// Companion matrix of a monic polynomial of degree `d ≥ 1`: ones on the
    /// subdiagonal and `-c_0 … -c_{d-1}` in the last column.
    pub fn companion(&self) -> Matrix {
        assert!(self.is_monic() && self.deg() >= 1, "companion needs a monic nonconstant polynomial");
        let d = self.deg();
        let f = self.field;
        Matrix::from_fn(f, d, d, |i, j| {
            if j == d - 1 {
                -&self.coeffs[i]
            } else if i == j + 1 {
                f.one()
            } else {
                f.zero()
            }
        })
    }

    /// Monic associate of `T^d g(1/T)`; the polynomial of `T⁻¹` when `g` is
    /// that of `T`. Requires `g(0) ≠ 0`.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(self.field, c).monic()
    }

    /// Deterministic total order: degree, then coefficients from the top.
    pub fn canonical_cmp(&self, o: &Poly) -> Ordering {
        self.coeffs.len().cmp(&o.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(o.coeffs.iter().rev()) {
                let o = a.sort_key().cmp(&b.sort_key());
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Parses sums of terms `c`, `c*T`, `cT`, `T^k`, `c*T^k` with `+`/`-`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Poly> {
        let bad = || Error::Malformed(format!("bad polynomial literal {s:?}"));
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(bool, String)> = vec![];
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in src.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' && i == 0 {
                neg = true;
            } else if ch == '+' && i == 0 {
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        let mut p = Poly::zero(field);
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(bad());
            }
            let (coef, exp) = match t.find(['T', 'x']) {
                None => (t.as_str(), 0usize),
                Some(k) => {
                    let c = t[..k].trim_end_matches('*');
                    let rest = &t[k + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (if c.is_empty() { "1" } else { c }, e)
                }
            };
            let mut c = field.parse(coef).map_err(|_| bad())?;
            if neg {
                c = -&c;
            }
            let mut v = vec![field.zero(); exp + 1];
            v[exp] = c;
            p = p.add(&Poly::new(field, v));
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lit = c.literal();
            let (neg, mag) = match lit.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, lit),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            match (mag.as_str(), i) {
                (m, 0) => write!(f, "{m}")?,
                ("1", _) => write!(f, "{mono}")?,
                (m, _) => write!(f, "{m}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(T·I - A)` via reduction to upper
/// Hessenberg form.
pub fn char_poly(a: &Matrix) -> Poly {
    assert!(a.is_square());
    let f = a.field();
    let n = a.rows();
    let mut h: Vec<Vec<Scalar>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = h[m][m - 1].inv().unwrap();
        for i in m + 1..n {
            let u = &h[i][m - 1] * &inv;
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &u * &h[m][j];
                h[i][j] = &h[i][j] - &t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[m] = &row[m] + &t;
            }
        }
    }
    // p_k is the characteristic polynomial of the leading k×k block.
    let mut p = vec![Poly::one(f)];
    for k in 1..=n {
        let mut next = Poly::linear(&h[k - 1][k - 1]).mul(&p[k - 1]);
        let mut prod = f.one();
        for i in (1..k).rev() {
            prod = &prod * &h[i][i - 1];
            let c = &prod * &h[i - 1][k - 1];
            next = next.sub(&p[i - 1].scale(&c));
        }
        p.push(next);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::Prime(5)
    }

    #[test]
    fn arithmetic() {
        let q = FieldSpec::Rationals;
        let a = Poly::from_i64(q, &[-1, 0, 1]);
        let b = Poly::from_i64(q, &[-1, 1]);
        let (d, r) = a.divrem(&b);
        assert_eq!(d, Poly::from_i64(q, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Poly::from_i64(q, &[1, 1])), Poly::from_i64(q, &[1, 1]));
        let (g, s, t) = a.ext_gcd(&Poly::from_i64(q, &[2, 1]));
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&Poly::from_i64(q, &[2, 1]))), g);
    }

    #[test]
    fn literals() {
        let p = Poly::from_i64(f5(), &[1, 0, 1]);
        assert_eq!(p.to_string(), "T^2 + 1");
        assert_eq!(Poly::parse(f5(), "T^2+1").unwrap(), p);
        let q = FieldSpec::Rationals;
        let r = Poly::parse(q, "T^2 - 1/2*T + 3").unwrap();
        assert_eq!(r.to_string(), "T^2 - 1/2*T + 3");
        assert_eq!(Poly::parse(q, "-T").unwrap(), Poly::from_i64(q, &[0, -1]));
        assert_eq!(Poly::parse(q, "T - 2").unwrap(), Poly::from_i64(q, &[-2, 1]));
        assert!(Poly::parse(q, "T^").is_err());
    }

    #[test]
    fn companion_has_its_char_poly() {
        for c in [vec![2, 3, 1], vec![1, 0, 0, 1], vec![4, 1]] {
            let g = Poly::from_i64(f5(), &c);
            assert_eq!(char_poly(&g.companion()), g);
            assert!(g.eval_matrix(&g.companion()).is_zero());
        }
    }

    #[test]
    fn char_poly_against_cofactor_expansion() {
        let q = FieldSpec::Rationals;
        let a = Matrix::from_i64(q, &[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        // det(TI - A) = T^3 - 6T - 7: trace 0, principal minors -3, -2, -1, det 7.
        assert_eq!(char_poly(&a), Poly::from_i64(q, &[-7, -6, 0, 1]));
        let z = Matrix::from_i64(q, &[&[0, 0], &[0, 0]]);
        assert_eq!(char_poly(&z), Poly::from_i64(q, &[0, 0, 1]));
    }

    #[test]
    fn reciprocal_is_polynomial_of_inverse() {
        let g = Poly::from_i64(f5(), &[2, 1, 1]);
        let t = g.companion();
        assert_eq!(char_poly(&t.inverse().unwrap()), g.reciprocal());
    }
}
