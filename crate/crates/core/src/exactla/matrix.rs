//! Dense matrices over a [`FieldSpec`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

/// Row-major dense matrix. Every entry belongs to `field`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: FieldSpec, rows: usize, cols: &[Vector]) -> Self {
        Self::from_rows(field, rows, cols).transpose()
    }

    /// Parses a small integer table; handy in tests.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&a| field.from_i64(a)).collect())
            .collect();
        Self::from_rows(field, cols, &v)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| dot(self.field, self.row(i), v))
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    /// `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(field: FieldSpec, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Reduced row-echelon form and pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vectors();
        let pivots = rref_rows(&mut rows, self.cols);
        (Self::from_rows(self.field, self.cols, &rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(k);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, free);
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let bcol = Matrix::from_cols(self.field, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&bcol);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Self::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Entries as canonical literals, row-major.
    pub fn to_literals(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::literal).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::literal).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub fn zero_vector(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| s * x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `acc += s * v`.
pub(crate) fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(s * b);
        }
    }
}

/// Gauss-Jordan elimination in place. Leaves exactly the nonzero rows of the
/// reduced echelon form and returns the pivot columns.
pub(crate) fn rref_rows(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    if matches!(rows.first(), Some(r) if r.first().is_some_and(|x| x.field() == FieldSpec::Rationals)) {
        return rref_rows_q(rows, cols);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = -&row[c];
            axpy(row, &f, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Clears denominators and divides out the content.
fn primitive_row(row: &[Scalar]) -> Vec<BigInt> {
    let q = |x: &Scalar| match x {
        Scalar::Q(q) => q.clone(),
        Scalar::Fp { .. } => unreachable!("rational row"),
    };
    let den = row.iter().fold(BigInt::one(), |l, x| l.lcm(q(x).denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| q(x).numer() * (&den / q(x).denom())).collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    // Start from the smallest entry so every later gcd is a single reduction
    // followed by small-number work.
    let Some(min) = row.iter().filter(|x| !x.is_zero()).min_by_key(|x| x.bits()) else {
        return;
    };
    let mut g = min.abs();
    for x in row.iter() {
        if g.is_one() {
            return;
        }
        if x.is_zero() {
            continue;
        }
        let rem = x % &g;
        if rem.is_zero() {
            continue;
        }
        g = match (g.to_u64(), rem.abs().to_u64()) {
            (Some(a), Some(b)) => BigInt::from(a.gcd(&b)),
            _ => g.gcd(&rem),
        };
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const LIMIT: i128 = 1 << 62;

/// `entries` times the least common denominator, if everything stays
/// below [`LIMIT`].
fn scaled_integers<'a>(entries: impl Iterator<Item = &'a Scalar> + Clone) -> Option<Vec<i128>> {
    let mut den: i128 = 1;
    for x in entries.clone() {
        let Scalar::Q(q) = x else { return None };
        let d = q.denom().to_i128()?;
        den = (den / gcd_i128(den, d)).checked_mul(d)?;
        if den > LIMIT {
            return None;
        }
    }
    entries
        .map(|x| {
            let Scalar::Q(q) = x else { return None };
            let v = q.numer().to_i128()?.checked_mul(den / q.denom().to_i128()?)?;
            (v.abs() <= LIMIT).then_some(v)
        })
        .collect()
}

fn integer_vector(v: Vec<i128>) -> Vector {
    v.into_iter().map(|x| Scalar::Q(BigRational::from_integer(BigInt::from(x)))).collect()
}

/// Rational products in machine integers: each output row is `lhs_i · rhs`
/// up to a nonzero scalar, which is all a span needs. `None` when the
/// field is not `Q` or an entry overflows.
pub(crate) fn scaled_products(lhs: &[Vector], rhs: &Matrix) -> Option<Vec<Vector>> {
    if rhs.field != FieldSpec::Rationals {
        return None;
    }
    small_products(lhs, rhs).or_else(|| Some(big_products(lhs, rhs)))
}

fn big_products(lhs: &[Vector], rhs: &Matrix) -> Vec<Vector> {
    let m = rhs.cols;
    let b = primitive_row(&rhs.data);
    lhs.iter()
        .map(|row| {
            let a = primitive_row(row);
            let mut out = vec![BigInt::zero(); m];
            for (k, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k * m..(k + 1) * m]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            remove_content(&mut out);
            out.into_iter().map(|x| Scalar::Q(BigRational::from_integer(x))).collect()
        })
        .collect()
}

fn small_products(lhs: &[Vector], rhs: &Matrix) -> Option<Vec<Vector>> {
    let b = scaled_integers(rhs.data.iter())?;
    let (n, m) = (rhs.rows, rhs.cols);
    lhs.iter()
        .map(|row| {
            let a = scaled_integers(row.iter())?;
            let mut out = vec![0i128; m];
            for (k, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k * m..(k + 1) * m]) {
                    *o = o.checked_add(x.checked_mul(y)?)?;
                }
            }
            debug_assert_eq!(a.len(), n);
            Some(integer_vector(out))
        })
        .collect()
}

/// The same elimination in machine integers; `None` on overflow.
fn rref_rows_small(rows: &[Vector], cols: usize) -> Option<(Vec<Vector>, Vec<usize>)> {
    let mut m: Vec<Vec<i128>> = Vec::with_capacity(rows.len());
    for row in rows {
        let out = scaled_integers(row.iter())?;
        debug_assert_eq!(out.len(), cols);
        m.push(out);
    }
    let content = |row: &mut [i128]| {
        let g = row.iter().fold(0, |g, &x| if g == 1 { 1 } else { gcd_i128(g, x) });
        if g > 1 {
            row.iter_mut().for_each(|x| *x /= g);
        }
    };
    m.iter_mut().for_each(|r| content(r));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).filter(|&i| m[i][c] != 0).min_by_key(|&i| m[i][c].abs()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        let pv = pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let g = gcd_i128(row[c], pv);
            let (a, b) = (row[c] / g, pv / g);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = x.checked_mul(b)?.checked_sub(y.checked_mul(a)?)?;
                if x.abs() > LIMIT {
                    return None;
                }
            }
            content(row);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let out = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let d = row[c];
            row.into_iter()
                .map(|x| {
                    let g = gcd_i128(x, d).max(1);
                    let (mut n, mut e) = (x / g, d / g);
                    if e < 0 {
                        (n, e) = (-n, -e);
                    }
                    Scalar::Q(BigRational::new_raw(BigInt::from(n), BigInt::from(e)))
                })
                .collect()
        })
        .collect();
    Some((out, pivots))
}

/// Fraction-free Gauss-Jordan over `Z`; rationals only appear when the
/// pivot rows are normalized at the end.
fn rref_rows_q(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    if let Some((out, pivots)) = rref_rows_small(rows, cols) {
        *rows = out;
        return pivots;
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].bits()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        let pv = &pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(pv);
            let (a, b) = (&row[c] / &g, pv / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &b - y * &a;
            }
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    *rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let d = row[c].clone();
            row.into_iter().map(|x| Scalar::Q(BigRational::new(x, d.clone()))).collect()
        })
        .collect();
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(q(), 2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let z = Matrix::zeros(q(), 2, 3);
        let (r, p) = z.rref();
        assert_eq!(r.rows(), 0);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::from_i64(q(), &[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        let b = vec![q().from_i64(3), q().from_i64(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let sing = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[q().from_i64(1), q().from_i64(0)]).is_none());
    }

    #[test]
    fn rref_with_huge_denominators() {
        let big = |e: u32, n: i64| Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(3).pow(e)));
        let seventh = Scalar::Q(BigRational::new(BigInt::from(1), BigInt::from(7)));
        // 7 * 3^80 overflows i128 while each denominator alone fits.
        let rows = vec![vec![seventh, big(80, 1)], vec![big(79, 1), big(70, 5)], vec![big(1, 1), big(1, 1)]];
        let m = Matrix::from_rows(q(), 2, &rows);
        assert_eq!(m.rref().1, vec![0, 1]);
        let k = Matrix::from_rows(q(), 2, &rows[..1]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(Matrix::from_rows(q(), 2, &rows[..1]).mul_vec(&k[0]), vec![q().from_i64(0)]);
    }

    #[test]
    fn kernel_over_f5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_i64(f5, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![f5.from_i64(4), f5.from_i64(1)]]);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f5 = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_i64(f5, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        assert_eq!(m.pow(0), Matrix::identity(f5, 2));
    }
}
