//! Exact integer matrices: products, rank, Smith form, symplectic bases.
//!
//! All arithmetic is checked; overflow surfaces as `Error::Overflow`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("matrix arithmetic"))
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("matrix arithmetic"))
}

/// Dense row-major integer matrix. Serializes as a list of rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// The standard symplectic form: blocks `[[0, 1], [-1, 0]]` on the diagonal.
    pub fn standard_symplectic(dim: usize) -> Matrix {
        assert!(dim.is_multiple_of(2), "symplectic dimension must be even");
        let mut j = Matrix::zeros(dim, dim);
        for b in 0..dim / 2 {
            j.set(2 * b, 2 * b + 1, 1);
            j.set(2 * b + 1, 2 * b, -1);
        }
        j
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as i64))
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::Overflow("matrix arithmetic")))
            .collect::<Result<_>>()?;
        Ok(Matrix { data, ..*self })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = add(out.data[idx], mul(a, b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `self^e` for `e ≥ 0`.
    pub fn pow(&self, e: u64) -> Result<Matrix> {
        let mut out = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(out)
    }

    /// Rank over ℚ by fraction-free elimination.
    pub fn rank(&self) -> Result<usize> {
        Ok(bareiss(self)?.0)
    }

    pub fn determinant(&self) -> Result<i64> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (rank, det) = bareiss(self)?;
        if rank < self.rows {
            return Ok(0);
        }
        i64::try_from(det).map_err(|_| Error::Overflow("determinant"))
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Whether `Mᵀ J M = J`.
    pub fn preserves_form(&self, j: &Matrix) -> Result<bool> {
        Ok(self.transpose().mul(j)?.mul(self)? == *j)
    }

    /// Inverse of a matrix preserving `j`, assuming `j² = -I`.
    pub fn symplectic_inverse(&self, j: &Matrix) -> Result<Matrix> {
        j.neg().mul(&self.transpose())?.mul(j)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl From<Matrix> for Vec<Vec<i64>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

impl TryFrom<Vec<Vec<i64>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Matrix> {
        Matrix::from_rows(rows)
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| add(acc, mul(x, y)?))
}

/// Returns (rank, last nonzero pivot); the pivot is `±det` for full rank.
fn bareiss(m: &Matrix) -> Result<(usize, i128)> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i128>> = (0..rows)
        .map(|i| m.row(i).iter().map(|&x| x as i128).collect())
        .collect();
    let ovf = || Error::Overflow("fraction-free elimination");
    let mut rank = 0;
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = a[rank][c]
                    .checked_mul(a[r][cc])
                    .and_then(|x| x.checked_sub(a[r][c].checked_mul(a[rank][cc])?))
                    .ok_or_else(ovf)?;
                a[r][cc] = v / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    Ok((rank, sign * prev))
}

/// Extended gcd of a list: `(g, c)` with `Σ c_i x_i = g ≥ 0`.
pub fn ext_gcd_list(xs: &[i64]) -> Result<(i64, Vec<i64>)> {
    let mut coeffs = vec![0i64; xs.len()];
    let mut g = 0i64;
    for (i, &x) in xs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let (d, s, t) = ext_gcd(g, x);
        for c in coeffs.iter_mut().take(i) {
            *c = mul(*c, s)?;
        }
        coeffs[i] = t;
        g = d;
    }
    Ok((g, coeffs))
}

/// `(d, s, t)` with `s a + t b = d = gcd(a, b) ≥ 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Row-echelon basis of the lattice spanned by `vectors` (zero rows dropped).
pub fn lattice_basis(vectors: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let mut rows: Vec<Vec<i64>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for c in 0..cols {
        loop {
            // Smallest nonzero entry in column c becomes the pivot.
            let Some(p) = (0..rows.len())
                .filter(|&r| rows[r][c] != 0)
                .min_by_key(|&r| rows[r][c].abs())
            else {
                break;
            };
            let pivot = rows[p].clone();
            let mut done = true;
            for (r, row) in rows.iter_mut().enumerate() {
                if r == p || row[c] == 0 {
                    continue;
                }
                let q = row[c] / pivot[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = x.checked_sub(mul(q, y)?).ok_or(Error::Overflow("lattice basis"))?;
                }
                if row[c] != 0 {
                    done = false;
                }
            }
            if done {
                out.push(rows.swap_remove(p));
                break;
            }
        }
        rows.retain(|v| v.iter().any(|&x| x != 0));
    }
    Ok(out)
}

/// Diagonalization `U A V = D` with the left transform and its inverse.
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub u: Matrix,
    pub u_inv: Matrix,
}

pub fn smith_form(a: &Matrix) -> Result<SmithForm> {
    let (rows, cols) = (a.rows, a.cols);
    let mut a = a.clone();
    let mut u = Matrix::identity(rows);
    let mut u_inv = Matrix::identity(rows);
    let mut diagonal = Vec::new();

    // Row ops are mirrored on `u` (same op) and `u_inv` (inverse column op).
    let row_axpy = |a: &mut Matrix, u: &mut Matrix, u_inv: &mut Matrix, dst: usize, src: usize, q: i64| -> Result<()> {
        for m in [&mut *a, &mut *u] {
            for j in 0..m.cols {
                let v = m
                    .get(dst, j)
                    .checked_sub(mul(q, m.get(src, j))?)
                    .ok_or(Error::Overflow("smith form"))?;
                m.set(dst, j, v);
            }
        }
        for i in 0..u_inv.rows {
            let v = add(u_inv.get(i, src), mul(q, u_inv.get(i, dst))?)?;
            u_inv.set(i, src, v);
        }
        Ok(())
    };
    let swap_rows = |m: &mut Matrix, x: usize, y: usize| {
        for j in 0..m.cols {
            let t = m.get(x, j);
            m.set(x, j, m.get(y, j));
            m.set(y, j, t);
        }
    };
    let swap_cols = |m: &mut Matrix, x: usize, y: usize| {
        for i in 0..m.rows {
            let t = m.get(i, x);
            m.set(i, x, m.get(i, y));
            m.set(i, y, t);
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Ok(SmithForm { diagonal, u, u_inv });
            };
            if pi != t {
                swap_rows(&mut a, pi, t);
                swap_rows(&mut u, pi, t);
                swap_cols(&mut u_inv, pi, t);
            }
            if pj != t {
                swap_cols(&mut a, pj, t);
            }
            let p = a.get(t, t);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t) / p;
                if q != 0 {
                    row_axpy(&mut a, &mut u, &mut u_inv, i, t, q)?;
                }
                clean &= a.get(i, t) == 0;
            }
            for j in t + 1..cols {
                let q = a.get(t, j) / p;
                if q != 0 {
                    for i in 0..rows {
                        let v = a
                            .get(i, j)
                            .checked_sub(mul(q, a.get(i, t))?)
                            .ok_or(Error::Overflow("smith form"))?;
                        a.set(i, j, v);
                    }
                }
                clean &= a.get(t, j) == 0;
            }
            if clean {
                diagonal.push(a.get(t, t));
                break;
            }
        }
    }
    Ok(SmithForm { diagonal, u, u_inv })
}

/// Finds `S` whose columns form a symplectic basis for the unimodular skew
/// form `j`: `Sᵀ j S` is the standard block form.
pub fn symplectic_basis(j: &Matrix) -> Result<Matrix> {
    let dim = j.rows;
    let pair = |x: &[i64], y: &[i64]| -> Result<i64> { dot(x, &j.mul_vec(y)?) };
    let mut lattice: Vec<Vec<i64>> = (0..dim).map(|i| Matrix::identity(dim).column(i)).collect();
    let mut columns = Vec::with_capacity(dim);
    while !lattice.is_empty() {
        let e = lattice[0].clone();
        let pairings = lattice.iter().map(|v| pair(&e, v)).collect::<Result<Vec<_>>>()?;
        let (g, coeffs) = ext_gcd_list(&pairings)?;
        if g != 1 {
            return Err(Error::Invalid("intersection form is not unimodular".into()));
        }
        let mut f = vec![0i64; dim];
        for (c, v) in coeffs.iter().zip(&lattice) {
            for (fi, &vi) in f.iter_mut().zip(v) {
                *fi = add(*fi, mul(*c, vi)?)?;
            }
        }
        let mut projected = Vec::with_capacity(lattice.len());
        for x in &lattice {
            // x - <x,f> e + <x,e> f is orthogonal to both e and f.
            let (xf, xe) = (pair(x, &f)?, pair(x, &e)?);
            let v = (0..dim)
                .map(|i| {
                    add(
                        x[i].checked_sub(mul(xf, e[i])?)
                            .ok_or(Error::Overflow("symplectic basis"))?,
                        mul(xe, f[i])?,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            projected.push(v);
        }
        columns.push(e);
        columns.push(f);
        lattice = lattice_basis(&projected)?;
    }
    Ok(Matrix::from_columns(dim, &columns))
}
