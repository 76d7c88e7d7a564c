// SPDX-License-Identifier: Apache-2.0
//! Dense exact linear algebra: row reduction, kernels, solving, subspaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vec(f: Field, n: usize) -> Vector {
    vec![f.zero(); n]
}

pub fn unit_vec(f: Field, n: usize, k: usize) -> Vector {
    let mut v = zero_vec(f, n);
    v[k] = f.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vadd(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vsub(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vscale(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// x += c·y
pub fn axpy(x: &mut [Scalar], c: &Scalar, y: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in x.iter_mut().zip(y) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for k in 0..n {
            m.set(k, k, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    pub fn from_cols(field: Field, rows: usize, cols: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: o.rows });
        }
        let mut m = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + &(a * b);
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = zero_vec(self.field, self.rows);
        for j in 0..self.cols {
            if v[j].is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(a * &v[j]);
                }
            }
        }
        Ok(out)
    }

    /// self − c·I
    pub fn shift(&self, c: &Scalar) -> Matrix {
        let mut m = self.clone();
        for k in 0..self.rows.min(self.cols) {
            let v = m.get(k, k) - c;
            m.set(k, k, v);
        }
        m
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, k| &acc + self.get(k, k))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j { x.is_one() } else { x.is_zero() }
            }))
    }

    pub fn rank(&self) -> usize {
        rref(self).2
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, piv, _) = rref(&aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form with first-nonzero pivoting: (reduced, pivots, rank).
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>, usize) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("pivot is nonzero");
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        let pivot_row: Vector = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..a.cols {
                if !pivot_row[j].is_zero() {
                    let v = a.get(i, j) - &(&factor * &pivot_row[j]);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    (a, pivots, rank)
}

/// Null space of `m` in canonical form.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots, _) = rref(m);
    let f = m.field;
    let n = m.cols;
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = unit_vec(f, n, free);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, free);
        }
        basis.push(v);
    }
    Subspace::span(f, n, basis)
}

/// A solution of m·x = rhs with free variables set to zero, or None if inconsistent.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Option<Vector>> {
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, got: rhs.len() });
    }
    let mut aug = Matrix::zeros(m.field, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, rhs[i].clone());
    }
    let (r, pivots, _) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zero_vec(m.field, m.cols);
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, m.cols).clone();
    }
    Ok(Some(x))
}

/// A subspace stored by its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, (0..ambient).map(|k| unit_vec(field, ambient, k)).collect())
    }

    pub fn span(field: Field, ambient: usize, vectors: Vec<Vector>) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors).expect("vectors match the ambient dimension");
        let (r, pivots, rank) = rref(&m);
        let basis = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace { field, ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: n });
        }
        Ok(())
    }

    /// v minus its component along the pivot coordinates; zero iff v lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                axpy(&mut r, &(-c), b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check(v.len())?;
        Ok(is_zero_vec(&self.reduce(v)))
    }

    /// Coordinates of v in the canonical basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if v.len() != self.ambient || !is_zero_vec(&self.reduce(v)) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, o: &Subspace) -> Result<bool> {
        self.check(o.ambient)?;
        Ok(o.basis.iter().all(|b| is_zero_vec(&self.reduce(b))))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o.ambient)?;
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.field, self.ambient, v))
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o.ambient)?;
        if self.dim() == 0 || o.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // Columns u_1..u_r, v_1..v_s; a kernel vector (c, d) gives Σ c_k u_k ∈ U ∩ V.
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().cloned());
        let m = Matrix::from_cols(self.field, self.ambient, &cols)?;
        let k = kernel(&m);
        let vecs = k
            .basis
            .iter()
            .map(|c| {
                let mut x = zero_vec(self.field, self.ambient);
                for (ck, u) in c.iter().zip(&self.basis) {
                    axpy(&mut x, ck, u);
                }
                x
            })
            .collect();
        Ok(Subspace::span(self.field, self.ambient, vecs))
    }

    pub fn with(&self, v: Vector) -> Subspace {
        let mut b = self.basis.clone();
        b.push(v);
        Subspace::span(self.field, self.ambient, b)
    }
}

/// Sum of several subspaces; the dimension check of a direct sum is left to the caller.
pub fn sum_all(field: Field, ambient: usize, spaces: &[&Subspace]) -> Subspace {
    let v = spaces.iter().flat_map(|s| s.basis.iter().cloned()).collect();
    Subspace::span(field, ambient, v)
}
