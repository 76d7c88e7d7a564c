// SPDX-License-Identifier: Apache-2.0
//! Commutative algebras given by structure constants.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, is_zero_vec, rref, unit_vec, zero_vec, Matrix, Subspace, Vector};

/// Coordinates of an element in the algebra basis.
pub type Element = Vector;

/// A linear map between algebras as a (target dim × source dim) matrix.
pub type LinearMap = Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    names: Vec<String>,
    /// table[i][j] = b_i·b_j, symmetric.
    table: Vec<Vec<Vector>>,
}

/// Builds an algebra from sparse entries (i, j, k, c) meaning b_i·b_j has coefficient c at b_k.
pub fn make_algebra(field: Field, names: Vec<String>, entries: &[(usize, usize, usize, Scalar)]) -> Result<Algebra> {
    let n = names.len();
    let mut seen: HashMap<(usize, usize, usize), &Scalar> = HashMap::new();
    let mut table = vec![vec![zero_vec(field, n); n]; n];
    for (i, j, k, c) in entries {
        let (i, j, k) = (*i, *j, *k);
        if i >= n || j >= n || k >= n {
            return Err(Error::IndexOutOfRange(format!("({i}, {j}, {k}) with dim {n}")));
        }
        if c.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
        }
        let (i, j) = (i.min(j), i.max(j));
        if let Some(prev) = seen.insert((i, j, k), c) {
            if prev != c {
                return Err(Error::DuplicateEntry(i, j));
            }
        }
        table[i][j][k] = c.clone();
        table[j][i][k] = c.clone();
    }
    Ok(Algebra { field, names, table })
}

impl Algebra {
    /// Builds from a full product table; fails unless it is symmetric with consistent sizes.
    pub fn from_table(field: Field, names: Vec<String>, table: Vec<Vec<Vector>>) -> Result<Algebra> {
        let n = names.len();
        if table.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: table.len() });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: v.len() });
                }
                if table[j][i] != *v {
                    return Err(Error::DuplicateEntry(i.min(j), i.max(j)));
                }
            }
        }
        Ok(Algebra { field, names, table })
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn basis(&self, k: usize) -> Element {
        unit_vec(self.field, self.dim(), k)
    }
    pub fn zero(&self) -> Element {
        zero_vec(self.field, self.dim())
    }
    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn try_mul(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        Ok(self.mul(x, y))
    }

    /// Bilinear product; both arguments must have length dim.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let mut r = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut r, &(xi * yj), &self.table[i][j]);
            }
        }
        r
    }

    /// Column k is a·b_k.
    pub fn adjoint(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|k| self.mul(a, &self.basis(k))).collect();
        Matrix::from_cols(self.field, n, &cols).expect("square adjoint")
    }

    pub fn is_idempotent(&self, a: &[Scalar]) -> bool {
        self.mul(a, a) == a
    }

    /// Smallest subalgebra containing `gens`.
    pub fn subalgebra_closure(&self, gens: &[Element]) -> Subspace {
        let n = self.dim();
        let mut s = Subspace::span(self.field, n, gens.to_vec());
        for _ in 0..=n {
            let b = s.basis().to_vec();
            let mut vecs = b.clone();
            for i in 0..b.len() {
                for j in i..b.len() {
                    vecs.push(self.mul(&b[i], &b[j]));
                }
            }
            let next = Subspace::span(self.field, n, vecs);
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
        s
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[Element]) -> Subspace {
        let n = self.dim();
        let mut s = Subspace::span(self.field, n, gens.to_vec());
        for _ in 0..=n {
            let mut vecs = s.basis().to_vec();
            for b in s.basis() {
                for k in 0..n {
                    vecs.push(self.mul(&self.basis(k), b));
                }
            }
            let next = Subspace::span(self.field, n, vecs);
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
        s
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|b| (0..self.dim()).all(|k| s.contains(&self.mul(&self.basis(k), b)).unwrap_or(false)))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i..b.len()).all(|j| s.contains(&self.mul(&b[i], &b[j])).unwrap_or(false)))
    }

    /// Quotient by an ideal on the complement spanned by non-pivot basis vectors.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(Algebra, LinearMap)> {
        if ideal.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: ideal.ambient_dim() });
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|k| !ideal.pivots().contains(k)).collect();
        let m = keep.len();
        let project = |v: &[Scalar]| -> Vector {
            let r = ideal.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let cols: Vec<Vector> = (0..self.dim()).map(|k| project(&self.basis(k))).collect();
        let proj = Matrix::from_cols(self.field, m, &cols)?;
        let table = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| project(&self.table[i][j])).collect())
            .collect();
        let names = keep.iter().map(|&k| self.names[k].clone()).collect();
        Ok((Algebra { field: self.field, names, table }, proj))
    }

    /// The subalgebra on the canonical basis of `s`, with its inclusion map.
    pub fn restrict(&self, s: &Subspace, prefix: &str) -> Result<(Algebra, LinearMap)> {
        if !self.is_subalgebra(s) {
            return Err(Error::NotGenerating(s.dim(), self.dim()));
        }
        let b = s.basis();
        let table = b
            .iter()
            .map(|x| b.iter().map(|y| s.coordinates(&self.mul(x, y)).expect("closed")).collect())
            .collect();
        let names = (0..b.len()).map(|k| format!("{prefix}{k}")).collect();
        let incl = Matrix::from_cols(self.field, self.dim(), b)?;
        Ok((Algebra { field: self.field, names, table }, incl))
    }

    /// The same algebra with basis vector k renamed and moved to position perm[k].
    pub fn permuted(&self, perm: &[usize]) -> Result<(Algebra, LinearMap)> {
        let n = self.dim();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::IndexOutOfRange("not a permutation".into()));
        }
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let move_vec = |v: &Vector| -> Vector { (0..n).map(|p| v[inv[p]].clone()).collect() };
        let table = (0..n)
            .map(|p| (0..n).map(|q| move_vec(&self.table[inv[p]][inv[q]])).collect())
            .collect();
        let names = (0..n).map(|p| self.names[inv[p]].clone()).collect();
        let mut m = Matrix::zeros(self.field, n, n);
        for (k, &p) in perm.iter().enumerate() {
            m.set(p, k, self.field.one());
        }
        Ok((Algebra { field: self.field, names, table }, m))
    }

    /// Sparse entries (i ≤ j) of the table.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn with_entry(&self, i: usize, j: usize, v: Vector) -> Algebra {
        let mut a = self.clone();
        a.table[i][j] = v.clone();
        a.table[j][i] = v;
        a
    }
}

/// First basis pair (i, j) with f(b_i b_j) ≠ f(b_i) f(b_j), or None if f is a homomorphism.
pub fn homomorphism_failure(src: &Algebra, tgt: &Algebra, f: &LinearMap) -> Option<(usize, usize)> {
    if f.cols() != src.dim() || f.rows() != tgt.dim() {
        return Some((0, 0));
    }
    let imgs: Vec<Vector> = (0..src.dim()).map(|k| f.col(k)).collect();
    for i in 0..src.dim() {
        for j in i..src.dim() {
            let lhs = f.apply(src.product(i, j)).expect("sized");
            if lhs != tgt.mul(&imgs[i], &imgs[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn check_homomorphism(src: &Algebra, tgt: &Algebra, f: &LinearMap) -> bool {
    homomorphism_failure(src, tgt, f).is_none()
}

pub fn is_bijective(f: &LinearMap) -> bool {
    f.rows() == f.cols() && rref(f).2 == f.rows()
}

/// Linear combination Σ c_k b_{idx_k} from (name, coefficient) pairs.
pub fn element_from_terms(alg: &Algebra, terms: &[(&str, Scalar)]) -> Result<Element> {
    let mut v = alg.zero();
    for (name, c) in terms {
        let k = alg.index_of(name).ok_or_else(|| Error::IndexOutOfRange((*name).to_string()))?;
        v[k] = &v[k] + c;
    }
    Ok(v)
}

pub fn is_zero(v: &[Scalar]) -> bool {
    is_zero_vec(v)
}
