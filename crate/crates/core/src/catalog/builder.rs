// SPDX-License-Identifier: Apache-2.0
//! Structure tables from product rules stated for all axis indices.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, rref, unit_vec, vadd, zero_vec, Matrix, Vector};

/// How a_i outside the stored window is expressed.
#[derive(Clone, Debug)]
pub enum Expansion {
    /// No axes outside the window.
    None,
    /// a_{i+p} = a_i.
    Periodic(i64),
    /// a_{i+L} = Σ_k c_k a_{i+k}, k = 0..L−1, with L the window length and c_0 ≠ 0.
    Recurrence(Vec<Scalar>),
}

/// Collects constraints x·y = value and solves for the products of basis pairs.
pub struct TableBuilder {
    pub field: Field,
    names: Vec<String>,
    index: HashMap<String, usize>,
    lo: i64,
    hi: i64,
    expansion: Expansion,
    cache: RefCell<HashMap<i64, Vector>>,
    rules: Vec<(Vector, Vector, Vector)>,
}

impl TableBuilder {
    /// Basis = `extra` followed by a_lo..a_hi.
    pub fn new(field: Field, extra: &[&str], lo: i64, hi: i64, expansion: Expansion) -> TableBuilder {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend((lo..=hi).map(|i| format!("a{i}")));
        let index = names.iter().enumerate().map(|(k, n)| (n.clone(), k)).collect();
        TableBuilder { field, names, index, lo, hi, expansion, cache: RefCell::new(HashMap::new()), rules: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn v(&self, name: &str) -> Vector {
        unit_vec(self.field, self.dim(), self.index[name])
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.field, self.dim())
    }

    /// a_i for any integer i.
    pub fn a(&self, i: i64) -> Vector {
        if (self.lo..=self.hi).contains(&i) {
            return self.v(&format!("a{i}"));
        }
        if let Some(v) = self.cache.borrow().get(&i) {
            return v.clone();
        }
        let len = self.hi - self.lo + 1;
        let v = match &self.expansion {
            Expansion::None => panic!("a_{i} is outside the window and no expansion is defined"),
            Expansion::Periodic(p) => self.a((i - self.lo).rem_euclid(*p) + self.lo),
            Expansion::Recurrence(c) if i > self.hi => {
                let mut v = self.zero();
                for (k, ck) in c.iter().enumerate() {
                    axpy(&mut v, ck, &self.a(i - len + k as i64));
                }
                v
            }
            Expansion::Recurrence(c) => {
                // a_i = (a_{i+L} − Σ_{k≥1} c_k a_{i+k}) / c_0
                let mut v = self.a(i + len);
                for (k, ck) in c.iter().enumerate().skip(1) {
                    axpy(&mut v, &(-ck), &self.a(i + k as i64));
                }
                let inv = c[0].inv().expect("leading recurrence coefficient is nonzero");
                v.iter().map(|x| x * &inv).collect()
            }
        };
        self.cache.borrow_mut().insert(i, v.clone());
        v
    }

    /// Σ a_i over the given indices.
    pub fn asum(&self, idx: impl IntoIterator<Item = i64>) -> Vector {
        idx.into_iter().fold(self.zero(), |acc, i| vadd(&acc, &self.a(i)))
    }

    /// Records the constraint x·y = value.
    pub fn rule(&mut self, x: Vector, y: Vector, value: Vector) {
        self.rules.push((x, y, value));
    }

    /// Solves for all basis products; requires a unique consistent solution.
    pub fn solve(self) -> Result<Algebra> {
        let n = self.dim();
        let f = self.field;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let u = pairs.len();
        let mut rows = Vec::with_capacity(self.rules.len());
        for (x, y, val) in &self.rules {
            let mut row = zero_vec(f, u + n);
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if yj.is_zero() {
                        continue;
                    }
                    let k = pos[&(i.min(j), i.max(j))];
                    row[k] = &row[k] + &(xi * yj);
                }
            }
            for (k, c) in val.iter().enumerate() {
                row[u + k] = c.clone();
            }
            rows.push(row);
        }
        let m = Matrix::from_rows(f, u + n, rows)?;
        let (r, pivots, _) = rref(&m);
        if pivots.iter().any(|&p| p >= u) {
            return Err(Error::Resolution("the product rules are inconsistent".into()));
        }
        if pivots.len() < u {
            let (i, j) = pairs[(0..u).find(|c| !pivots.contains(c)).expect("free column")];
            return Err(Error::Resolution(format!("product {}·{} is not determined", self.names[i], self.names[j])));
        }
        let mut table = vec![vec![zero_vec(f, n); n]; n];
        for (row, &(i, j)) in pairs.iter().enumerate() {
            let v: Vector = (0..n).map(|k| r.get(row, u + k).clone()).collect();
            table[i][j] = v.clone();
            table[j][i] = v;
        }
        Algebra::from_table(f, self.names, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn periodic_axes() {
        let b = TableBuilder::new(Q, &["p1"], -2, 2, Expansion::Periodic(5));
        assert_eq!(b.a(3), b.a(-2));
        assert_eq!(b.a(-3), b.a(2));
        assert_eq!(b.a(10), b.a(0));
    }

    #[test]
    fn recurrence_axes() {
        // a_{i+4} = a_i − a_{i+3} + a_{i+1} over the window a_{-1}..a_2.
        let c = vec![Q.one(), Q.one(), Q.zero(), Q.int(-1)];
        let b = TableBuilder::new(Q, &["q"], -1, 2, Expansion::Recurrence(c));
        for i in -6..6 {
            let lhs = b.a(i + 4);
            let mut rhs = b.a(i);
            axpy(&mut rhs, &Q.int(-1), &b.a(i + 3));
            axpy(&mut rhs, &Q.one(), &b.a(i + 1));
            assert_eq!(lhs, rhs, "i = {i}");
        }
    }

    #[test]
    fn underdetermined_and_inconsistent() {
        let mut b = TableBuilder::new(Q, &[], 0, 1, Expansion::None);
        b.rule(b.a(0), b.a(0), b.a(0));
        b.rule(b.a(1), b.a(1), b.a(1));
        assert!(matches!(b.solve(), Err(Error::Resolution(m)) if m.contains("not determined")));

        let mut b = TableBuilder::new(Q, &[], 0, 0, Expansion::None);
        b.rule(b.a(0), b.a(0), b.a(0));
        b.rule(b.a(0), b.a(0), b.zero());
        assert!(matches!(b.solve(), Err(Error::Resolution(m)) if m.contains("inconsistent")));
    }
}
