// SPDX-License-Identifier: Apache-2.0
//! Finite windows of the infinite-dimensional Z(2, ½).
//!
//! Products in Z(2, ½), with p₀ = 0 and p_{−k} = p_k:
//!   a_i a_j = p_{|i−j|} + ½(a_i + a_j)
//!   a_i p_j = (3/2)p_j − (3/4)a_i + (3/8)(a_{i−j} + a_{i+j})
//!   p_i p_j = (3/4)(p_i + p_j) − (3/8)(p_{i+j} + p_{|i−j|})

use serde::Serialize;

use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, Matrix, Vector};

use super::{construct, CatalogInstance, FamilyId, FamilyParams};

/// A spanning vector of Z(2, ½).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ZGen {
    A(i64),
    P(u64),
}

impl ZGen {
    /// The least window radius containing this vector (p₀ = 0 needs none).
    pub fn required(self) -> usize {
        match self {
            ZGen::A(k) => (-k).max(k - 1).max(0) as usize,
            ZGen::P(k) => (k as usize).saturating_sub(1).div_ceil(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZProduct {
    InWindow(Vector),
    /// The least radius n′ whose window holds both factors and every term of the product.
    Escapes(usize),
}

/// The window on a_{−n}, …, a_{n+1}, p₁, …, p_{2n+1}.
#[derive(Clone, Debug)]
pub struct ZWindow {
    pub n: usize,
    pub field: Field,
    pub names: Vec<String>,
    gens: Vec<ZGen>,
    table: Vec<Vec<ZProduct>>,
}

type Terms = Vec<(Scalar, ZGen)>;

fn formula(f: Field, x: ZGen, y: ZGen) -> Terms {
    let h = |n, d| f.frac(n, d).expect("characteristic is not 2");
    let pk = |k: i64| ZGen::P(k.unsigned_abs());
    match (x, y) {
        (ZGen::A(i), ZGen::A(j)) => vec![(f.one(), pk(i - j)), (h(1, 2), ZGen::A(i)), (h(1, 2), ZGen::A(j))],
        (ZGen::A(i), ZGen::P(j)) | (ZGen::P(j), ZGen::A(i)) => {
            let j = j as i64;
            vec![(h(3, 2), pk(j)), (h(-3, 4), ZGen::A(i)), (h(3, 8), ZGen::A(i - j)), (h(3, 8), ZGen::A(i + j))]
        }
        (ZGen::P(i), ZGen::P(j)) => {
            let (i, j) = (i as i64, j as i64);
            vec![(h(3, 4), pk(i)), (h(3, 4), pk(j)), (h(-3, 8), pk(i + j)), (h(-3, 8), pk(i - j))]
        }
    }
}

impl ZWindow {
    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn lo(&self) -> i64 {
        -(self.n as i64)
    }

    pub fn hi(&self) -> i64 {
        self.n as i64 + 1
    }

    pub fn gens(&self) -> &[ZGen] {
        &self.gens
    }

    /// Coordinates of a spanning vector, or None outside the window (p₀ is the zero vector).
    pub fn vector(&self, g: ZGen) -> Option<Vector> {
        if g == ZGen::P(0) {
            return Some(crate::linalg::zero_vec(self.field, self.dim()));
        }
        let k = self.gens.iter().position(|&h| h == g)?;
        Some(crate::linalg::unit_vec(self.field, self.dim(), k))
    }

    /// The product of two spanning vectors, anywhere in Z(2, ½).
    pub fn product(&self, x: ZGen, y: ZGen) -> ZProduct {
        let terms = formula(self.field, x, y);
        let need = terms.iter().map(|(_, g)| g.required()).chain([x.required(), y.required()]).max().unwrap_or(0);
        if need > self.n {
            return ZProduct::Escapes(need);
        }
        let mut v = crate::linalg::zero_vec(self.field, self.dim());
        for (c, g) in &terms {
            axpy(&mut v, c, &self.vector(*g).expect("term within window"));
        }
        ZProduct::InWindow(v)
    }

    /// Products of window basis vectors.
    pub fn basis_product(&self, i: usize, j: usize) -> &ZProduct {
        &self.table[i][j]
    }

    /// The least radius enclosing every product of window basis vectors.
    pub fn growth(&self) -> usize {
        self.table
            .iter()
            .flatten()
            .map(|p| match p {
                ZProduct::InWindow(_) => self.n,
                ZProduct::Escapes(m) => *m,
            })
            .max()
            .unwrap_or(self.n)
    }

    /// The periodic quotient a_{i+2n+2} = a_i, whose axes are the images of the window's axes.
    pub fn periodic_quotient(&self) -> Result<CatalogInstance> {
        construct(FamilyId::Z, &FamilyParams::n(self.n as u64), self.field)
    }

    /// The linear map from the window onto the periodic quotient.
    pub fn quotient_map(&self, q: &CatalogInstance) -> Result<Matrix> {
        let m = 2 * self.n as i64 + 2;
        let cols: Vec<Vector> = self
            .gens
            .iter()
            .map(|g| {
                let name = match *g {
                    ZGen::A(i) => format!("a{}", i.rem_euclid(m)),
                    ZGen::P(k) => {
                        let r = (k as i64).rem_euclid(m);
                        let r = r.min(m - r);
                        if r == 0 {
                            return q.algebra.zero();
                        }
                        format!("p{r}")
                    }
                };
                q.algebra.basis(q.algebra.index_of(&name).expect("quotient basis"))
            })
            .collect();
        Matrix::from_cols(self.field, q.algebra.dim(), &cols)
    }

    /// Embedding into a wider window.
    pub fn embedding(&self, wider: &ZWindow) -> Result<Matrix> {
        let cols: Vec<Vector> = self.gens.iter().map(|g| wider.vector(*g).expect("nested windows")).collect();
        Matrix::from_cols(self.field, wider.dim(), &cols)
    }
}

/// The window of radius n ≥ 1; axes a₀, a₁ have (ξ, η) = (2, ½).
pub fn z_window(n: usize, field: Field) -> ZWindow {
    let (lo, hi) = (-(n as i64), n as i64 + 1);
    let mut gens: Vec<ZGen> = (lo..=hi).map(ZGen::A).collect();
    gens.extend((1..=2 * n as u64 + 1).map(ZGen::P));
    let names = gens
        .iter()
        .map(|g| match g {
            ZGen::A(i) => format!("a{i}"),
            ZGen::P(k) => format!("p{k}"),
        })
        .collect();
    let mut w = ZWindow { n, field, names, gens: gens.clone(), table: Vec::new() };
    w.table = gens.iter().map(|&x| gens.iter().map(|&y| w.product(x, y)).collect()).collect();
    w
}
