// SPDX-License-Identifier: Apache-2.0
//! The JSON interchange format for algebras with a pair of axes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::axial::FusionParams;
use crate::catalog::{CatalogInstance, FamilyId, FamilyParams};
use crate::error::{Error, Result};
use crate::field::{parse_scalar, Field};
use crate::linalg::zero_vec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    /// Coordinates of e_i e_j by basis name; absent names are zero.
    pub coords: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEntry {
    pub xi: String,
    pub eta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub products: Vec<ProductEntry>,
    pub axes: [String; 2],
    pub params: ParamsEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyEntry>,
}

/// A parsed document.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebra: Algebra,
    pub a0: Element,
    pub a1: Element,
    pub params: FusionParams,
    pub family: Option<(FamilyId, FamilyParams)>,
}

fn family_params_map(p: &FamilyParams) -> BTreeMap<String, String> {
    let mut m: BTreeMap<String, String> = p.scalars().into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    if let Some(n) = p.n {
        m.insert("n".into(), n.to_string());
    }
    m
}

impl AlgebraDocument {
    pub fn new(alg: &Algebra, axes: (usize, usize), params: &FusionParams, family: Option<(FamilyId, &FamilyParams)>) -> AlgebraDocument {
        let names = alg.names();
        let mut products = Vec::new();
        for i in 0..alg.dim() {
            for j in i..alg.dim() {
                let coords: BTreeMap<String, String> = alg
                    .product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (names[k].clone(), c.to_string()))
                    .collect();
                if !coords.is_empty() {
                    products.push(ProductEntry { i, j, coords });
                }
            }
        }
        AlgebraDocument {
            field: alg.field().to_string(),
            dim: alg.dim(),
            basis: names.to_vec(),
            products,
            axes: [names[axes.0].clone(), names[axes.1].clone()],
            params: ParamsEntry { xi: params.xi.to_string(), eta: params.eta.to_string() },
            family: family.map(|(id, p)| FamilyEntry { name: id.name().into(), params: family_params_map(p) }),
        }
    }

    pub fn from_instance(inst: &CatalogInstance) -> AlgebraDocument {
        AlgebraDocument::new(&inst.algebra, inst.axes, &inst.params, Some((inst.family, &inst.family_params)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<AlgebraDocument> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn load(&self) -> Result<Loaded> {
        let f: Field = self.field.parse()?;
        if self.basis.len() != self.dim {
            return Err(Error::Document(format!("dim is {} but {} basis names are listed", self.dim, self.basis.len())));
        }
        let index: BTreeMap<&str, usize> = self.basis.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
        if index.len() != self.dim {
            return Err(Error::Document("basis names are not distinct".into()));
        }
        let n = self.dim;
        let mut table = vec![vec![zero_vec(f, n); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for e in &self.products {
            if e.i > e.j || e.j >= n {
                return Err(Error::Document(format!("product entry ({}, {}) needs i ≤ j < dim", e.i, e.j)));
            }
            if std::mem::replace(&mut seen[e.i][e.j], true) {
                return Err(Error::DuplicateEntry(e.i, e.j));
            }
            let mut v = zero_vec(f, n);
            for (name, text) in &e.coords {
                let k = *index.get(name.as_str()).ok_or_else(|| Error::Document(format!("unknown basis name {name:?}")))?;
                v[k] = parse_scalar(text, f)?;
            }
            table[e.i][e.j] = v.clone();
            table[e.j][e.i] = v;
        }
        let algebra = Algebra::from_table(f, self.basis.clone(), table)?;
        let axis = |name: &str| -> Result<Element> {
            let k = *index.get(name).ok_or_else(|| Error::Document(format!("axis {name:?} is not a basis name")))?;
            Ok(algebra.basis(k))
        };
        let (a0, a1) = (axis(&self.axes[0])?, axis(&self.axes[1])?);
        let params = FusionParams::new(parse_scalar(&self.params.xi, f)?, parse_scalar(&self.params.eta, f)?)?;
        let family = match &self.family {
            None => None,
            Some(fe) => {
                let id: FamilyId = fe.name.parse()?;
                let mut p = FamilyParams::none();
                for (k, v) in &fe.params {
                    match k.as_str() {
                        "xi" => p.xi = Some(parse_scalar(v, f)?),
                        "eta" => p.eta = Some(parse_scalar(v, f)?),
                        "alpha" => p.alpha = Some(parse_scalar(v, f)?),
                        "mu" => p.mu = Some(parse_scalar(v, f)?),
                        "n" => p.n = Some(v.parse().map_err(|_| Error::Parse(v.clone()))?),
                        other => return Err(Error::Document(format!("unknown family parameter {other:?}"))),
                    }
                }
                Some((id, p))
            }
        };
        Ok(Loaded { algebra, a0, a1, params, family })
    }
}
