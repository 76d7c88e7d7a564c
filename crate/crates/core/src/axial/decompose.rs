// SPDX-License-Identifier: Apache-2.0

use crate::algebra::{homomorphism_failure, Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{axpy, kernel, zero_vec, Matrix, Subspace, Vector};

use super::fusion::Eigen;
use super::FusionParams;

/// Eigenspaces of ad_a for the spectrum {1, 0, ξ, η}.
#[derive(Clone, Debug)]
pub struct AxisDecomposition {
    pub axis: Element,
    pub params: FusionParams,
    spaces: [Subspace; 4],
    /// Concatenated eigenbasis; the 1-eigenvector is the axis itself.
    vectors: Vec<(Eigen, Vector)>,
    inverse: Matrix,
}

impl AxisDecomposition {
    pub fn space(&self, e: Eigen) -> &Subspace {
        &self.spaces[e as usize]
    }

    pub fn dims(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|k| self.spaces[k].dim())
    }

    /// Eigenbasis vectors with their tags, grouped in the order 1, 0, ξ, η.
    pub fn eigenbasis(&self) -> &[(Eigen, Vector)] {
        &self.vectors
    }

    /// Coefficients of v in the eigenbasis.
    pub fn coefficients(&self, v: &[Scalar]) -> Vector {
        self.inverse.apply(v).expect("sized")
    }

    /// The component of v in the e-eigenspace.
    pub fn project(&self, v: &[Scalar], e: Eigen) -> Vector {
        let c = self.coefficients(v);
        let mut out = zero_vec(self.axis[0].field(), v.len());
        for (k, (tag, b)) in self.vectors.iter().enumerate() {
            if *tag == e {
                axpy(&mut out, &c[k], b);
            }
        }
        out
    }

    /// φ(v): the coefficient of the axis in the 1-component of v.
    pub fn phi(&self, v: &[Scalar]) -> Scalar {
        self.coefficients(v)[0].clone()
    }
}

pub fn eigen_decompose(alg: &Algebra, a: &[Scalar], params: &FusionParams) -> Result<AxisDecomposition> {
    if !alg.is_idempotent(a) {
        return Err(Error::NotIdempotent);
    }
    let n = alg.dim();
    let ad = alg.adjoint(a);
    let spaces = Eigen::ALL.map(|e| kernel(&ad.shift(&params.value(e))));
    let dims = [0, 1, 2, 3].map(|k| spaces[k].dim());
    if dims.iter().sum::<usize>() < n {
        return Err(Error::NotSemisimple { dims, dim: n });
    }
    if dims[0] != 1 {
        return Err(Error::NotPrimitive(dims[0]));
    }
    let mut vectors = vec![(Eigen::One, a.to_vec())];
    for e in &Eigen::ALL[1..] {
        for b in spaces[*e as usize].basis() {
            vectors.push((*e, b.clone()));
        }
    }
    let cols: Vec<Vector> = vectors.iter().map(|(_, v)| v.clone()).collect();
    let inverse = Matrix::from_cols(alg.field(), n, &cols)?.inverse().expect("eigenbasis of a direct sum");
    Ok(AxisDecomposition { axis: a.to_vec(), params: params.clone(), spaces, vectors, inverse })
}

/// The Miyamoto involution: −1 on the η-eigenspace, identity elsewhere.
pub fn miyamoto(alg: &Algebra, dec: &AxisDecomposition) -> Result<LinearMap> {
    let f = alg.field();
    let n = alg.dim();
    let images: Vec<Vector> = dec
        .vectors
        .iter()
        .map(|(e, v)| if *e == Eigen::Eta { v.iter().map(|x| -x).collect() } else { v.clone() })
        .collect();
    let img = Matrix::from_cols(f, n, &images)?;
    let tau = img.mul(&dec.inverse)?;
    if let Some((i, j)) = homomorphism_failure(alg, alg, &tau) {
        return Err(Error::NotAutomorphism(i, j));
    }
    Ok(tau)
}

/// First (w, z) with a(wz) ≠ (aw)z for a basis vector w and 0-eigenvector z, as (basis index, 0-eigenbasis index).
pub fn seress_check(alg: &Algebra, dec: &AxisDecomposition) -> Option<(usize, usize)> {
    let a = &dec.axis;
    for (zi, z) in dec.space(Eigen::Zero).basis().iter().enumerate() {
        for k in 0..alg.dim() {
            let w = alg.basis(k);
            let lhs = alg.mul(a, &alg.mul(&w, z));
            let rhs = alg.mul(&alg.mul(a, &w), z);
            if lhs != rhs {
                return Some((k, zi));
            }
        }
    }
    None
}
