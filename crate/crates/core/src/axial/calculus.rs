// SPDX-License-Identifier: Apache-2.0
//! The elements p_{i,j}, x_i, y_i, z_i and the scalars λ_i.

use crate::algebra::Element;
use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::{axpy, vadd, vscale};

use super::sequence::AxisSequence;

/// λ_i: the a₀-coefficient of the 1-component of a_i with respect to a₀.
pub fn lambda(seq: &AxisSequence, i: i64) -> Result<Scalar> {
    Ok(seq.dec0.phi(seq.a(i)?))
}

/// p_{i,j} = a_j a_{i+j} − η(a_j + a_{i+j}).
pub fn p(seq: &AxisSequence, i: i64, j: i64) -> Result<Element> {
    let (aj, aij) = (seq.a(j)?, seq.a(i + j)?);
    let mut v = seq.alg.mul(aj, aij);
    axpy(&mut v, &(-&seq.params.eta), &vadd(aj, aij));
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedElements {
    pub p: Element,
    pub x: Element,
    pub y: Element,
    pub z: Element,
}

/// p_{i,j} together with x_i, y_i, z_i.
pub fn derived_elements(seq: &AxisSequence, i: i64, j: i64) -> Result<DerivedElements> {
    let f = seq.params.xi.field();
    let (xi, eta) = (&seq.params.xi, &seq.params.eta);
    let half = f.frac(1, 2)?;
    let lam = lambda(seq, i)?;
    let p0 = p(seq, i, 0)?;
    let a0 = seq.a(0)?;
    let sym = vadd(seq.a(-i)?, seq.a(i)?);
    let mut x = p0.clone();
    axpy(&mut x, &(eta - &lam), a0);
    axpy(&mut x, &(eta * &half), &sym);
    let y = crate::linalg::vsub(seq.a(i)?, seq.a(-i)?);
    let mut z = p0;
    axpy(&mut z, &(eta - &((&f.one() - xi) * &lam)), a0);
    axpy(&mut z, &(-((xi - eta) * &half)), &sym);
    Ok(DerivedElements { p: p(seq, i, j)?, x, y, z })
}

/// a_j p_{i,j} = (ξ−η)p_{i,j} + ((1−ξ)λ_i + η(ξ−η−1))a_j + ½η(ξ−η)(a_{i+j} + a_{j−i}).
pub fn eq1_check(seq: &AxisSequence, i: i64, j: i64) -> Result<bool> {
    let f = seq.params.xi.field();
    let (xi, eta) = (&seq.params.xi, &seq.params.eta);
    let pij = p(seq, i, j)?;
    let aj = seq.a(j)?;
    let lhs = seq.alg.mul(aj, &pij);
    let one = f.one();
    let mut rhs = vscale(&(xi - eta), &pij);
    axpy(&mut rhs, &(&((&one - xi) * &lambda(seq, i)?) + &(eta * &(&(xi - eta) - &one))), aj);
    axpy(&mut rhs, &(&(eta * &(xi - eta)) * &f.frac(1, 2)?), &vadd(seq.a(i + j)?, seq.a(j - i)?));
    Ok(lhs == rhs)
}
