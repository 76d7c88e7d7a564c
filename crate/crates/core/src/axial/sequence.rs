// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{axpy, is_zero_vec, solve, vadd, vsub, Matrix, Subspace, Vector};

use super::decompose::{eigen_decompose, miyamoto, AxisDecomposition};
use super::FusionParams;

/// The axes a_i for i in [−N, N+1] together with τ₀, τ₁ and θ.
#[derive(Clone, Debug)]
pub struct AxisSequence {
    pub alg: Algebra,
    pub params: FusionParams,
    pub window: usize,
    axes: Vec<Element>,
    pub tau0: LinearMap,
    pub tau1: LinearMap,
    pub theta: LinearMap,
    pub dec0: AxisDecomposition,
    pub dec1: AxisDecomposition,
}

impl AxisSequence {
    pub fn lo(&self) -> i64 {
        -(self.window as i64)
    }
    pub fn hi(&self) -> i64 {
        self.window as i64 + 1
    }

    pub fn a(&self, i: i64) -> Result<&Element> {
        if i < self.lo() || i > self.hi() {
            return Err(Error::WindowTooSmall(format!("a_{i} lies outside [{}, {}]", self.lo(), self.hi())));
        }
        Ok(&self.axes[(i - self.lo()) as usize])
    }

    fn ax(&self, i: i64) -> &Element {
        self.a(i).expect("index checked by caller")
    }
}

pub fn axis_orbit(
    alg: &Algebra,
    a0: &[Scalar],
    a1: &[Scalar],
    theta: &LinearMap,
    params: &FusionParams,
    window: usize,
) -> Result<AxisSequence> {
    let dec0 = eigen_decompose(alg, a0, params)?;
    let dec1 = eigen_decompose(alg, a1, params)?;
    let tau0 = miyamoto(alg, &dec0)?;
    let tau1 = miyamoto(alg, &dec1)?;
    let fwd = tau1.mul(&tau0)?;
    let back = tau0.mul(&tau1)?;
    let n = window as i64;
    // a_{2i} = (τ₁τ₀)^i a₀ and a_{2i+1} = (τ₁τ₀)^i a₁, for i of either sign.
    let mut map = std::collections::BTreeMap::new();
    let (mut e, mut o) = (a0.to_vec(), a1.to_vec());
    for i in 0.. {
        if 2 * i > n + 1 && 2 * i + 1 > n + 1 {
            break;
        }
        map.insert(2 * i, e.clone());
        map.insert(2 * i + 1, o.clone());
        e = fwd.apply(&e)?;
        o = fwd.apply(&o)?;
    }
    let (mut e, mut o) = (back.apply(a0)?, back.apply(a1)?);
    for i in 1.. {
        if -2 * i + 1 < -n {
            break;
        }
        map.insert(-2 * i, e.clone());
        map.insert(-2 * i + 1, o.clone());
        e = back.apply(&e)?;
        o = back.apply(&o)?;
    }
    let axes: Vec<Element> = (-n..=n + 1).map(|i| map.remove(&i).expect("filled")).collect();
    let seq = AxisSequence {
        alg: alg.clone(),
        params: params.clone(),
        window,
        axes,
        tau0,
        tau1,
        theta: theta.clone(),
        dec0,
        dec1,
    };
    for i in seq.lo()..=seq.hi() {
        let ai = seq.ax(i);
        for (name, map, j) in [("theta", &seq.theta, 1 - i), ("tau0", &seq.tau0, -i), ("tau1", &seq.tau1, 2 - i)] {
            if let Ok(aj) = seq.a(j) {
                if &map.apply(ai)? != aj {
                    return Err(Error::SequenceMismatch(format!("{name}(a_{i}) != a_{j}")));
                }
            }
        }
    }
    Ok(seq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// The relation ending the axis sequence, as Σ α_j v_j = 0 with last coefficient 1.
///
/// For D = 2k − 1, v_j = a_{1−j} + a_j (case 1) or a_{1−j} − a_j (case 2), j = 1..k.
/// For D = 2k, v_0 = a_0 and v_j = a_{−j} + a_j (case 3), or v_j = a_{−j} − a_j (case 4, j ≥ 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub parity: Parity,
    pub case: u8,
    pub coefficients: Vec<Scalar>,
}

fn relation_terms(seq: &AxisSequence, case: u8, k: i64) -> Result<Vec<Vector>> {
    let mut v = Vec::new();
    match case {
        1 | 2 => {
            for j in 1..=k {
                let (x, y) = (seq.a(1 - j)?, seq.a(j)?);
                v.push(if case == 1 { vadd(x, y) } else { vsub(x, y) });
            }
        }
        3 => {
            v.push(seq.a(0)?.clone());
            for j in 1..=k {
                v.push(vadd(seq.a(-j)?, seq.a(j)?));
            }
        }
        _ => {
            for j in 1..=k {
                v.push(vsub(seq.a(-j)?, seq.a(j)?));
            }
        }
    }
    Ok(v)
}

impl LinearRelation {
    /// k with D = 2k − 1 (cases 1, 2) or D = 2k (cases 3, 4).
    pub fn k(&self) -> i64 {
        match self.case {
            3 => self.coefficients.len() as i64 - 1,
            _ => self.coefficients.len() as i64,
        }
    }

    pub fn holds(&self, seq: &AxisSequence) -> Result<bool> {
        let terms = relation_terms(seq, self.case, self.k())?;
        let mut acc = crate::linalg::zero_vec(seq.params.xi.field(), terms[0].len());
        for (c, t) in self.coefficients.iter().zip(&terms) {
            axpy(&mut acc, c, t);
        }
        Ok(is_zero_vec(&acc))
    }
}

/// The i_k order 0, 1, −1, 2, −2, …
pub fn i_k(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        k as i64 / 2
    } else {
        -(k as i64 / 2)
    }
}

fn try_case(seq: &AxisSequence, case: u8, k: i64) -> Result<Option<LinearRelation>> {
    let terms = relation_terms(seq, case, k)?;
    let (last, earlier) = terms.split_last().expect("k ≥ 1");
    let f = seq.params.xi.field();
    let parity = if case % 2 == 1 { Parity::Even } else { Parity::Odd };
    let found = if earlier.is_empty() {
        is_zero_vec(last).then(Vec::new)
    } else {
        let m = Matrix::from_cols(f, last.len(), earlier)?;
        solve(&m, last)?
    };
    Ok(found.map(|c| {
        let mut coefficients: Vec<Scalar> = c.into_iter().map(|x| -x).collect();
        coefficients.push(f.one());
        LinearRelation { parity, case, coefficients }
    }))
}

/// D and the classified relation; the window must reach a_{i_{D+1}}.
pub fn axial_dimension(seq: &AxisSequence) -> Result<(usize, LinearRelation)> {
    let f = seq.params.xi.field();
    let n = seq.ax(0).len();
    let mut span = Subspace::zero(f, n);
    let mut d = 0;
    for k in 1.. {
        let i = i_k(k);
        let ai = seq.a(i).map_err(|_| Error::WindowTooSmall(format!("span still growing at a_{i}")))?;
        if span.contains(ai)? {
            break;
        }
        span = span.with(ai.clone());
        d = k;
    }
    let kk = (d as i64 + 1) / 2;
    let cases: [u8; 2] = if d % 2 == 1 { [1, 2] } else { [3, 4] };
    for case in cases {
        if let Some(rel) = try_case(seq, case, if d % 2 == 1 { kk } else { d as i64 / 2 })? {
            return Ok((d, rel));
        }
    }
    Err(Error::SequenceMismatch(format!("no even or odd relation found at D = {d}")))
}
