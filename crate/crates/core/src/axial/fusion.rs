// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::field::Scalar;

use super::decompose::{eigen_decompose, AxisDecomposition};
use super::FusionParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Eigen {
    One = 0,
    Zero = 1,
    Xi = 2,
    Eta = 3,
}

impl Eigen {
    pub const ALL: [Eigen; 4] = [Eigen::One, Eigen::Zero, Eigen::Xi, Eigen::Eta];

    pub fn label(self) -> &'static str {
        match self {
            Eigen::One => "1",
            Eigen::Zero => "0",
            Eigen::Xi => "xi",
            Eigen::Eta => "eta",
        }
    }
}

/// The fusion rule F(ξ, η), symmetric in its arguments.
pub fn fusion_allowed(a: Eigen, b: Eigen) -> &'static [Eigen] {
    use Eigen::*;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (a, b) {
        (One, One) => &[One],
        (One, Zero) | (Zero, Zero) => &[Zero],
        (One, Xi) | (Zero, Xi) => &[Xi],
        (One, Eta) | (Zero, Eta) | (Xi, Eta) => &[Eta],
        (Xi, Xi) => &[Zero, One],
        (Eta, Eta) => &[Zero, One, Xi],
        _ => unreachable!("ordered pair"),
    }
}

/// A product u·v of eigenvectors with a component outside the allowed eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionFailure {
    pub alpha: Eigen,
    pub beta: Eigen,
    /// Positions of u and v within the eigenbases of their eigenspaces.
    pub witness: (usize, usize),
    pub offending: Eigen,
}

#[derive(Clone, Debug)]
pub struct AxisReport {
    pub idempotent: bool,
    pub decomposition: Option<AxisDecomposition>,
    pub primitive: bool,
    pub semisimple: bool,
    pub fusion_ok: bool,
    pub fusion_failures: Vec<FusionFailure>,
    pub error: Option<Error>,
}

impl AxisReport {
    pub fn dims(&self) -> Option<[usize; 4]> {
        self.decomposition.as_ref().map(|d| d.dims())
    }
}

/// Checks idempotency, semisimplicity, primitivity and the fusion rule, collecting every failure.
pub fn check_axis(alg: &Algebra, a: &[Scalar], params: &FusionParams) -> AxisReport {
    let idempotent = alg.is_idempotent(a);
    let dec = match eigen_decompose(alg, a, params) {
        Ok(d) => d,
        Err(e) => {
            let semisimple = idempotent && !matches!(e, Error::NotSemisimple { .. });
            return AxisReport {
                idempotent,
                decomposition: None,
                primitive: semisimple && !matches!(e, Error::NotPrimitive(_)),
                semisimple,
                fusion_ok: false,
                fusion_failures: Vec::new(),
                error: Some(e),
            }
        }
    };
    let basis = dec.eigenbasis();
    // Index of each eigenvector within its own eigenspace.
    let mut local = Vec::with_capacity(basis.len());
    let mut counts = [0usize; 4];
    for (e, _) in basis {
        local.push(counts[*e as usize]);
        counts[*e as usize] += 1;
    }
    let mut failures = Vec::new();
    for s in 0..basis.len() {
        for t in s..basis.len() {
            let (alpha, u) = &basis[s];
            let (beta, v) = &basis[t];
            let allowed = fusion_allowed(*alpha, *beta);
            let c = dec.coefficients(&alg.mul(u, v));
            let mut bad = [false; 4];
            for (k, (gamma, _)) in basis.iter().enumerate() {
                if !c[k].is_zero() && !allowed.contains(gamma) {
                    bad[*gamma as usize] = true;
                }
            }
            for gamma in Eigen::ALL.into_iter().filter(|g| bad[*g as usize]) {
                failures.push(FusionFailure { alpha: *alpha, beta: *beta, witness: (local[s], local[t]), offending: gamma });
            }
        }
    }
    AxisReport {
        idempotent,
        decomposition: Some(dec),
        primitive: true,
        semisimple: true,
        fusion_ok: failures.is_empty(),
        fusion_failures: failures,
        error: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Eigen::*;

    #[test]
    fn table_entries() {
        assert_eq!(fusion_allowed(Xi, Xi), &[Zero, One]);
        assert_eq!(fusion_allowed(Eta, Eta), &[Zero, One, Xi]);
        assert_eq!(fusion_allowed(Zero, Eta), &[Eta]);
        assert_eq!(fusion_allowed(One, One), &[One]);
        assert_eq!(fusion_allowed(Xi, Eta), &[Eta]);
    }

    #[test]
    fn symmetric() {
        for a in Eigen::ALL {
            for b in Eigen::ALL {
                assert_eq!(fusion_allowed(a, b), fusion_allowed(b, a));
            }
        }
    }

    #[test]
    fn zero_is_absorbing_on_eigenvalue_sets() {
        // M_0 M_α ⊂ M_α for every α: the property behind the Seress condition.
        for a in [Zero, Xi, Eta] {
            assert_eq!(fusion_allowed(Zero, a), &[a]);
        }
    }
}
