// SPDX-License-Identifier: Apache-2.0
//! Identification of an algebra with a flip against the classification table.

use serde::Serialize;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::axial::{axial_dimension, check_axis, isomorphism_from_generators, lambda, Eigen, FusionParams, Parity};
use crate::catalog::{construct, validity, CatalogInstance, FamilyId, FamilyParams};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{axpy, vadd};
use crate::verify::sequence_for;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub eta_is_half: bool,
    pub xi_is_2eta: bool,
    pub xi_is_4eta: bool,
    pub xi_eigenspace_zero: bool,
    pub eta_eigenspace_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub xi: Scalar,
    pub eta: Scalar,
    pub char: u64,
    pub d: usize,
    #[serde(rename = "D")]
    pub axial_dim: usize,
    pub parity: Parity,
    pub relation: Vec<Scalar>,
    pub lambda1: Scalar,
    pub lambda2: Option<Scalar>,
    pub eta_eigendim: usize,
    pub xi_eigendim: usize,
    /// μ with a₀a₂ = −μ(2p₁ + η(a₁ + a₋₁)), when a₀a₂ has that form.
    pub mu: Option<Scalar>,
    pub flags: Flags,
}

impl Invariants {
    pub fn is_jordan(&self) -> bool {
        self.flags.xi_eigenspace_zero || self.flags.eta_eigenspace_zero
    }
}

pub fn extract_invariants(alg: &Algebra, a0: &Element, a1: &Element, params: &FusionParams) -> Result<Invariants> {
    for a in [a0, a1] {
        let rep = check_axis(alg, a, params);
        if let Some(e) = rep.error {
            return Err(e);
        }
        if !rep.fusion_ok {
            let w = &rep.fusion_failures[0];
            return Err(Error::InvalidFusionParams(format!(
                "fusion rule fails for {} ⋆ {}",
                w.alpha.label(),
                w.beta.label()
            )));
        }
    }
    let seq = sequence_for(alg, a0, a1, params, alg.dim() / 2 + 2)?;
    let (axial_dim, rel) = axial_dimension(&seq)?;
    let (xi, eta) = (params.xi.clone(), params.eta.clone());
    let f = xi.field();
    let dims = seq.dec0.dims();
    let lambda2 = if axial_dim >= 3 { Some(lambda(&seq, 2)?) } else { None };
    // p₁ = a₀a₁ − η(a₀ + a₁) and w = 2p₁ + η(a₁ + a₋₁)
    let (am, a1s, a2) = (seq.a(-1)?, seq.a(1)?, seq.a(2)?);
    let mut p1 = alg.mul(a0, a1s);
    axpy(&mut p1, &(-&eta), &vadd(a0, a1s));
    let mut w: Element = p1.iter().map(|x| x * 2).collect();
    axpy(&mut w, &eta, &vadd(a1s, am));
    let mu = proportional(&alg.mul(a0, a2), &w).map(|c| -c);
    Ok(Invariants {
        flags: Flags {
            eta_is_half: eta == f.frac(1, 2)?,
            xi_is_2eta: xi == &eta * 2,
            xi_is_4eta: xi == &eta * 4,
            xi_eigenspace_zero: dims[Eigen::Xi as usize] == 0,
            eta_eigenspace_zero: dims[Eigen::Eta as usize] == 0,
        },
        lambda1: lambda(&seq, 1)?,
        lambda2,
        eta_eigendim: dims[Eigen::Eta as usize],
        xi_eigendim: dims[Eigen::Xi as usize],
        char: f.characteristic(),
        d: alg.dim(),
        axial_dim,
        parity: rel.parity,
        relation: rel.coefficients,
        mu,
        xi,
        eta,
    })
}

/// c with v = c·w, when w ≠ 0 and v is a multiple of w.
fn proportional(v: &[Scalar], w: &[Scalar]) -> Option<Scalar> {
    let k = w.iter().position(|x| !x.is_zero())?;
    let c = v[k].try_div(&w[k]).ok()?;
    v.iter().zip(w).all(|(a, b)| a == &(&c * b)).then_some(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    JordanType { dim: usize, eta: Scalar },
    ZQuotient,
    Family(FamilyId, FamilyParams),
    Unknown(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct ClassificationMatch {
    pub verdict: Verdict,
    /// Verified isomorphism onto the canonical instance.
    pub iso: Option<LinearMap>,
    pub canonical: Option<CatalogInstance>,
}

/// The isomorphism a₀ ↦ â₀, a₁ ↦ â₁ onto a catalog instance, when the axes determine one.
pub fn isomorphism_to_canonical(alg: &Algebra, a0: &Element, a1: &Element, target: &CatalogInstance) -> Result<LinearMap> {
    isomorphism_from_generators(alg, &[a0.clone(), a1.clone()], &target.algebra, &[target.a0(), target.a1()])
}

/// Parameters a family would need to match the invariants.
fn candidate_params(fam: FamilyId, inv: &Invariants) -> Option<FamilyParams> {
    let needs = fam.info().needs;
    let alpha = (inv.axial_dim == 3 && inv.parity == Parity::Odd).then(|| inv.relation[0].clone());
    let mut p = FamilyParams::none();
    if needs.xi || fam == FamilyId::VI2x_b {
        p.xi = Some(inv.xi.clone());
    }
    if needs.eta {
        p.eta = Some(inv.eta.clone());
    }
    if needs.alpha {
        p.alpha = Some(alpha?);
    }
    if needs.mu {
        p.mu = Some(inv.mu.clone()?);
    }
    Some(p)
}

pub fn identify(inv: &Invariants, alg: &Algebra, a0: &Element, a1: &Element) -> ClassificationMatch {
    let none = |verdict| ClassificationMatch { verdict, iso: None, canonical: None };
    if inv.is_jordan() {
        return none(Verdict::JordanType { dim: inv.d, eta: inv.eta.clone() });
    }
    let f = inv.xi.field();
    let z_point = f.frac(1, 2).map(|h| inv.xi == f.int(2) && inv.eta == h && inv.lambda1.is_one()).unwrap_or(false);
    if z_point {
        // The periodic quotients of dimension d, when one matches, supply the isomorphism.
        for n in 1..=inv.d as u64 {
            if 3 * n + 3 != inv.d as u64 {
                continue;
            }
            if let Ok(t) = construct(FamilyId::Z, &FamilyParams::n(n), f) {
                if let Ok(iso) = isomorphism_to_canonical(alg, a0, a1, &t) {
                    return ClassificationMatch { verdict: Verdict::ZQuotient, iso: Some(iso), canonical: Some(t) };
                }
            }
        }
        return none(Verdict::ZQuotient);
    }
    if inv.char == 5 && inv.axial_dim >= 6 {
        return none(Verdict::Unknown(vec!["outside the classified range: characteristic 5 with D ≥ 6".into()]));
    }
    let mut diag = Vec::new();
    let rows: Vec<FamilyId> = FamilyId::ALL
        .into_iter()
        .filter(|fam| fam.info().dims.map(|(dd, d)| dd == inv.axial_dim && d == inv.d).unwrap_or(false))
        .collect();
    if rows.is_empty() {
        diag.push(format!("no table row has (D, d) = ({}, {})", inv.axial_dim, inv.d));
    }
    for fam in rows {
        let Some(p) = candidate_params(fam, inv) else {
            diag.push(format!("{fam}: parameters not recoverable from the invariants"));
            continue;
        };
        if let crate::catalog::Validity::Invalid(r) = validity(fam, &p, f) {
            diag.push(format!("{fam}{p}: {}", r.join("; ")));
            continue;
        }
        let target = match construct(fam, &p, f) {
            Ok(t) => t,
            Err(e) => {
                diag.push(format!("{fam}{p}: {e}"));
                continue;
            }
        };
        if target.params.eta != inv.eta || target.params.xi != inv.xi {
            diag.push(format!("{fam}{p}: fusion parameters ({}, {}) differ", target.params.xi, target.params.eta));
            continue;
        }
        match isomorphism_to_canonical(alg, a0, a1, &target) {
            Ok(iso) => {
                return ClassificationMatch { verdict: Verdict::Family(fam, p), iso: Some(iso), canonical: Some(target) };
            }
            Err(e) => diag.push(format!("{fam}{p}: {e}")),
        }
    }
    none(Verdict::Unknown(diag))
}

/// Invariants and identification in one step.
pub fn classify(alg: &Algebra, a0: &Element, a1: &Element, params: &FusionParams) -> Result<(Invariants, ClassificationMatch)> {
    let inv = extract_invariants(alg, a0, a1, params)?;
    let m = identify(&inv, alg, a0, a1);
    Ok((inv, m))
}
