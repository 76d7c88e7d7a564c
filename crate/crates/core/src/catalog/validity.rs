// SPDX-License-Identifier: Apache-2.0
//! Parameter validity: excluded sets, characteristic conditions and branch constraints.

use serde::Serialize;

use crate::axial::FusionParams;
use crate::field::{Field, Scalar};

use super::{families, quotient_parent, FamilyId, FamilyParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Validity {
    Valid,
    Invalid(Vec<String>),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

struct Check {
    f: Field,
    reasons: Vec<String>,
}

impl Check {
    fn new(f: Field) -> Check {
        Check { f, reasons: Vec::new() }
    }

    fn ok(&self) -> bool {
        self.reasons.is_empty()
    }

    fn fail(&mut self, why: String) {
        self.reasons.push(why);
    }

    /// Rejects x when it equals one of the fractions n/d; fractions undefined in the field are skipped.
    fn exclude(&mut self, name: &str, x: &Scalar, set: &[(i64, i64)]) {
        let hit = set.iter().any(|&(n, d)| self.f.frac(n, d).map(|v| &v == x).unwrap_or(false));
        if hit {
            let list: Vec<String> = set.iter().map(|&(n, d)| if d == 1 { n.to_string() } else { format!("{n}/{d}") }).collect();
            self.fail(format!("{name} ∈ excluded set {{{}}}", list.join(", ")));
        }
    }

    /// Rejects when a polynomial condition on the parameter holds.
    fn exclude_if(&mut self, name: &str, holds: bool, what: &str) {
        if holds {
            self.fail(format!("{name} ∈ excluded set ({what})"));
        }
    }

    fn char_not(&mut self, ps: &[u64]) {
        let ch = self.f.characteristic();
        if ps.contains(&ch) {
            let list: Vec<String> = ps.iter().map(u64::to_string).collect();
            self.fail(format!("requires ch𝔽 ≠ {}", list.join(", ")));
        }
    }

    fn char_is(&mut self, p: u64) {
        if self.f.characteristic() != p {
            self.fail(format!("requires ch𝔽 = {p}"));
        }
    }

    fn fusion(&mut self, xi: &Scalar, eta: &Scalar) {
        if let Err(e) = FusionParams::new(xi.clone(), eta.clone()) {
            self.fail(format!("fusion parameters: {e}"));
        }
    }

    fn eq(&self, x: &Scalar, n: i64, d: i64) -> bool {
        self.f.frac(n, d).map(|v| &v == x).unwrap_or(false)
    }
}

/// Fills parameters the family determines from the ones given: μ of IV2 from its branch.
pub fn complete_params(family: FamilyId, p: &FamilyParams, f: Field) -> FamilyParams {
    let mut p = p.clone();
    if family == FamilyId::IV2 && p.mu.is_none() {
        if let (Some(xi), Some(eta)) = (&p.xi, &p.eta) {
            let half = f.frac(1, 2).ok();
            let mu = if Some(xi) == half.as_ref() {
                (-(eta * 4) + 1).try_div(&(eta * 2)).ok()
            } else if eta == &(xi.square() / 2) {
                xi.inv().ok()
            } else if eta == &((-xi.square() + 1) / 2) {
                f.int(-1).try_div(&(xi + 1)).ok()
            } else {
                None
            };
            p.mu = mu;
        }
    }
    p
}

fn param_presence(family: FamilyId, p: &FamilyParams, f: Field, c: &mut Check) {
    let needs = family.info().needs;
    let optional_xi = family == FamilyId::VI2x_b;
    for (name, want, have) in [
        ("xi", needs.xi, p.xi.is_some()),
        ("eta", needs.eta, p.eta.is_some()),
        ("alpha", needs.alpha, p.alpha.is_some()),
        ("mu", needs.mu, p.mu.is_some()),
        ("n", needs.n, p.n.is_some()),
    ] {
        if want && !have && !(optional_xi && name == "xi") {
            c.fail(format!("missing parameter {name}"));
        }
        if have && !want {
            c.fail(format!("{family} takes no parameter {name}"));
        }
    }
    for (name, v) in p.scalars() {
        if v.field() != f {
            c.fail(format!("parameter {name} = {v} lies in {} rather than {f}", v.field()));
        }
    }
}

fn iii(c: &mut Check, xi: &Scalar, eta: &Scalar, alpha: &Scalar) {
    c.exclude("ξ", xi, &[(0, 1), (1, 1), (1, 2)]);
    if c.eq(eta, 1, 2) {
        c.fusion(xi, eta);
        return;
    }
    if !alpha.is_zero() {
        c.fail("α ≠ 0 requires η = 1/2".into());
    }
    c.exclude_if("η", eta.is_zero() || eta.is_one() || eta == xi, "η ∈ {0, 1, ξ}");
    c.fusion(xi, eta);
}

fn iv1(c: &mut Check, xi: &Scalar, eta: &Scalar) {
    let branch_i = c.eq(xi, 1, 4);
    let branch_ii = eta == &(xi / 2);
    if !branch_i && !branch_ii {
        c.fail("(ξ, η) lies on neither branch ξ = 1/4 nor η = ξ/2".into());
        return;
    }
    let mut ci = Check::new(c.f);
    ci.char_not(&[3]);
    ci.exclude("η", eta, &[(0, 1), (1, 1), (1, 4)]);
    ci.fusion(xi, eta);
    let mut cii = Check::new(c.f);
    cii.exclude("ξ", xi, &[(0, 1), (1, 1), (2, 1)]);
    cii.fusion(xi, eta);
    if (branch_i && ci.ok()) || (branch_ii && cii.ok()) {
        return;
    }
    if branch_i {
        c.reasons.extend(ci.reasons);
    }
    if branch_ii {
        c.reasons.extend(cii.reasons);
    }
}

fn iv2(c: &mut Check, xi: &Scalar, eta: &Scalar, mu: &Scalar) {
    let f = c.f;
    let mut any = false;
    let mut collected = Vec::new();
    // (i) ξ = 1/2, μ = (1 − 4η)/(2η)
    if c.eq(xi, 1, 2) {
        let mut b = Check::new(f);
        b.exclude("η", eta, &[(0, 1), (1, 1), (1, 2), (1, 4)]);
        if b.ok() && Some(mu.clone()) != (-(eta * 4) + 1).try_div(&(eta * 2)).ok() {
            b.fail("μ ≠ (1 − 4η)/(2η)".into());
        }
        b.fusion(xi, eta);
        any = true;
        if b.ok() {
            return;
        }
        collected.extend(b.reasons);
    }
    // (ii) η = ξ²/2, μ = 1/ξ
    if eta == &(xi.square() / 2) {
        let mut b = Check::new(f);
        b.exclude("ξ", xi, &[(0, 1), (1, 1), (2, 1)]);
        b.exclude_if("ξ", xi.square() == f.int(2), "ξ² = 2");
        if b.ok() && Some(mu.clone()) != xi.inv().ok() {
            b.fail("μ ≠ 1/ξ".into());
        }
        b.fusion(xi, eta);
        any = true;
        if b.ok() {
            return;
        }
        collected.extend(b.reasons);
    }
    // (iii) η = (1 − ξ²)/2, μ = −1/(ξ + 1)
    if eta == &((-xi.square() + 1) / 2) {
        let mut b = Check::new(f);
        b.exclude("ξ", xi, &[(0, 1), (1, 1), (-1, 1)]);
        b.exclude_if("ξ", xi.square() == f.int(-1), "ξ² = −1");
        b.exclude_if("ξ", (xi.square() + xi * 2 - 1).is_zero(), "ξ² + 2ξ − 1 = 0");
        if b.ok() && Some(mu.clone()) != f.int(-1).try_div(&(xi + 1)).ok() {
            b.fail("μ ≠ −1/(ξ + 1)".into());
        }
        b.fusion(xi, eta);
        any = true;
        if b.ok() {
            return;
        }
        collected.extend(b.reasons);
    }
    if !any {
        c.fail("(ξ, η) lies on none of the branches ξ = 1/2, η = ξ²/2, η = (1 − ξ²)/2".into());
    }
    c.reasons.extend(collected);
}

fn universal(c: &mut Check, family: FamilyId, p: &FamilyParams) {
    let f = c.f;
    let get = |v: &Option<Scalar>| v.clone().expect("presence checked");
    match family {
        FamilyId::III => iii(c, &get(&p.xi), &get(&p.eta), &get(&p.alpha)),
        FamilyId::IV1 => iv1(c, &get(&p.xi), &get(&p.eta)),
        FamilyId::IV2 => iv2(c, &get(&p.xi), &get(&p.eta), &get(&p.mu)),
        FamilyId::IV3 => c.char_not(&[3]),
        FamilyId::V1 => {
            let xi = get(&p.xi);
            c.exclude("ξ", &xi, &[(0, 1), (1, 1), (-1, 3), (1, 5), (9, 5)]);
            c.fusion(&xi, &families::eta_v1(&xi));
        }
        FamilyId::V2 => {
            let xi = get(&p.xi);
            c.exclude("ξ", &xi, &[(0, 1), (1, 1), (1, 2)]);
            if let Ok(h) = f.frac(1, 2) {
                c.fusion(&xi, &h);
            }
        }
        FamilyId::VI1 => {
            let xi = get(&p.xi);
            c.exclude("ξ", &xi, &[(0, 1), (1, 1), (2, 1)]);
            c.fusion(&xi, &(&xi / 2));
        }
        FamilyId::VI2 => {
            let xi = get(&p.xi);
            c.exclude("ξ", &xi, &[(0, 1), (1, 1), (1, 2), (4, 9), (2, 5)]);
            c.exclude_if("ξ", (&xi + 4).square() == f.int(20), "(ξ + 4)² = 20");
            if let Ok(eta) = families::eta_vi2(&xi) {
                c.fusion(&xi, &eta);
            }
        }
        FamilyId::Z => {
            if p.n == Some(0) {
                c.fail("n ≥ 1 required".into());
            }
        }
        _ => unreachable!("quotients are checked through their parent"),
    }
}

/// Whether construct may be called with these parameters, with reasons when not.
pub fn validity(family: FamilyId, p: &FamilyParams, f: Field) -> Validity {
    let mut c = Check::new(f);
    if f.characteristic() == 2 {
        c.fail("requires ch𝔽 ≠ 2".into());
    }
    param_presence(family, p, f, &mut c);
    if !c.ok() {
        return Validity::Invalid(c.reasons);
    }
    use FamilyId::*;
    match family {
        IIIx => {
            let xi = p.xi.clone().expect("present");
            c.exclude("ξ", &xi, &[(0, 1), (1, 1), (1, 2), (1, 3), (-1, 3)]);
            c.exclude_if("ξ", xi.square() * 3 == f.one(), "3ξ² = 1");
            c.exclude_if("ξ", (xi.square() * 3 + &xi * 3 - 2).is_zero(), "3ξ² + 3ξ − 2 = 0");
        }
        IIIx_m1 | IV1x_a | IV2x | IV3x | VI2x_a => c.char_not(&[3]),
        IIIx_half | V2x => {
            let xi = p.xi.clone().expect("present");
            c.exclude("ξ", &xi, &[(0, 1), (1, 1), (1, 2)]);
        }
        IV1x_b => c.char_not(&[3, 5]),
        VI1x => c.char_not(&[7]),
        VI2x_b => {
            c.char_not(&[3, 11]);
            match &p.xi {
                Some(xi) => c.exclude_if("ξ", !(xi.square() * 12 - xi - 2).is_zero(), "ξ is not a root of 12ξ² − ξ − 2"),
                None if f.sqrt_int(97).is_none() => c.fail(format!("requires √97 ∈ {f}")),
                None => {}
            }
        }
        VI2x_c => c.char_is(11),
        _ => {}
    }
    if !c.ok() {
        return Validity::Invalid(c.reasons);
    }
    match quotient_parent(family, p, f) {
        Ok(Some((pf, pp))) => {
            if let Validity::Invalid(r) = validity(pf, &pp, f) {
                c.reasons.extend(r.into_iter().map(|r| format!("parent {pf}{pp}: {r}")));
            }
        }
        Ok(None) => universal(&mut c, family, p),
        Err(e) => c.fail(e.to_string()),
    }
    if c.ok() {
        Validity::Valid
    } else {
        Validity::Invalid(c.reasons)
    }
}
