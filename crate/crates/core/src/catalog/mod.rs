// SPDX-License-Identifier: Apache-2.0
//! The algebras of the classification table, their validity rules and the windows of Z(2, ½).

mod builder;
pub mod families;
mod validity;
mod zwindow;

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::{Algebra, LinearMap};
use crate::axial::FusionParams;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Vector;

pub use builder::{Expansion, TableBuilder};
pub use validity::{complete_params, validity, Validity};
pub use zwindow::{z_window, ZGen, ZProduct, ZWindow};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    III,
    IV1,
    IV2,
    IV3,
    V1,
    V2,
    VI1,
    VI2,
    Z,
    IIIx,
    IIIx_half,
    IIIx_m1,
    IV1x_a,
    IV1x_b,
    IV2x,
    IV3x,
    V2x,
    VI1x,
    VI2x_a,
    VI2x_b,
    VI2x_c,
}

/// Which parameters a family takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Needs {
    pub xi: bool,
    pub eta: bool,
    pub alpha: bool,
    pub mu: bool,
    pub n: bool,
}

const NONE: Needs = Needs { xi: false, eta: false, alpha: false, mu: false, n: false };

/// A row of the classification table.
#[derive(Clone, Debug)]
pub struct FamilyInfo {
    pub id: FamilyId,
    pub display: &'static str,
    pub needs: Needs,
    /// (axial dimension, dimension); None for Z.
    pub dims: Option<(usize, usize)>,
    pub parent: Option<FamilyId>,
    pub rule: &'static str,
}

impl FamilyId {
    pub const ALL: [FamilyId; 21] = [
        FamilyId::III,
        FamilyId::IV1,
        FamilyId::IV2,
        FamilyId::IV3,
        FamilyId::V1,
        FamilyId::V2,
        FamilyId::VI1,
        FamilyId::VI2,
        FamilyId::Z,
        FamilyId::IIIx,
        FamilyId::IIIx_half,
        FamilyId::IIIx_m1,
        FamilyId::IV1x_a,
        FamilyId::IV1x_b,
        FamilyId::IV2x,
        FamilyId::IV3x,
        FamilyId::V2x,
        FamilyId::VI1x,
        FamilyId::VI2x_a,
        FamilyId::VI2x_b,
        FamilyId::VI2x_c,
    ];

    /// The universal families of the table (Z excluded).
    pub const UNIVERSAL: [FamilyId; 8] =
        [FamilyId::III, FamilyId::IV1, FamilyId::IV2, FamilyId::IV3, FamilyId::V1, FamilyId::V2, FamilyId::VI1, FamilyId::VI2];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::III => "III",
            FamilyId::IV1 => "IV1",
            FamilyId::IV2 => "IV2",
            FamilyId::IV3 => "IV3",
            FamilyId::V1 => "V1",
            FamilyId::V2 => "V2",
            FamilyId::VI1 => "VI1",
            FamilyId::VI2 => "VI2",
            FamilyId::Z => "Z",
            FamilyId::IIIx => "IIIx",
            FamilyId::IIIx_half => "IIIx_half",
            FamilyId::IIIx_m1 => "IIIx_m1",
            FamilyId::IV1x_a => "IV1x_a",
            FamilyId::IV1x_b => "IV1x_b",
            FamilyId::IV2x => "IV2x",
            FamilyId::IV3x => "IV3x",
            FamilyId::V2x => "V2x",
            FamilyId::VI1x => "VI1x",
            FamilyId::VI2x_a => "VI2x_a",
            FamilyId::VI2x_b => "VI2x_b",
            FamilyId::VI2x_c => "VI2x_c",
        }
    }

    pub fn is_quotient(self) -> bool {
        self.info().parent.is_some()
    }

    pub fn info(self) -> FamilyInfo {
        use FamilyId::*;
        let x = Needs { xi: true, ..NONE };
        let (display, needs, dims, parent, rule) = match self {
            III => (
                "III(ξ, η, α)",
                Needs { xi: true, eta: true, alpha: true, ..NONE },
                Some((3, 4)),
                None,
                "α = 0 with ξ ∉ {0, 1, 1/2}, η ∉ {0, 1, ξ}; or η = 1/2 with ξ ∉ {0, 1, 1/2}",
            ),
            IV1 => (
                "IV1(ξ, η)",
                Needs { xi: true, eta: true, ..NONE },
                Some((4, 5)),
                None,
                "ξ = 1/4 with η ∉ {0, 1, 1/4} and ch ≠ 3; or η = ξ/2 with ξ ∉ {0, 1, 2}",
            ),
            IV2 => (
                "IV2(ξ, η, μ)",
                Needs { xi: true, eta: true, mu: true, ..NONE },
                Some((4, 5)),
                None,
                "(1/2, η, (1−4η)/(2η)) with η ∉ {0, 1, 1/2, 1/4}; (ξ, ξ²/2, 1/ξ) with ξ ∉ {0, 1, 2}, ξ² ≠ 2; \
                 (ξ, (1−ξ²)/2, −1/(ξ+1)) with ξ ∉ {0, ±1}, ξ² ≠ −1, ξ² + 2ξ − 1 ≠ 0",
            ),
            IV3 => ("IV3(1/2, 2)", NONE, Some((4, 5)), None, "ch ≠ 3"),
            V1 => ("V1(ξ, (5ξ−1)/8)", x, Some((5, 6)), None, "ξ ∉ {0, 1, −1/3, 1/5, 9/5}"),
            V2 => ("V2(ξ, 1/2)", x, Some((5, 6)), None, "ξ ∉ {0, 1, 1/2}"),
            VI1 => ("VI1(ξ, ξ/2)", x, Some((6, 8)), None, "ξ ∉ {0, 1, 2}"),
            VI2 => (
                "VI2(ξ, −ξ²/(4(2ξ−1)))",
                x,
                Some((6, 8)),
                None,
                "ξ ∉ {0, 1, 1/2, 4/9, 2/5}, (ξ + 4)² ≠ 20",
            ),
            Z => ("Z(2, 1/2) with a_{i+2n+2} = a_i", Needs { n: true, ..NONE }, None, None, "n ≥ 1"),
            IIIx => (
                "III(ξ, (1−3ξ²)/(3ξ−1), 0)^×",
                x,
                Some((3, 3)),
                Some(III),
                "ξ ∉ {0, 1, 1/2, ±1/3}, 3ξ² ≠ 1, 3ξ² + 3ξ − 2 ≠ 0",
            ),
            IIIx_m1 => ("III(−1, 1/2, α)^×", Needs { alpha: true, ..NONE }, Some((3, 3)), Some(III), "ch ≠ 3"),
            IIIx_half => ("III(ξ, 1/2, −3)^×", x, Some((3, 3)), Some(III), "ξ ∉ {0, 1, 1/2}"),
            IV1x_a => ("IV1(1/4, 1/2)^×", NONE, Some((4, 4)), Some(IV1), "ch ≠ 3"),
            IV1x_b => ("IV1(−1/2, −1/4)^×", NONE, Some((4, 4)), Some(IV1), "ch ≠ 3, 5"),
            IV2x => ("IV2(−1, 1/2, −1)^×", NONE, Some((4, 4)), Some(IV2), "ch ≠ 3"),
            IV3x => ("IV3(1/2, 2)^×", NONE, Some((4, 4)), Some(IV3), "ch ≠ 3"),
            V2x => ("V2(ξ)^×", x, Some((4, 5)), Some(V2), "ξ ∉ {0, 1, 1/2}"),
            VI1x => ("VI1(−2/7, −1/7)^×", NONE, Some((6, 7)), Some(VI1), "ch ≠ 7"),
            VI2x_a => ("VI2(2/3, −1/3)^×", NONE, Some((6, 7)), Some(VI2), "ch ≠ 3"),
            VI2x_b => (
                "VI2((1±√97)/24)^×",
                x,
                Some((6, 7)),
                Some(VI2),
                "ch ≠ 3, 11 and √97 ∈ 𝔽; ξ optional, a root of 12ξ² − ξ − 2",
            ),
            VI2x_c => ("VI2(2, 7)^×", NONE, Some((6, 7)), Some(VI2), "ch = 11"),
        };
        FamilyInfo { id: self, display, needs, dims, parent, rule }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<FamilyId> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Family parameters; exactly those the family takes are set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub xi: Option<Scalar>,
    pub eta: Option<Scalar>,
    pub alpha: Option<Scalar>,
    pub mu: Option<Scalar>,
    pub n: Option<u64>,
}

impl FamilyParams {
    pub fn none() -> FamilyParams {
        FamilyParams::default()
    }
    pub fn xi(xi: Scalar) -> FamilyParams {
        FamilyParams { xi: Some(xi), ..Default::default() }
    }
    pub fn xi_eta(xi: Scalar, eta: Scalar) -> FamilyParams {
        FamilyParams { xi: Some(xi), eta: Some(eta), ..Default::default() }
    }
    pub fn iii(xi: Scalar, eta: Scalar, alpha: Scalar) -> FamilyParams {
        FamilyParams { xi: Some(xi), eta: Some(eta), alpha: Some(alpha), ..Default::default() }
    }
    pub fn iv2(xi: Scalar, eta: Scalar, mu: Scalar) -> FamilyParams {
        FamilyParams { xi: Some(xi), eta: Some(eta), mu: Some(mu), ..Default::default() }
    }
    pub fn alpha(alpha: Scalar) -> FamilyParams {
        FamilyParams { alpha: Some(alpha), ..Default::default() }
    }
    pub fn n(n: u64) -> FamilyParams {
        FamilyParams { n: Some(n), ..Default::default() }
    }

    pub fn scalars(&self) -> Vec<(&'static str, &Scalar)> {
        [("xi", &self.xi), ("eta", &self.eta), ("alpha", &self.alpha), ("mu", &self.mu)]
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
            .collect()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.scalars().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sc = self.scalars();
        let mut m = s.serialize_map(Some(sc.len() + self.n.is_some() as usize))?;
        for (k, v) in sc {
            m.serialize_entry(k, &v.to_string())?;
        }
        if let Some(n) = self.n {
            m.serialize_entry("n", &n)?;
        }
        m.end()
    }
}

/// A constructed algebra with its generating axes.
#[derive(Clone, Debug)]
pub struct CatalogInstance {
    pub algebra: Algebra,
    pub axes: (usize, usize),
    pub params: FusionParams,
    pub family: FamilyId,
    pub family_params: FamilyParams,
}

impl CatalogInstance {
    pub fn a0(&self) -> Vector {
        self.algebra.basis(self.axes.0)
    }
    pub fn a1(&self) -> Vector {
        self.algebra.basis(self.axes.1)
    }
}

/// Validates and builds a catalog algebra.
pub fn construct(family: FamilyId, params: &FamilyParams, field: Field) -> Result<CatalogInstance> {
    let params = complete_params(family, params, field);
    match validity(family, &params, field) {
        Validity::Valid => construct_unchecked(family, &params, field),
        Validity::Invalid(r) => Err(Error::InvalidParams(r)),
    }
}

fn need(v: &Option<Scalar>, name: &str, field: Field) -> Result<Scalar> {
    let v = v.clone().ok_or_else(|| Error::InvalidParams(vec![format!("missing parameter {name}")]))?;
    if v.field() != field {
        return Err(Error::FieldMismatch(v.field().to_string(), field.to_string()));
    }
    Ok(v)
}

fn fr(f: Field, n: i64, d: i64) -> Result<Scalar> {
    f.frac(n, d)
}

/// The parent family and parameters of a quotient.
pub fn quotient_parent(family: FamilyId, params: &FamilyParams, f: Field) -> Result<Option<(FamilyId, FamilyParams)>> {
    use FamilyId::*;
    let p = match family {
        IIIx => {
            let xi = need(&params.xi, "xi", f)?;
            let eta = (-(xi.square() * 3) + 1).try_div(&(&xi * 3 - 1))?;
            (III, FamilyParams::iii(xi, eta, f.zero()))
        }
        IIIx_m1 => (III, FamilyParams::iii(f.int(-1), fr(f, 1, 2)?, need(&params.alpha, "alpha", f)?)),
        IIIx_half => (III, FamilyParams::iii(need(&params.xi, "xi", f)?, fr(f, 1, 2)?, f.int(-3))),
        IV1x_a => (IV1, FamilyParams::xi_eta(fr(f, 1, 4)?, fr(f, 1, 2)?)),
        IV1x_b => (IV1, FamilyParams::xi_eta(fr(f, -1, 2)?, fr(f, -1, 4)?)),
        IV2x => (IV2, FamilyParams::iv2(f.int(-1), fr(f, 1, 2)?, f.int(-1))),
        IV3x => (IV3, FamilyParams::none()),
        V2x => (V2, FamilyParams::xi(need(&params.xi, "xi", f)?)),
        VI1x => (VI1, FamilyParams::xi(fr(f, -2, 7)?)),
        VI2x_a => (VI2, FamilyParams::xi(fr(f, 2, 3)?)),
        VI2x_b => (VI2, FamilyParams::xi(match &params.xi {
            Some(x) => x.clone(),
            None => vi2x_b_root(f)?,
        })),
        VI2x_c => (VI2, FamilyParams::xi(f.int(2))),
        _ => return Ok(None),
    };
    Ok(Some(p))
}

/// (1 + √97)/24.
pub fn vi2x_b_root(f: Field) -> Result<Scalar> {
    let r = f.sqrt_int(97).ok_or_else(|| Error::InvalidParams(vec![format!("requires √97 ∈ {f}")]))?;
    (r + 1).try_div(&f.int(24))
}

/// The kernel generator of a quotient family inside its parent.
fn quotient_kernel(family: FamilyId, parent: &Algebra) -> Result<Vector> {
    let f = parent.field();
    let idx = |n: &str| parent.index_of(n).ok_or_else(|| Error::IndexOutOfRange(n.into()));
    let mut v = parent.zero();
    match family {
        FamilyId::IV2x => {
            v[idx("p1")?] = f.one();
            for i in -1..=2 {
                v[idx(&format!("a{i}"))?] = f.frac(3, 8)?;
            }
        }
        FamilyId::V2x => v = families::v2_kernel(f, parent),
        _ => v[idx("q")?] = f.one(),
    }
    Ok(v)
}

/// Builds the algebra without consulting the validity rules.
pub fn construct_unchecked(family: FamilyId, params: &FamilyParams, f: Field) -> Result<CatalogInstance> {
    use FamilyId::*;
    if let Some((pf, pp)) = quotient_parent(family, params, f)? {
        let parent = construct_unchecked(pf, &pp, f)?;
        let k = quotient_kernel(family, &parent.algebra)?;
        let ideal = parent.algebra.ideal_closure(&[k]);
        if ideal.dim() != 1 {
            return Err(Error::Resolution(format!("the kernel of {family} generates an ideal of dimension {}", ideal.dim())));
        }
        let (alg, proj) = parent.algebra.quotient(&ideal)?;
        let axes = (image_index(&proj, parent.axes.0)?, image_index(&proj, parent.axes.1)?);
        return Ok(CatalogInstance { algebra: alg, axes, params: parent.params, family, family_params: params.clone() });
    }
    let (alg, fp) = match family {
        III => {
            let (xi, eta, al) = (need(&params.xi, "xi", f)?, need(&params.eta, "eta", f)?, need(&params.alpha, "alpha", f)?);
            (families::iii(f, &xi, &eta, &al)?, (xi, eta))
        }
        IV1 => {
            let (xi, eta) = (need(&params.xi, "xi", f)?, need(&params.eta, "eta", f)?);
            (families::iv1(f, &xi, &eta)?, (xi, eta))
        }
        IV2 => {
            let (xi, eta, mu) = (need(&params.xi, "xi", f)?, need(&params.eta, "eta", f)?, need(&params.mu, "mu", f)?);
            (families::iv2(f, &xi, &eta, &mu)?, (xi, eta))
        }
        IV3 => (families::iv3(f)?, (fr(f, 1, 2)?, f.int(2))),
        V1 => {
            let xi = need(&params.xi, "xi", f)?;
            (families::v1(f, &xi)?, (xi.clone(), families::eta_v1(&xi)))
        }
        V2 => {
            let xi = need(&params.xi, "xi", f)?;
            (families::v2(f, &xi)?, (xi, fr(f, 1, 2)?))
        }
        VI1 => {
            let xi = need(&params.xi, "xi", f)?;
            (families::vi1(f, &xi)?, (xi.clone(), &xi / 2))
        }
        VI2 => {
            let xi = need(&params.xi, "xi", f)?;
            (families::vi2(f, &xi)?, (xi.clone(), families::eta_vi2(&xi)?))
        }
        Z => {
            let n = params.n.ok_or_else(|| Error::InvalidParams(vec!["missing parameter n".into()]))?;
            (families::z_periodic(f, 2 * n as i64 + 2)?, (f.int(2), fr(f, 1, 2)?))
        }
        _ => unreachable!("quotients handled above"),
    };
    let axes = (alg.index_of("a0").expect("a0"), alg.index_of("a1").expect("a1"));
    let params_fusion = FusionParams::new(fp.0, fp.1)?;
    Ok(CatalogInstance { algebra: alg, axes, params: params_fusion, family, family_params: params.clone() })
}

fn image_index(proj: &LinearMap, k: usize) -> Result<usize> {
    let col = proj.col(k);
    let nz: Vec<usize> = (0..col.len()).filter(|&r| !col[r].is_zero()).collect();
    match nz.as_slice() {
        [r] if col[*r].is_one() => Ok(*r),
        _ => Err(Error::Resolution("an axis lies in the kernel's pivot support".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NortonSakuma {
    #[serde(rename = "3A")]
    A3,
    #[serde(rename = "4A")]
    A4,
    #[serde(rename = "4B")]
    B4,
    #[serde(rename = "5A")]
    A5,
    #[serde(rename = "6A")]
    A6,
}

impl NortonSakuma {
    pub const ALL: [NortonSakuma; 5] = [NortonSakuma::A3, NortonSakuma::A4, NortonSakuma::B4, NortonSakuma::A5, NortonSakuma::A6];

    pub fn label(self) -> &'static str {
        match self {
            NortonSakuma::A3 => "3A",
            NortonSakuma::A4 => "4A",
            NortonSakuma::B4 => "4B",
            NortonSakuma::A5 => "5A",
            NortonSakuma::A6 => "6A",
        }
    }

    /// The family and parameters of the specialization at ξ = 1/4, η = 1/32.
    pub fn family(self) -> (FamilyId, FamilyParams) {
        let q = Field::Rationals;
        let r = |n, d| q.frac(n, d).expect("nonzero denominator");
        match self {
            NortonSakuma::A3 => (FamilyId::III, FamilyParams::iii(r(1, 4), r(1, 32), q.zero())),
            NortonSakuma::A4 => (FamilyId::IV1, FamilyParams::xi_eta(r(1, 4), r(1, 32))),
            NortonSakuma::B4 => (FamilyId::IV2, FamilyParams::iv2(r(1, 4), r(1, 32), q.int(4))),
            NortonSakuma::A5 => (FamilyId::V1, FamilyParams::xi(r(1, 4))),
            NortonSakuma::A6 => (FamilyId::VI2, FamilyParams::xi(r(1, 4))),
        }
    }
}

impl FromStr for NortonSakuma {
    type Err = Error;
    fn from_str(s: &str) -> Result<NortonSakuma> {
        NortonSakuma::ALL
            .into_iter()
            .find(|l| l.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown Norton-Sakuma label {s:?}")))
    }
}

pub fn norton_sakuma(label: NortonSakuma) -> CatalogInstance {
    let (fam, p) = label.family();
    construct(fam, &p, Field::Rationals).expect("Norton-Sakuma points are valid")
}
