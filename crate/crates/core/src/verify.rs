// SPDX-License-Identifier: Apache-2.0
//! One-call verification of an algebra with a pair of axes.

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::axial::{
    axial_dimension, axis_orbit, check_axis, derived_elements, eq1_check, find_flip, miyamoto_group_order, seress_check,
    AxisReport, AxisSequence, Eigen, FusionParams, GroupOrder, Parity,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::vscale;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Stop after the two axis checks.
    pub axis_only: bool,
    pub seress: bool,
    /// Bound w for the identities: |i| ≤ w and 0 ≤ i, j ≤ w.
    pub window: usize,
    pub group_limit: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { axis_only: false, seress: true, window: 3, group_limit: 64 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub alpha: Eigen,
    pub beta: Eigen,
    pub witness: (usize, usize),
    pub offending: Eigen,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxisSummary {
    pub axis: String,
    pub idempotent: bool,
    pub semisimple: bool,
    pub primitive: bool,
    pub fusion_ok: bool,
    /// Eigenspace dimensions for 1, 0, ξ, η.
    pub dims: Option<[usize; 4]>,
    pub failures: Vec<FailureRecord>,
    pub error: Option<String>,
}

impl AxisSummary {
    pub fn passed(&self) -> bool {
        self.fusion_ok && self.error.is_none()
    }

    fn from_report(axis: &str, r: &AxisReport) -> AxisSummary {
        AxisSummary {
            axis: axis.into(),
            idempotent: r.idempotent,
            semisimple: r.semisimple,
            primitive: r.primitive,
            fusion_ok: r.fusion_ok,
            dims: r.dims(),
            failures: r
                .fusion_failures
                .iter()
                .map(|f| FailureRecord { alpha: f.alpha, beta: f.beta, witness: f.witness, offending: f.offending })
                .collect(),
            error: r.error.as_ref().map(|e| e.to_string()),
        }
    }
}

/// Results of the identities on derived elements.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub window: usize,
    /// Indices i with z_i a₀ ≠ 0.
    pub z_failures: Vec<i64>,
    /// Indices i with x_i a₀ ≠ ξ x_i.
    pub x_failures: Vec<i64>,
    /// Indices i with y_i a₀ ≠ η y_i.
    pub y_failures: Vec<i64>,
    /// Pairs (i, j) where the a_j p_{i,j} identity fails.
    pub eq1_failures: Vec<(i64, i64)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.z_failures.is_empty() && self.x_failures.is_empty() && self.y_failures.is_empty() && self.eq1_failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub params: FusionParams,
    pub dim: usize,
    pub axes: [AxisSummary; 2],
    pub flip: Option<bool>,
    pub flip_error: Option<String>,
    pub axial_dimension: Option<usize>,
    pub parity: Option<Parity>,
    pub relation: Option<Vec<Scalar>>,
    pub group_order: Option<GroupOrder>,
    pub identities: Option<IdentityReport>,
    /// Some(false) when the Seress condition fails on either axis.
    pub seress: Option<bool>,
    pub error: Option<String>,
    pub passed: bool,
}

/// The axis sequence reaching a_{±(w+1)} and a_{2w}.
pub fn sequence_for(alg: &Algebra, a0: &[Scalar], a1: &[Scalar], params: &FusionParams, window: usize) -> Result<AxisSequence> {
    let theta = find_flip(alg, a0, a1)?;
    axis_orbit(alg, a0, a1, &theta, params, window)
}

pub fn check_identities(seq: &AxisSequence, w: usize) -> Result<IdentityReport> {
    let w = w as i64;
    let (xi, eta) = (&seq.params.xi, &seq.params.eta);
    let a0 = seq.a(0)?;
    let mut rep = IdentityReport { window: w as usize, ..Default::default() };
    for i in -w..=w {
        let d = derived_elements(seq, i, 0)?;
        if !crate::linalg::is_zero_vec(&seq.alg.mul(&d.z, a0)) {
            rep.z_failures.push(i);
        }
        if seq.alg.mul(&d.x, a0) != vscale(xi, &d.x) {
            rep.x_failures.push(i);
        }
        if seq.alg.mul(&d.y, a0) != vscale(eta, &d.y) {
            rep.y_failures.push(i);
        }
    }
    for i in 0..=w {
        for j in 0..=w {
            if !eq1_check(seq, i, j)? {
                rep.eq1_failures.push((i, j));
            }
        }
    }
    Ok(rep)
}

/// Runs every requested check and collects the results; never stops at the first failure.
pub fn verify(alg: &Algebra, a0: &Element, a1: &Element, params: &FusionParams, opts: &VerifyOptions) -> VerifyReport {
    let r0 = check_axis(alg, a0, params);
    let r1 = check_axis(alg, a1, params);
    let axes = [AxisSummary::from_report("a0", &r0), AxisSummary::from_report("a1", &r1)];
    let mut rep = VerifyReport {
        params: params.clone(),
        dim: alg.dim(),
        passed: axes.iter().all(AxisSummary::passed),
        axes,
        flip: None,
        flip_error: None,
        axial_dimension: None,
        parity: None,
        relation: None,
        group_order: None,
        identities: None,
        seress: None,
        error: None,
    };
    if opts.axis_only || !rep.passed {
        return rep;
    }
    if let Err(e) = rest(alg, a0, a1, params, opts, &mut rep) {
        if matches!(e, Error::NoFlip(_) | Error::NotGenerating(..)) {
            rep.flip = Some(false);
            rep.flip_error = Some(e.to_string());
        } else {
            rep.error = Some(e.to_string());
        }
        rep.passed = false;
    }
    rep
}

fn rest(alg: &Algebra, a0: &Element, a1: &Element, params: &FusionParams, opts: &VerifyOptions, rep: &mut VerifyReport) -> Result<()> {
    let window = (2 * opts.window).max(alg.dim() / 2 + 2);
    let seq = sequence_for(alg, a0, a1, params, window)?;
    rep.flip = Some(true);
    let (d, rel) = axial_dimension(&seq)?;
    rep.axial_dimension = Some(d);
    rep.parity = Some(rel.parity);
    rep.relation = Some(rel.coefficients.clone());
    rep.group_order = Some(miyamoto_group_order(&seq, opts.group_limit)?);
    let ids = check_identities(&seq, opts.window)?;
    rep.passed &= ids.passed();
    rep.identities = Some(ids);
    if opts.seress {
        let ok = seress_check(alg, &seq.dec0).is_none() && seress_check(alg, &seq.dec1).is_none();
        rep.seress = Some(ok);
        rep.passed &= ok;
    }
    Ok(())
}
