// SPDX-License-Identifier: Apache-2.0
//! Axes of Majorana type (ξ, η): eigenspaces, fusion, involutions, orbits.

pub mod calculus;
pub mod decompose;
pub mod flip;
pub mod fusion;
pub mod group;
pub mod sequence;

pub use calculus::{derived_elements, eq1_check, lambda, DerivedElements};
pub use decompose::{eigen_decompose, miyamoto, seress_check, AxisDecomposition};
pub use flip::{extend_along_words, find_flip, isomorphism_from_generators};
pub use fusion::{check_axis, fusion_allowed, AxisReport, Eigen, FusionFailure};
pub use group::{miyamoto_group_order, GroupOrder};
pub use sequence::{axial_dimension, axis_orbit, AxisSequence, LinearRelation, Parity};

use crate::error::{Error, Result};
use crate::field::Scalar;

/// The pair (ξ, η) of a fusion rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FusionParams {
    pub xi: Scalar,
    pub eta: Scalar,
}

impl FusionParams {
    pub fn new(xi: Scalar, eta: Scalar) -> Result<FusionParams> {
        if xi.field() != eta.field() {
            return Err(Error::FieldMismatch(xi.field().to_string(), eta.field().to_string()));
        }
        for (name, v) in [("xi", &xi), ("eta", &eta)] {
            if v.is_zero() || v.is_one() {
                return Err(Error::InvalidFusionParams(format!("{name} = {v} lies in {{0, 1}}")));
            }
        }
        if xi == eta {
            return Err(Error::InvalidFusionParams(format!("xi = eta = {xi}")));
        }
        Ok(FusionParams { xi, eta })
    }

    pub fn value(&self, e: Eigen) -> Scalar {
        let f = self.xi.field();
        match e {
            Eigen::One => f.one(),
            Eigen::Zero => f.zero(),
            Eigen::Xi => self.xi.clone(),
            Eigen::Eta => self.eta.clone(),
        }
    }
}
