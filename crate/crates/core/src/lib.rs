// SPDX-License-Identifier: Apache-2.0
//! Verification and classification of 2-generated axial algebras of Majorana type.

pub mod algebra;
pub mod axial;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod doc;
pub mod error;
pub mod field;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
