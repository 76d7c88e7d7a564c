// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("surd token used outside a quadratic extension: {0}")]
    NotInField(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("conflicting duplicate structure entry for product ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("adjoint is not semisimple on the spectrum {{1, 0, xi, eta}}: eigenspace dimensions {dims:?} sum to less than {dim}")]
    NotSemisimple { dims: [usize; 4], dim: usize },
    #[error("axis is not primitive: 1-eigenspace has dimension {0}")]
    NotPrimitive(usize),
    #[error("map is not an automorphism: product of basis vectors ({0}, {1}) is not preserved")]
    NotAutomorphism(usize, usize),
    #[error("the given axes do not generate the algebra (subalgebra dimension {0} of {1})")]
    NotGenerating(usize, usize),
    #[error("no flip: {0}")]
    NoFlip(String),
    #[error("no isomorphism: {0}")]
    NoIso(String),
    #[error("axis sequence identity fails: {0}")]
    SequenceMismatch(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
    #[error("invalid fusion parameters: {0}")]
    InvalidFusionParams(String),
    #[error("structure table resolution failed: {0}")]
    Resolution(String),
    #[error("invalid document: {0}")]
    Document(String),
}
