//! Inertia of Kwong matrices `[(p_i^r + p_j^r)/(p_i + p_j)]` and related
//! structured families.
//!
//! Two independent engines compute inertia: exact rational congruence
//! ([`exact_engine`]) and binary64 Jacobi eigendecomposition
//! ([`float_engine`]). [`oracle`] holds the closed-form predictions they are
//! checked against.

pub mod cli;
pub mod corpus;
pub mod domain;
pub mod error;
pub mod exact_engine;
pub mod float_engine;
pub mod generators;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod signs;
pub mod structure;
pub mod sweep;

pub use domain::{inertia_sum_check, validate_points, Exponent, Family, FamilySpec, Inertia, Points};
pub use error::{Error, Result};
pub use matrix::{DenseMatrix, ScalarMode, SymMatrix};
pub use scalar::Rational;
