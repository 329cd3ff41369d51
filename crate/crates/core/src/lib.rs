//! Numerical toolkit for the q-orthogonal polynomial ladder that starts at the
//! q-Hermite polynomials.
//!
//! The crate is organised bottom-up:
//!
//! - [`qcore`]: q-shifted factorials and basic hypergeometric series with
//!   truncation control.
//! - [`families`]: every polynomial / rational family, evaluable by recurrence
//!   and by explicit hypergeometric representation, plus norm constants and
//!   generating functions.
//! - [`measures`]: interval densities, circle weights and discrete mass lists.
//! - [`integrate`]: inner-product engines with error estimates.
//! - [`verify`]: the check catalog producing [`verify::CheckResult`] records.

// `!(x < tol)` is used on purpose so that NaN fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod families;
pub mod integrate;
pub mod measures;
pub mod qcore;
pub mod verify;

pub use error::{Error, Result};
pub use families::{EvalPoint, FamilyId, FamilySpec};
pub use measures::Measure;
pub use qcore::{QBase, QSeriesValue};
pub use verify::{CheckId, CheckResult, GramReport};

pub use num_complex::Complex64;
