//! The verification catalog: closed-form integrals, series identities,
//! Gram-matrix audits and measure sanity checks, run over parameter grids.

mod catalog;
mod checks;
mod gram;
mod record;
mod suite;

pub use catalog::{CheckId, GramCase, MeasureCase, GENFUN_FAMILIES, POLYNOMIAL_FAMILIES, RADIUS_FAMILIES};
pub use checks::{check_genfun, check_identity, check_integral, theorem52_check};
pub use gram::{basis_values, gram, GramReport};
pub use record::{CheckResult, Params};
pub use suite::{
    gram_case, gram_setup, grid, parse_tolerances, plan, run_planned, run_suite, PlannedCheck, Selection, SuiteConfig,
    SuiteReport, DEFAULT_QS,
};
