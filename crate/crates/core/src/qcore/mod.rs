//! Scalar kernel: q-shifted factorials and basic hypergeometric series.

mod base;
pub(crate) mod mp;
pub(crate) mod phi;
pub(crate) mod pochhammer;

pub use base::{QBase, Q_MAX, Q_MIN};
pub use phi::{phi_eval, phi_eval_default, qpoch_shift_identity_check, PhiSeries, EPS_SERIES, MAX_TERMS};
pub use pochhammer::{log_qpoch_inf, log_qpoch_inf_from_log, qpoch, qpoch_inf, qpoch_multi, Order, EPS_PROD};

use num_complex::Complex64;
use serde::Serialize;

/// A numeric result paired with a truncation-error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QSeriesValue {
    pub value: Complex64,
    /// Estimated truncation error (0 for finite products and terminating series).
    pub err_bound: f64,
    pub terms_used: usize,
}

impl QSeriesValue {
    pub fn exact(value: Complex64, terms_used: usize) -> Self {
        Self { value, err_bound: 0.0, terms_used }
    }

    /// The real part, after checking that the imaginary part is noise.
    pub fn real(&self) -> f64 {
        debug_assert!(
            self.value.im.abs() <= 1e-12 * self.value.norm().max(1.0) + self.err_bound,
            "expected a real value, got {}",
            self.value
        );
        self.value.re
    }
}
