use crate::error::{Error, Result};
use serde::Serialize;

pub const Q_MIN: f64 = 1e-6;
pub const Q_MAX: f64 = 1.0 - 1e-6;

/// The base `q` of all q-shifted factorials, restricted to `[Q_MIN, Q_MAX]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && (Q_MIN..=Q_MAX).contains(&q) {
            Ok(Self(q))
        } else {
            Err(Error::InvalidBase(q))
        }
    }

    #[inline]
    pub fn q(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn sqrt(self) -> f64 {
        self.0.sqrt()
    }

    /// `q^k` for any integer `k`.
    #[inline]
    pub fn pow(self, k: i32) -> f64 {
        self.0.powi(k)
    }

    /// `q^x` for a real exponent (used for `q^{n(n-1)/4}` style factors).
    #[inline]
    pub fn powf(self, x: f64) -> f64 {
        self.0.powf(x)
    }
}

impl std::fmt::Display for QBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
