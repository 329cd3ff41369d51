use std::cmp::Ordering;

use num_complex::Complex64;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Named numeric parameters of a check, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(pub Vec<(String, f64)>);

impl Params {
    pub fn new<S: Into<String>>(items: impl IntoIterator<Item = (S, f64)>) -> Self {
        Self(items.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        self.0.push((name.into(), value));
    }

    /// Adds a complex parameter; the imaginary part is only recorded when nonzero.
    pub fn push_complex(&mut self, name: &str, value: Complex64) {
        if value.im == 0.0 {
            self.push(name, value.re);
        } else {
            self.push(format!("{name}_re"), value.re);
            self.push(format!("{name}_im"), value.im);
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    fn cmp_values(&self, other: &Self) -> Ordering {
        for ((ka, va), (kb, vb)) in self.0.iter().zip(&other.0) {
            let o = ka.cmp(kb).then(va.total_cmp(vb));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// One verification record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub equation_ref: String,
    pub params: Params,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

impl CheckResult {
    /// Compares `lhs` against `rhs`; relative error is taken against the larger modulus.
    pub fn new<S: Into<String>>(
        check_id: &str,
        equation_ref: &str,
        params: impl IntoIterator<Item = (S, f64)>,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
    ) -> Self {
        let scale = lhs.norm().max(rhs.norm());
        Self::with_scale(check_id, equation_ref, Params::new(params), lhs, rhs, scale, tolerance)
    }

    /// Relative error measured against an explicit `scale` (used for zero targets).
    pub fn with_scale(
        check_id: &str,
        equation_ref: &str,
        params: Params,
        lhs: Complex64,
        rhs: Complex64,
        scale: f64,
        tolerance: f64,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = if scale > 0.0 {
            abs_err / scale
        } else if abs_err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        let finite = lhs.re.is_finite() && lhs.im.is_finite() && rhs.re.is_finite() && rhs.im.is_finite();
        Self {
            check_id: check_id.to_string(),
            equation_ref: equation_ref.to_string(),
            params,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_err,
            rel_err,
            tolerance,
            pass: finite && (abs_err <= tolerance || rel_err <= tolerance),
            runtime_ms: 0.0,
        }
    }

    pub fn lhs(&self) -> Complex64 {
        Complex64::new(self.lhs_re, self.lhs_im)
    }

    pub fn rhs(&self) -> Complex64 {
        Complex64::new(self.rhs_re, self.rhs_im)
    }

    /// Re-evaluates the pass flag under a different tolerance.
    pub fn retolerance(&mut self, tolerance: f64) {
        self.tolerance = tolerance;
        self.pass = self.abs_err <= tolerance || self.rel_err <= tolerance;
    }

    /// Report ordering: check id, then parameter tuple.
    pub fn report_order(&self, other: &Self) -> Ordering {
        self.check_id.cmp(&other.check_id).then_with(|| self.params.cmp_values(&other.params))
    }
}
