//! Finite and infinite q-shifted factorials.

use num_complex::Complex64;

use super::{QBase, QSeriesValue};

/// Truncation threshold for infinite products.
pub const EPS_PROD: f64 = 1e-16;

/// Factors with `|1 - a q^k|` below this are treated as exact zeros.
pub(crate) const ZERO_SNAP: f64 = 1e-14;

/// Length of a q-shifted factorial: a finite `n` or the infinite product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

#[inline]
pub(crate) fn factor(aqk: Complex64) -> Complex64 {
    let f = Complex64::new(1.0, 0.0) - aqk;
    if f.norm() < ZERO_SNAP {
        Complex64::new(0.0, 0.0)
    } else {
        f
    }
}

/// `(a; q)_n = prod_{k<n} (1 - a q^k)`.
pub fn qpoch(a: Complex64, base: QBase, n: usize) -> QSeriesValue {
    let q = base.q();
    let mut p = Complex64::new(1.0, 0.0);
    let mut aqk = a;
    for _ in 0..n {
        p *= factor(aqk);
        aqk *= q;
    }
    QSeriesValue::exact(p, n)
}

/// Number of factors needed so that `|a| q^K < EPS_PROD (1 - q)`.
pub(crate) fn truncation_index(a_abs: f64, q: f64) -> usize {
    if a_abs == 0.0 {
        return 0;
    }
    if !a_abs.is_finite() {
        // One factor is enough to propagate the overflow.
        return 1;
    }
    // Logs separately: the quotient underflows for |a| near f64::MAX.
    let k = (((EPS_PROD * (1.0 - q)).ln() - a_abs.ln()) / q.ln()).ceil();
    if k <= 0.0 {
        0
    } else {
        k as usize
    }
}

/// `(a; q)_inf`, truncated where the remaining factors are within `EPS_PROD` of 1.
pub fn qpoch_inf(a: Complex64, base: QBase) -> QSeriesValue {
    let q = base.q();
    let big_k = truncation_index(a.norm(), q).max(1);
    let mut p = Complex64::new(1.0, 0.0);
    let mut aqk = a;
    for _ in 0..big_k {
        p *= factor(aqk);
        aqk *= q;
    }
    if a.im == 0.0 {
        p.im = 0.0;
    }
    let err_bound = a.norm() * q.powi(big_k as i32) / (1.0 - q) * p.norm();
    QSeriesValue { value: p, err_bound, terms_used: big_k }
}

/// `(a_1, ..., a_m; q)_n` for finite or infinite `n`.
pub fn qpoch_multi(params: &[Complex64], base: QBase, order: Order) -> QSeriesValue {
    let mut value = Complex64::new(1.0, 0.0);
    let mut rel_err = 0.0;
    let mut terms_used = 0;
    for &a in params {
        let v = match order {
            Order::Finite(n) => qpoch(a, base, n),
            Order::Infinite => qpoch_inf(a, base),
        };
        value *= v.value;
        if v.value.norm() > 0.0 {
            rel_err += v.err_bound / v.value.norm();
        }
        terms_used += v.terms_used;
    }
    QSeriesValue { value, err_bound: rel_err * value.norm(), terms_used }
}

/// `ln (a; q)_inf` summed factor by factor, for products that leave the f64 range.
/// The imaginary part is only meaningful modulo `2 pi`.
pub fn log_qpoch_inf(a: Complex64, base: QBase) -> Complex64 {
    let q = base.q();
    let big_k = truncation_index(a.norm(), q).max(1);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut aqk = a;
    for _ in 0..big_k {
        acc += factor(aqk).ln();
        aqk *= q;
    }
    if a.im == 0.0 && a.re < 1.0 {
        acc.im = 0.0;
    }
    acc
}

/// `ln (a; q)_inf` from `ln a`, for `|a|` beyond the range of `f64`.
///
/// Factors with `|a q^k| > 1` are split as `ln(-a q^k) + ln(1 - 1/(a q^k))`.
/// Imaginary parts are only meaningful modulo `2 pi`.
pub fn log_qpoch_inf_from_log(ln_a: Complex64, base: QBase) -> Complex64 {
    use std::f64::consts::PI;
    if ln_a.re == f64::NEG_INFINITY {
        return Complex64::new(0.0, 0.0);
    }
    if !ln_a.re.is_finite() {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    let lq = base.q().ln();
    let real = ln_a.im == 0.0 || ln_a.im.abs() == PI;
    let wrap = |im: f64| if im > PI { im - 2.0 * PI } else { im };
    let big_k = ((((EPS_PROD * (1.0 - base.q())).ln() - ln_a.re) / lq).ceil()).max(1.0) as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..big_k {
        let l = ln_a + k as f64 * lq;
        let term = if l.re > 0.0 {
            let inv = if real { Complex64::new((-l.re).exp() * l.im.cos(), 0.0) } else { (-l).exp() };
            Complex64::new(l.re, wrap(l.im + PI)) + factor(inv).ln()
        } else {
            let aqk = if real { Complex64::new(l.re.exp() * l.im.cos(), 0.0) } else { l.exp() };
            factor(aqk).ln()
        };
        acc += term;
    }
    acc
}

/// Real-argument shorthand used throughout the crate.
pub(crate) fn poch(a: f64, base: QBase, n: usize) -> f64 {
    qpoch(Complex64::new(a, 0.0), base, n).value.re
}

pub(crate) fn poch_inf(a: f64, base: QBase) -> f64 {
    qpoch_inf(Complex64::new(a, 0.0), base).value.re
}

pub(crate) fn cpoch(a: Complex64, base: QBase, n: usize) -> Complex64 {
    qpoch(a, base, n).value
}

pub(crate) fn cpoch_inf(a: Complex64, base: QBase) -> Complex64 {
    qpoch_inf(a, base).value
}

/// Product of `(a; q)_inf` over real arguments.
pub(crate) fn poch_inf_all(args: &[f64], base: QBase) -> f64 {
    args.iter().map(|&a| poch_inf(a, base)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn b(q: f64) -> QBase {
        QBase::new(q).unwrap()
    }

    #[test]
    fn truncation_near_overflow_is_bounded() {
        let k = truncation_index(1e308, 0.2);
        assert!(k > 400 && k < 500, "{k}");
        assert_eq!(truncation_index(f64::INFINITY, 0.2), 1);
    }

    #[test]
    fn log_argument_product_matches_direct() {
        for a in [c(0.4), c(-3.7), c(25.0), Complex64::new(1.3, -0.8), Complex64::new(-40.0, 7.0)] {
            let direct = qpoch_inf(a, b(0.3)).value;
            let via_log = log_qpoch_inf_from_log(a.ln(), b(0.3)).exp();
            assert!((direct - via_log).norm() < 1e-12 * direct.norm(), "{a}: {direct} vs {via_log}");
        }
        assert_eq!(log_qpoch_inf_from_log(c(0.4).ln(), b(0.3)).im, 0.0);
        let huge = log_qpoch_inf_from_log(Complex64::new(800.0, 0.5), b(0.2));
        assert!(huge.re.is_finite() && huge.re > 0.0);
    }

    #[test]
    fn finite_products() {
        assert_eq!(qpoch(c(0.7), b(0.5), 0).value, c(1.0));
        assert_eq!(qpoch(c(0.0), b(0.5), 5).value, c(1.0));
        assert!((qpoch(c(0.5), b(0.5), 2).value.re - 0.375).abs() < 1e-15);
        assert_eq!(qpoch(c(0.5), b(0.5), 2).err_bound, 0.0);
    }

    #[test]
    fn infinite_products() {
        assert_eq!(qpoch_inf(c(0.0), b(0.5)).value, c(1.0));
        assert_eq!(qpoch_inf(c(1.0), b(0.5)).value, c(0.0));
        // Brute force to stagnation.
        let mut p = 1.0;
        let mut x = 0.5;
        while x > 1e-300 {
            p *= 1.0 - x;
            x *= 0.5;
        }
        let v = qpoch_inf(c(0.5), b(0.5));
        assert!((v.value.re - p).abs() < 1e-15);
        assert!((v.value.re - 0.2887880951).abs() < 1e-10);
        assert!(v.err_bound >= 0.0 && v.err_bound < 1e-15);
    }

    #[test]
    fn multi_matches_pairwise_square_identity() {
        // (t, -t; q)_inf = (t^2; q^2)_inf
        let t = 0.3;
        let lhs = qpoch_multi(&[c(t), c(-t)], b(0.5), Order::Infinite).value.re;
        let rhs = qpoch_inf(c(t * t), b(0.25)).value.re;
        assert!((lhs - rhs).abs() < 1e-15);
        assert_eq!(qpoch_multi(&[c(0.0), c(0.0)], b(0.5), Order::Infinite).value, c(1.0));
        assert!((qpoch_multi(&[c(0.5)], b(0.5), Order::Finite(2)).value.re - 0.375).abs() < 1e-15);
    }

    #[test]
    fn real_input_gives_real_output() {
        let v = qpoch_inf(c(-0.9), b(0.8));
        assert_eq!(v.value.im, 0.0);
    }

    proptest! {
        #[test]
        fn recursive_consistency(a in -2.0f64..2.0, ai in -1.0f64..1.0, q in 0.05f64..0.95, n in 0usize..30) {
            let base = b(q);
            let a = Complex64::new(a, ai);
            let lhs = qpoch(a, base, n + 1).value;
            let rhs = qpoch(a, base, n).value * (Complex64::new(1.0, 0.0) - a * q.powi(n as i32));
            prop_assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm().max(1e-300) + 1e-300);
        }

        #[test]
        fn infinite_splits_at_n(a in -0.95f64..0.95, ai in -0.3f64..0.3, q in 0.05f64..0.95, n in 0usize..=20) {
            let base = b(q);
            let a = Complex64::new(a, ai);
            let whole = qpoch_inf(a, base).value;
            let split = qpoch(a, base, n).value * qpoch_inf(a * q.powi(n as i32), base).value;
            prop_assert!((whole - split).norm() <= 1e-12 * whole.norm());
        }
    }
}
