//! Explicit basic hypergeometric representations.

use num_complex::Complex64;

use super::{EvalPoint, FamilyId, FamilySpec};
use crate::qcore::phi_eval_default;
use crate::qcore::pochhammer::cpoch;
use crate::{Error, Result};

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn nonzero(v: C, what: &str) -> Result<()> {
    if v.norm() == 0.0 {
        Err(Error::DomainViolation(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

/// Degree-`n` value from the explicit representation.
pub fn eval_explicit(spec: &FamilySpec, n: usize, point: EvalPoint) -> Result<C> {
    let base = spec.base;
    let q = spec.q();
    let qn = c(q.powi(-(n as i32)));
    let [t1, t2, t3, t4] = spec.t;
    let a = spec.a;
    let x = point.x();
    let phi = |num: &[C], den: &[C], z: C| phi_eval_default(num, den, z, base).map(|v| v.value);
    let ni = n as i32;
    match spec.family {
        FamilyId::ContinuousQHermite => {
            let e = point.e_trig();
            Ok(e.powi(ni) * phi(&[qn, c(0.0)], &[], q.powi(ni) / (e * e))?)
        }
        FamilyId::SzegoCircle => phi(&[qn, c(0.0)], &[], q.powi(ni) / q.sqrt() * x),
        FamilyId::QInvHermite => {
            let e = point.e_hyper();
            Ok(e.powi(ni) * phi(&[qn], &[c(0.0)], -q / (e * e))?)
        }
        FamilyId::DiscreteQHermite | FamilyId::ASCarlitzU => {
            let a = if spec.family == FamilyId::DiscreteQHermite { -1.0 } else { a };
            nonzero(x, "x")?;
            Ok((-a).powi(ni) * q.powi(ni * (ni - 1) / 2) * phi(&[qn, 1.0 / x], &[c(0.0)], q * x / a)?)
        }
        FamilyId::ASCarlitzV => Ok((-a).powi(ni) * q.powi(-ni * (ni - 1) / 2) * phi(&[qn, x], &[], c(q.powi(ni) / a))?),
        FamilyId::ASChihara => {
            nonzero(t1, "t1")?;
            let e = point.e_trig();
            phi(&[qn, t1 * e, t1 / e], &[t1 * t2, c(0.0)], c(q))
        }
        FamilyId::AskeyWilson => {
            nonzero(t1, "t1")?;
            let e = point.e_trig();
            let pre = t1.powi(-ni) * cpoch(t1 * t2, base, n) * cpoch(t1 * t3, base, n) * cpoch(t1 * t4, base, n);
            let p = t1 * t2 * t3 * t4;
            Ok(pre * phi(&[qn, p * q.powi(ni - 1), t1 * e, t1 / e], &[t1 * t2, t1 * t3, t1 * t4], c(q))?)
        }
        FamilyId::BigQJacobi => {
            nonzero(t1, "t1")?;
            phi(&[qn, a * t1 * t2 * q.powi(ni - 1), x * t1], &[t1, a * t1], c(q))
        }
        FamilyId::Pastro => {
            nonzero(t1, "t1")?;
            phi(&[qn, t1 * q.sqrt() * x, t1 * q], &[c(0.0), t1 * t2 * q], c(q))
        }
        FamilyId::ASVermaRational => phi(&[qn, t1, a * t1], &[x * t1, a * t1 * t2 / q], c(q)),
        FamilyId::ASChiharaQinv => {
            nonzero(t1, "t1")?;
            nonzero(t2, "t2")?;
            let e = point.e_hyper();
            // (-t2/q)^n (-q e^-xi / t2; q)_n, written as a pole-free product.
            let pre: C = (0..n).map(|j| -t2 / q - q.powi(j as i32) / e).product::<C>() / cpoch(c(q), base, n);
            Ok(pre * phi(&[qn, q * e / t1], &[-t2 * e * q.powi(-ni)], -t1 * e)?)
        }
        FamilyId::IsmailMassonRational => {
            let e = point.e_hyper();
            let p = t1 * t2 * t3 * t4 / q.powi(3);
            phi(&[qn, -t1 * t2 * q.powi(ni - 2), -t1 * t3 / q, -t1 * t4 / q], &[-t1 * e, t1 / e, p], c(q))
        }
    }
}

/// `u_n` as the Cauchy product of two q-binomial expansions of its
/// generating function; pole-free in `t1`, `t2` and evaluated in doubles.
pub fn u_cauchy_product(spec: &FamilySpec, n: usize, point: EvalPoint) -> C {
    let q = spec.q();
    let base = spec.base;
    let [t1, t2, _, _] = spec.t;
    let e = point.e_hyper();
    let left = |k: usize| -> C { (0..k).map(|j| -t1 / q + e * q.powi(j as i32)).product() };
    let right = |k: usize| -> C { (0..k).map(|j| -t2 / q - q.powi(j as i32) / e).product() };
    (0..=n).map(|k| left(k) * right(n - k) / (cpoch(c(q), base, k) * cpoch(c(q), base, n - k))).sum()
}

/// Parameters `(a, t1, t2)` for which `psi_n(x; a, t1, t2) = R_n(beta x / (q alpha); alpha, beta, gamma, delta)`.
pub fn asverma_r_parameters(alpha: f64, beta: f64, gamma: f64, delta: f64) -> (f64, f64, f64) {
    (alpha * gamma / (beta * delta), beta, beta * delta / alpha)
}

/// `R_n(x; alpha, beta, gamma, delta) = 3phi2(beta, alpha gamma/delta, q^-n; beta gamma/q, alpha q x; q, q)`.
pub fn asverma_r(n: usize, x: f64, (alpha, beta, gamma, delta): (f64, f64, f64, f64), base: crate::QBase) -> Result<C> {
    let q = base.q();
    phi_eval_default(
        &[c(beta), c(alpha * gamma / delta), c(q.powi(-(n as i32)))],
        &[c(beta * gamma / q), c(alpha * q * x)],
        c(q),
        base,
    )
    .map(|v| v.value)
}
