//! Generating functions: truncated series, closed forms and radii.

use num_complex::Complex64;
use serde::Serialize;

use super::recurrence::{eval_recurrence_all, DEGREE_CAP};
use super::{chi_exp, norm_constant, EvalPoint, FamilyId, FamilySpec};
use crate::qcore::phi_eval_default;
use crate::qcore::pochhammer::{cpoch, cpoch_inf, poch};
use crate::{Error, Result};

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn no_genfun(spec: &FamilySpec) -> Error {
    Error::NoGeneratingFunction(spec.family.name().into())
}

/// Radius of the disc in `t` where the generating function converges at `point`.
pub fn gen_function_radius(spec: &FamilySpec, point: EvalPoint) -> Result<f64> {
    let q = spec.q();
    let [t1, t2, _, _] = spec.t;
    let inv_or_inf = |v: f64| if v == 0.0 { f64::INFINITY } else { 1.0 / v };
    Ok(match spec.family {
        FamilyId::ContinuousQHermite | FamilyId::ASChihara | FamilyId::AskeyWilson => {
            let e = point.e_trig().norm();
            e.min(1.0 / e)
        }
        FamilyId::DiscreteQHermite | FamilyId::ASCarlitzU => inv_or_inf(point.x().norm()),
        FamilyId::ASCarlitzV => 1f64.min(1.0 / spec.a),
        FamilyId::SzegoCircle | FamilyId::Pastro => 1f64.min(q.sqrt() / point.x().norm()),
        FamilyId::QInvHermite => f64::INFINITY,
        FamilyId::ASChiharaQinv => (q * inv_or_inf(t1.norm())).min(q * inv_or_inf(t2.norm())),
        FamilyId::BigQJacobi | FamilyId::ASVermaRational | FamilyId::IsmailMassonRational => {
            return Err(no_genfun(spec))
        }
    })
}

fn check_disc(spec: &FamilySpec, t: C, point: EvalPoint) -> Result<()> {
    let radius = gen_function_radius(spec, point)?;
    if t.norm() >= radius {
        Err(Error::OutsideDisc { t: t.norm(), radius })
    } else {
        Ok(())
    }
}

/// `sum_{n<terms} p_n(x) t^n / c_n` with the family's coefficient sequence.
pub fn gen_function_partial(spec: &FamilySpec, t: C, point: EvalPoint, terms: usize) -> Result<C> {
    check_disc(spec, t, point)?;
    if terms == 0 {
        return Ok(c(0.0));
    }
    let base = spec.base;
    let q = spec.q();
    let x = point.x();
    let last = terms - 1;
    if last > DEGREE_CAP {
        return Err(Error::DegreeOverflow { degree: last, cap: DEGREE_CAP });
    }
    let qq = |n: usize| poch(q, base, n);
    let mut sum = c(0.0);
    match spec.family {
        FamilyId::ASCarlitzV => {
            // W_n = V_n q^{n(n-1)/2}
            let a = spec.a;
            let (mut prev, mut cur) = (c(0.0), c(1.0));
            for n in 0..terms {
                sum += cur * (-t).powi(n as i32) / qq(n);
                let qn = q.powi(n as i32);
                let next = (qn * x - 1.0 - a) * cur - a * (1.0 - qn) * prev;
                prev = cur;
                cur = next;
            }
        }
        FamilyId::QInvHermite => {
            // g_n = h_n q^{n(n-1)/2}
            let (mut prev, mut cur) = (c(0.0), c(1.0));
            for n in 0..terms {
                sum += cur * t.powi(n as i32) / qq(n);
                let qn = q.powi(n as i32);
                let next = 2.0 * x * qn * cur - (1.0 - qn) * q.powi(n as i32 - 1) * prev;
                prev = cur;
                cur = next;
            }
        }
        FamilyId::ContinuousQHermite | FamilyId::DiscreteQHermite | FamilyId::ASCarlitzU | FamilyId::SzegoCircle => {
            let p = eval_recurrence_all(spec, last, point)?;
            for (n, v) in p.iter().enumerate() {
                sum += v * t.powi(n as i32) / qq(n);
            }
        }
        FamilyId::Pastro | FamilyId::ASChiharaQinv => {
            let p = eval_recurrence_all(spec, last, point)?;
            for (n, v) in p.iter().enumerate() {
                sum += v * t.powi(n as i32);
            }
        }
        FamilyId::ASChihara => {
            // (t1 t2;q)_n/(q;q)_n p_n (t/t1)^n with p_n = (2 t1)^n/(t1 t2;q)_n * monic
            let p = eval_recurrence_all(spec, last, point)?;
            for (n, v) in p.iter().enumerate() {
                sum += v * (2.0 * t).powi(n as i32) / qq(n);
            }
        }
        FamilyId::AskeyWilson => {
            let [t1, t2, t3, t4] = spec.t;
            let pp = t1 * t2 * t3 * t4;
            let p = eval_recurrence_all(spec, last, point)?;
            for (n, v) in p.iter().enumerate() {
                let ni = n as i32;
                let lead = 2f64.powi(ni) * cpoch(pp * q.powi(ni - 1), base, n);
                sum += lead * v * t.powi(ni) / (qq(n) * cpoch(t1 * t2, base, n) * cpoch(t3 * t4, base, n));
            }
        }
        FamilyId::BigQJacobi | FamilyId::ASVermaRational | FamilyId::IsmailMassonRational => {
            return Err(no_genfun(spec))
        }
    }
    Ok(sum)
}

/// Closed-form right-hand side of the generating function.
pub fn gen_function_closed(spec: &FamilySpec, t: C, point: EvalPoint) -> Result<C> {
    check_disc(spec, t, point)?;
    let base = spec.base;
    let q = spec.q();
    let x = point.x();
    let [t1, t2, t3, t4] = spec.t;
    let a = spec.a;
    let inf = |z: C| cpoch_inf(z, base);
    Ok(match spec.family {
        FamilyId::ContinuousQHermite => {
            let e = point.e_trig();
            1.0 / (inf(t * e) * inf(t / e))
        }
        FamilyId::DiscreteQHermite => inf(t) * inf(-t) / inf(x * t),
        FamilyId::ASCarlitzU => inf(t) * inf(a * t) / inf(x * t),
        FamilyId::ASCarlitzV => inf(x * t) / (inf(t) * inf(a * t)),
        FamilyId::ASChihara => {
            let e = point.e_trig();
            inf(t * t1) * inf(t * t2) / (inf(t / e) * inf(t * e))
        }
        FamilyId::AskeyWilson => {
            let e = point.e_trig();
            let left = phi_eval_default(&[t1 * e, t2 * e], &[t1 * t2], t / e, base)?.value;
            let right = phi_eval_default(&[t3 / e, t4 / e], &[t3 * t4], t * e, base)?.value;
            left * right
        }
        FamilyId::SzegoCircle => 1.0 / (inf(t) * inf(t * x / q.sqrt())),
        FamilyId::Pastro => inf(t1 * t * x * q.sqrt()) * inf(t2 * t) / (inf(t * x / q.sqrt()) * inf(t)),
        FamilyId::QInvHermite => chi_exp(t, point.e_hyper(), base),
        FamilyId::ASChiharaQinv => chi_exp(t, point.e_hyper(), base) / (inf(-t1 * t / q) * inf(-t2 * t / q)),
        FamilyId::BigQJacobi | FamilyId::ASVermaRational | FamilyId::IsmailMassonRational => {
            return Err(no_genfun(spec))
        }
    })
}

/// Outcome of the ratio-test radius estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RadiusEstimate {
    Finite(f64),
    Infinite,
}

/// `ln |c_n|` for the generating-function coefficient sequence.
fn log_coefficient(spec: &FamilySpec, n: usize) -> Result<f64> {
    let base = spec.base;
    let q = spec.q();
    let [t1, t2, t3, t4] = spec.t;
    let lqq = poch(q, base, n).ln();
    let nf = n as f64;
    Ok(match spec.family {
        FamilyId::ContinuousQHermite | FamilyId::DiscreteQHermite | FamilyId::ASCarlitzU | FamilyId::SzegoCircle => lqq,
        FamilyId::ASCarlitzV | FamilyId::QInvHermite => lqq - nf * (nf - 1.0) / 2.0 * q.ln(),
        FamilyId::ASChihara => lqq + nf * t1.norm().ln() - cpoch(t1 * t2, base, n).norm().ln(),
        FamilyId::AskeyWilson => lqq + cpoch(t1 * t2, base, n).norm().ln() + cpoch(t3 * t4, base, n).norm().ln(),
        FamilyId::Pastro | FamilyId::ASChiharaQinv => 0.0,
        _ => return Err(no_genfun(spec)),
    })
}

/// `ln |zeta_n|`, in closed logarithmic form where the norm would overflow.
fn log_norm(spec: &FamilySpec, n: usize) -> Result<f64> {
    let q = spec.q();
    let nf = n as f64;
    let lqq = poch(q, spec.base, n).ln();
    Ok(match spec.family {
        FamilyId::ASCarlitzU => nf * (-spec.a).ln() + nf * (nf - 1.0) / 2.0 * q.ln() + lqq,
        FamilyId::DiscreteQHermite => nf * (nf - 1.0) / 2.0 * q.ln() + lqq,
        FamilyId::ASCarlitzV => nf * spec.a.ln() - nf * nf * q.ln() + lqq,
        FamilyId::QInvHermite => -nf * (nf + 1.0) / 2.0 * q.ln() + lqq,
        _ => norm_constant(spec, n)?.value.norm().ln(),
    })
}

/// Ratio-test estimate of the radius of `sum sqrt(zeta_n)/c_n z^n` up to the degree cap.
pub fn estimate_radius(spec: &FamilySpec) -> Result<RadiusEstimate> {
    spec.validate()?;
    let mut logs = Vec::with_capacity(DEGREE_CAP + 1);
    for n in 0..=DEGREE_CAP {
        logs.push(0.5 * log_norm(spec, n)? - log_coefficient(spec, n)?);
    }
    // ln of a_n / a_{n+1}
    let log_ratio = |n: usize| logs[n] - logs[n + 1];
    let end = DEGREE_CAP - 1;
    let still_growing = log_ratio(end) - log_ratio(end - 16) > 2f64.ln();
    if still_growing {
        Ok(RadiusEstimate::Infinite)
    } else {
        Ok(RadiusEstimate::Finite(log_ratio(end).exp()))
    }
}
