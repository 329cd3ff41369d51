//! Forward three-term recurrences.

use num_complex::Complex64;

use super::{EvalPoint, FamilyId, FamilySpec};
use crate::{Error, Result};

/// Largest degree the recurrences are run to.
pub const DEGREE_CAP: usize = 64;

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Monic Askey-Wilson coefficients `(b_n, c_n)` with
/// `x p_n = p_{n+1} + b_n p_n + c_n p_{n-1}`.
pub(crate) fn askey_wilson_coefficients(t: [C; 4], q: f64, n: usize) -> (C, C) {
    let lead = (0..4).max_by(|&i, &j| t[i].norm().total_cmp(&t[j].norm())).unwrap();
    let a = t[lead];
    if a.norm() == 0.0 {
        return (c(0.0), c(0.25 * (1.0 - q.powi(n as i32))));
    }
    let others: Vec<C> = (0..4).filter(|&i| i != lead).map(|i| t[i]).collect();
    let (b, cc, d) = (others[0], others[1], others[2]);
    let p = a * b * cc * d;
    let qn = |k: i32| q.powi(k);
    let big_a = |n: i32| {
        (1.0 - a * b * qn(n)) * (1.0 - a * cc * qn(n)) * (1.0 - a * d * qn(n)) * (1.0 - p * qn(n - 1))
            / (a * (1.0 - p * qn(2 * n - 1)) * (1.0 - p * qn(2 * n)))
    };
    let big_c = |n: i32| {
        a * (1.0 - qn(n)) * (1.0 - b * cc * qn(n - 1)) * (1.0 - b * d * qn(n - 1)) * (1.0 - cc * d * qn(n - 1))
            / ((1.0 - p * qn(2 * n - 2)) * (1.0 - p * qn(2 * n - 1)))
    };
    let ni = n as i32;
    let bn = 0.5 * (a + 1.0 / a - big_a(ni) - big_c(ni));
    let cn = if n == 0 { c(0.0) } else { 0.25 * big_a(ni - 1) * big_c(ni) };
    (bn, cn)
}

/// Monic big q-Jacobi coefficients in `x`, for the representation with
/// argument `x t1` (so the standard variable is `X = t1 x`).
pub(crate) fn big_q_jacobi_coefficients(a: f64, t1: C, t2: C, q: f64, n: usize) -> (C, C) {
    let ak = t1 / q;
    let bk = a * t2 / q;
    let ck = a * t1 / q;
    let qn = |k: i32| q.powi(k);
    let big_a = |n: i32| {
        (1.0 - ak * qn(n + 1)) * (1.0 - ak * bk * qn(n + 1)) * (1.0 - ck * qn(n + 1))
            / ((1.0 - ak * bk * qn(2 * n + 1)) * (1.0 - ak * bk * qn(2 * n + 2)))
    };
    let big_c = |n: i32| {
        -qn(n + 1) * (1.0 - qn(n)) * (ak * ck - ak * ak * bk * qn(n)) * (1.0 - bk * qn(n))
            / ((1.0 - ak * bk * qn(2 * n)) * (1.0 - ak * bk * qn(2 * n + 1)))
    };
    let ni = n as i32;
    let bn = (1.0 - big_a(ni) - big_c(ni)) / t1;
    let cn = if n == 0 { c(0.0) } else { big_a(ni - 1) * big_c(ni) / (t1 * t1) };
    (bn, cn)
}

/// Values of degrees `0..=n` by forward recurrence.
pub fn eval_recurrence_all(spec: &FamilySpec, n: usize, point: EvalPoint) -> Result<Vec<C>> {
    if spec.family.is_rational() {
        return Err(Error::NoRecurrence(spec.family.name().into()));
    }
    if n > DEGREE_CAP {
        return Err(Error::DegreeOverflow { degree: n, cap: DEGREE_CAP });
    }
    if spec.family == FamilyId::BigQJacobi && spec.t[0].norm() == 0.0 {
        return Err(Error::DomainViolation("big q-Jacobi needs t1 != 0".into()));
    }
    let q = spec.q();
    let x = point.x();
    let a = spec.a;
    let [t1, t2, _, _] = spec.t;
    let qk = |k: usize| q.powi(k as i32);
    let w = x / q.sqrt();

    let mut out = Vec::with_capacity(n + 1);
    out.push(c(1.0));
    let mut prev = c(0.0);
    for k in 0..n {
        let cur = out[k];
        let next = match spec.family {
            FamilyId::ContinuousQHermite => 2.0 * x * cur - (1.0 - qk(k)) * prev,
            FamilyId::DiscreteQHermite => x * cur - q.powi(k as i32 - 1) * (1.0 - qk(k)) * prev,
            FamilyId::QInvHermite => 2.0 * x * cur - q.powi(-(k as i32)) * (1.0 - qk(k)) * prev,
            FamilyId::ASCarlitzU => (x - (1.0 + a) * qk(k)) * cur + a * q.powi(k as i32 - 1) * (1.0 - qk(k)) * prev,
            FamilyId::ASCarlitzV => {
                (x - (1.0 + a) * q.powi(-(k as i32))) * cur - a * q.powi(1 - 2 * k as i32) * (1.0 - qk(k)) * prev
            }
            FamilyId::ASChihara => {
                (x - 0.5 * (t1 + t2) * qk(k)) * cur
                    - 0.25 * (1.0 - qk(k)) * (1.0 - t1 * t2 * q.powi(k as i32 - 1)) * prev
            }
            FamilyId::AskeyWilson => {
                let (bk, ck) = askey_wilson_coefficients(spec.t, q, k);
                (x - bk) * cur - ck * prev
            }
            FamilyId::BigQJacobi => {
                let (bk, ck) = big_q_jacobi_coefficients(a, t1, t2, q, k);
                (x - bk) * cur - ck * prev
            }
            FamilyId::SzegoCircle => (1.0 + w) * cur - w * (1.0 - qk(k)) * prev,
            FamilyId::Pastro => {
                (((1.0 + w) - (t1 * q * w + t2) * qk(k)) * cur - w * (1.0 - t1 * t2 * qk(k)) * prev) / (1.0 - qk(k + 1))
            }
            FamilyId::ASChiharaQinv => {
                // v_n(X; q, A, B, C) at X = -2x, A = -(t1+t2)/q, B = t1 t2/q^2, C = -1.
                let big_a = -(t1 + t2) / q;
                let big_b = t1 * t2 / (q * q);
                let big_x = -2.0 * x;
                ((big_a - big_x * qk(k)) * cur - (big_b + q.powi(k as i32 - 1)) * prev) / (1.0 - qk(k + 1))
            }
            FamilyId::ASVermaRational | FamilyId::IsmailMassonRational => unreachable!(),
        };
        prev = cur;
        out.push(next);
    }
    Ok(out)
}

/// Degree-`n` value by forward recurrence.
pub fn eval_recurrence(spec: &FamilySpec, n: usize, point: EvalPoint) -> Result<C> {
    Ok(eval_recurrence_all(spec, n, point)?[n])
}
