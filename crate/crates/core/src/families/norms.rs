//! Normalization maps between representations and closed-form norms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{FamilyId, FamilySpec};
use crate::qcore::pochhammer::{cpoch, cpoch_inf};
use crate::{Error, Result};

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Diagonal constant `zeta_n` of an orthogonality or biorthogonality relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormConstant {
    pub family: FamilyId,
    pub n: usize,
    /// Real for parameters in the positivity domain; complex measures give complex values.
    pub value: Complex64,
}

/// Multiplier `m_n` with `explicit = m_n * recurrence`.
pub fn normalization_map(spec: &FamilySpec, n: usize) -> Result<C> {
    let base = spec.base;
    let q = spec.q();
    let [t1, t2, t3, t4] = spec.t;
    let ni = n as i32;
    let guard = |d: C, what: &str| {
        if d.norm() == 0.0 {
            Err(Error::DenominatorPole { param: what.into(), index: n })
        } else {
            Ok(d)
        }
    };
    match spec.family {
        FamilyId::ASChihara => {
            let d = guard(cpoch(t1 * t2, base, n), "t1 t2")?;
            Ok((2.0 * t1).powi(ni) / d)
        }
        FamilyId::AskeyWilson => Ok(2f64.powi(ni) * cpoch(t1 * t2 * t3 * t4 * q.powi(ni - 1), base, n)),
        FamilyId::BigQJacobi => {
            let a = spec.a;
            let d = guard(cpoch(t1, base, n) * cpoch(a * t1, base, n), "t1, a t1")?;
            Ok(cpoch(a * t1 * t2 * q.powi(ni - 1), base, n) * t1.powi(ni) / d)
        }
        FamilyId::Pastro => {
            let d = guard(cpoch(t1 * t2 * q, base, n), "t1 t2 q")?;
            Ok(cpoch(c(q), base, n) * (t1 * q).powi(ni) / d)
        }
        _ => Ok(c(1.0)),
    }
}

/// `q^{n(n+1)/4} / sqrt((q;q)_n)`, turning `h_n` into orthonormal `h~_n`.
pub fn orthonormal_factor(q: f64, n: usize) -> f64 {
    let nf = n as f64;
    let qq = crate::qcore::pochhammer::poch(q, crate::QBase::new(q).expect("valid base"), n);
    q.powf(nf * (nf + 1.0) / 4.0) / qq.sqrt()
}

fn pair_products(t: [C; 4], scale: f64, base: crate::QBase) -> C {
    let mut p = c(1.0);
    for j in 0..4 {
        for k in j + 1..4 {
            p *= cpoch_inf(t[j] * t[k] * scale, base);
        }
    }
    p
}

/// Closed-form diagonal constant for the family in its explicit normalization.
///
/// For the biorthogonal families the pairing is with the `t1 <-> t2` partner;
/// the circle families pair with the complex conjugate and the `dtheta/2pi` measure.
pub fn norm_constant(spec: &FamilySpec, n: usize) -> Result<NormConstant> {
    spec.validate()?;
    let base = spec.base;
    let q = spec.q();
    let [t1, t2, t3, t4] = spec.t;
    let a = spec.a;
    let ni = n as i32;
    let qq = cpoch(c(q), base, n);
    let qinf = cpoch_inf(c(q), base);
    let value = match spec.family {
        FamilyId::ContinuousQHermite => 2.0 * PI * qq / qinf,
        FamilyId::DiscreteQHermite => q.powi(ni * (ni - 1) / 2) * qq,
        FamilyId::QInvHermite => q.powi(-ni * (ni + 1) / 2) * qq,
        FamilyId::ASCarlitzU => (-a).powi(ni) * q.powi(ni * (ni - 1) / 2) * qq,
        FamilyId::ASCarlitzV => a.powi(ni) * q.powi(-ni * ni) * qq,
        FamilyId::ASChihara => {
            2.0 * PI * qq * t1.powi(2 * ni) / (qinf * cpoch_inf(t1 * t2, base) * cpoch(t1 * t2, base, n))
        }
        FamilyId::AskeyWilson => {
            let p = t1 * t2 * t3 * t4;
            2.0 * PI * cpoch_inf(p * q.powi(2 * ni), base) * cpoch(p * q.powi(ni - 1), base, n)
                / (cpoch_inf(c(q.powi(ni + 1)), base) * pair_products(spec.t, q.powi(ni), base))
        }
        FamilyId::BigQJacobi => {
            let num = qq
                * cpoch(t2, base, n)
                * cpoch(a * t2, base, n)
                * cpoch(a * t1 * t2 * q.powi(ni - 1), base, n)
                * cpoch_inf(a * t1 * t2 * q.powi(2 * ni), base);
            let den = cpoch_inf(t1, base)
                * cpoch_inf(a * t1, base)
                * cpoch_inf(t2, base)
                * cpoch_inf(a * t2, base)
                * cpoch(t1, base, n)
                * cpoch(a * t1, base, n);
            num / den * (-a * t1 * t1).powi(ni) * q.powi(ni * (ni - 1) / 2)
        }
        FamilyId::SzegoCircle => qq * q.powi(-ni) / qinf,
        FamilyId::Pastro => cpoch(t1 * t2 * q, base, n) * q.powi(-ni) / qq,
        FamilyId::ASVermaRational => {
            let s = a * t1 * t2 / q;
            cpoch_inf(t1, base) * cpoch_inf(a * t1, base) * cpoch_inf(t2, base) * cpoch_inf(a * t2, base) * qq
                / (cpoch_inf(s, base) * cpoch(s, base, n))
                * s.powi(ni)
        }
        FamilyId::ASChiharaQinv => {
            let m = -t1 * t2 * q.powi(-ni - 1);
            if n >= 1 && (t1 * t2 + q.powi(ni + 1)).norm() < 1e-14 {
                return Err(Error::DomainViolation(format!("t1 t2 = -q^{}", n + 1)));
            }
            q.powf(n as f64 * (n as f64 - 3.0) / 2.0) / qq * cpoch(m, base, n)
        }
        FamilyId::IsmailMassonRational => {
            let s = t1 * t2;
            let ratio = (1.0 + s * q.powi(ni - 2)) / (1.0 + s * q.powi(2 * ni - 2));
            if t3.norm() == 0.0 && t4.norm() == 0.0 {
                ratio
                    * cpoch_inf(-s * q.powi(ni - 1), base)
                    * qq
                    * q.powf(n as f64 * (n as f64 - 3.0) / 2.0)
                    * s.powi(ni)
            } else {
                let p = t1 * t2 * t3 * t4 / q.powi(3);
                let m = (-q * q) / (t3 * t4);
                ratio * p.powi(ni) * qq * cpoch(m, base, n) / (cpoch(p, base, n) * cpoch(-s / q, base, n))
                    * pair_products(spec.t, -1.0 / q, base)
                    / cpoch_inf(p, base)
            }
        }
    };
    Ok(NormConstant { family: spec.family, n, value })
}

/// The four-parameter rational norm exactly as printed, including its extra
/// `(-t1 t2 q^{n-1}; q)_inf` factor in place of `1/(-t1 t2/q; q)_n`.
pub fn im_printed_norm(spec: &FamilySpec, n: usize) -> C {
    let base = spec.base;
    let q = spec.q();
    let [t1, t2, t3, t4] = spec.t;
    let ni = n as i32;
    let s = t1 * t2;
    let p = t1 * t2 * t3 * t4 / q.powi(3);
    (1.0 + s * q.powi(ni - 2)) / (1.0 + s * q.powi(2 * ni - 2))
        * p.powi(ni)
        * cpoch(c(q), base, n)
        * cpoch(-q * q / (t3 * t4), base, n)
        * cpoch_inf(-s * q.powi(ni - 1), base)
        / cpoch(p, base, n)
        * pair_products(spec.t, -1.0 / q, base)
        / cpoch_inf(p, base)
}

/// Norm of `t1^{-n} (t1, a t1; q)_n phi_n`, the form symmetric in `t1, t2`.
pub fn bqj_symmetric_norm(spec: &FamilySpec, n: usize) -> Result<C> {
    let base = spec.base;
    let q = spec.q();
    let [t1, t2, _, _] = spec.t;
    let a = spec.a;
    let ni = n as i32;
    let num = cpoch(c(q), base, n)
        * cpoch(t1, base, n)
        * cpoch(a * t1, base, n)
        * cpoch(t2, base, n)
        * cpoch(a * t2, base, n)
        * cpoch(a * t1 * t2 * q.powi(ni - 1), base, n)
        * cpoch_inf(a * t1 * t2 * q.powi(2 * ni), base);
    let den = cpoch_inf(t1, base) * cpoch_inf(a * t1, base) * cpoch_inf(t2, base) * cpoch_inf(a * t2, base);
    Ok(num / den * (-a).powi(ni) * q.powi(ni * (ni - 1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QBase;

    fn b(q: f64) -> QBase {
        QBase::new(q).unwrap()
    }

    #[test]
    fn spec_examples() {
        let h = FamilySpec::new(FamilyId::ContinuousQHermite, b(0.5));
        let v = norm_constant(&h, 0).unwrap().value.re;
        assert!((v - 2.0 * PI / 0.2887880950866024).abs() < 1e-9);
        let u = FamilySpec::new(FamilyId::ASCarlitzU, b(0.5)).with_a(-1.0);
        assert!((norm_constant(&u, 1).unwrap().value.re - 0.5).abs() < 1e-15);
        let hi = FamilySpec::new(FamilyId::QInvHermite, b(0.5));
        assert!((norm_constant(&hi, 2).unwrap().value.re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn map_examples() {
        let s = FamilySpec::new(FamilyId::ASChihara, b(0.5)).with_real_t(&[0.3, 0.2]);
        assert!((normalization_map(&s, 1).unwrap().re - 0.6 / 0.94).abs() < 1e-15);
        assert!((normalization_map(&s, 1).unwrap().re - 0.6382978).abs() < 1e-7);
        let h = FamilySpec::new(FamilyId::ContinuousQHermite, b(0.5));
        assert_eq!(normalization_map(&h, 7).unwrap(), c(1.0));
        assert_eq!(orthonormal_factor(0.5, 0), 1.0);
    }

    #[test]
    fn four_parameter_norm_reduces_to_two_parameter_norm() {
        let base = b(0.5);
        let two = FamilySpec::new(FamilyId::IsmailMassonRational, base).with_real_t(&[0.37, -0.29]);
        for n in 0..5 {
            let small = FamilySpec::new(FamilyId::IsmailMassonRational, base).with_real_t(&[0.37, -0.29, 1e-7, 1e-7]);
            let a = norm_constant(&two, n).unwrap().value;
            let b4 = norm_constant(&small, n).unwrap().value;
            assert!((a - b4).norm() < 1e-5 * a.norm(), "n={n}: {a} vs {b4}");
        }
    }

    #[test]
    fn printed_four_parameter_norm_differs_by_a_fixed_product() {
        let base = b(0.5);
        let s = FamilySpec::new(FamilyId::IsmailMassonRational, base).with_real_t(&[0.37, -0.29, 0.21, 0.33]);
        let k = cpoch_inf(c(0.37 * 0.29 / 0.5), base);
        for n in 0..5 {
            let ratio = im_printed_norm(&s, n) / norm_constant(&s, n).unwrap().value;
            assert!((ratio - k).norm() < 1e-13, "n={n}: {ratio}");
        }
    }
}
