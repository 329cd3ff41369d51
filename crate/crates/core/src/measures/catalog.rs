//! The concrete measures and weights.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::{Atom, Branch, IntervalDomain, Measure, PointFn};
use crate::families::{log_chi_at, EvalPoint};
use crate::qcore::pochhammer::{cpoch_inf, log_qpoch_inf, poch, poch_inf, poch_inf_all};
use crate::{Error, QBase, Result};

type C = Complex64;

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

/// `|(t e^{i theta}; q)_inf|^2` for real `t`.
fn trig_pair(t: f64, e: C, base: QBase) -> f64 {
    cpoch_inf(t * e, base).norm_sqr()
}

fn check_unit_ball(ts: &[f64], bound: f64, what: &str) -> Result<()> {
    match ts.iter().find(|t| !(t.abs() < bound) || !t.is_finite()) {
        Some(t) => Err(Error::DomainViolation(format!("{what}: |{t}| must be below {bound}"))),
        None => Ok(()),
    }
}

/// `(e^{2i theta}, e^{-2i theta}; q)_inf` on `[0, pi]`.
pub fn hermite_trig_weight(base: QBase) -> Measure {
    let density: PointFn = Arc::new(move |p| {
        let e = p.e_trig();
        let v = cpoch_inf(e * e, base) * cpoch_inf((e * e).conj(), base);
        debug_assert!(v.im.abs() <= 1e-12 * v.re.abs().max(1.0));
        re(v.re)
    });
    Measure::interval(IntervalDomain::Theta, "continuous q-Hermite weight", density)
        .with_mass(re(2.0 * PI / poch_inf(base.q(), base)))
}

/// Two-parameter weight: the Hermite weight over `(t1 e, t1/e, t2 e, t2/e; q)_inf`.
pub fn asc_weight(t1: f64, t2: f64, base: QBase) -> Result<Measure> {
    aw_weight([t1, t2, 0.0, 0.0], base).map(|mut m| {
        m.label = "Al-Salam-Chihara weight".into();
        m
    })
}

/// Four-parameter weight in `theta`.
pub fn aw_weight(t: [f64; 4], base: QBase) -> Result<Measure> {
    check_unit_ball(&t, 1.0, "weight parameter")?;
    let h = hermite_trig_weight(base);
    let q = base.q();
    let density: PointFn = Arc::new(move |p| {
        let e = p.e_trig();
        let mut d = h.density_at(p).unwrap().re;
        for &tj in &t {
            if tj != 0.0 {
                d /= trig_pair(tj, e, base);
            }
        }
        re(d)
    });
    let prod: f64 = t.iter().product();
    let mut pairs = 1.0;
    for j in 0..4 {
        for k in j + 1..4 {
            pairs *= poch_inf(t[j] * t[k], base);
        }
    }
    let mass = 2.0 * PI * poch_inf(prod, base) / (poch_inf(q, base) * pairs);
    Ok(Measure::interval(IntervalDomain::Theta, "Askey-Wilson weight", density).with_mass(re(mass)))
}

/// Discrete probability measure on `[a, 1]` with atoms at `q^n` and `a q^n`.
pub fn carlitz_measure(a: f64, base: QBase) -> Result<Measure> {
    if !(a < 0.0) || !a.is_finite() {
        return Err(Error::DomainViolation(format!("Carlitz measure needs a < 0, got {a}")));
    }
    let q = base.q();
    let ainf = poch_inf(a, base);
    let ainv = poch_inf(1.0 / a, base);
    let upper = Branch::new(move |n| {
        let x = q.powi(n as i32);
        let m = x / (poch(q, base, n) * poch(q / a, base, n) * ainf);
        Atom::new(EvalPoint::Line(x), x, re(m))
    });
    let lower = Branch::new(move |n| {
        let x = a * q.powi(n as i32);
        let m = q.powi(n as i32) / (poch(q, base, n) * poch(a * q, base, n) * ainv);
        Atom::new(EvalPoint::Line(x), x, re(m))
    });
    Ok(Measure::discrete("Al-Salam-Carlitz measure", vec![upper, lower]).with_mass(re(1.0)))
}

fn check_v_parameter(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::DomainViolation(format!("V-family measures need a > 0, got {a}")));
    }
    if (a - 1.0).abs() < 1e-12 {
        return Err(Error::DomainViolation("a = 1 is excluded".into()));
    }
    Ok(())
}

/// `m^(a)`: atoms at `q^{-n}`; a solution for `0 < a < 1/q`.
pub fn m_measure(a: f64, base: QBase) -> Result<Measure> {
    check_v_parameter(a)?;
    let q = base.q();
    if !(a < 1.0 / q) {
        return Err(Error::DomainViolation(format!("m^(a) needs a < 1/q, got {a}")));
    }
    let lead = poch_inf(a * q, base);
    let b = Branch::new(move |n| {
        let ni = n as i32;
        let x = q.powi(-ni);
        let m = lead * a.powi(ni) * q.powf((n * n) as f64) / (poch(q, base, n) * poch(a * q, base, n));
        Atom::new(EvalPoint::Line(x), x, re(m))
    });
    Ok(Measure::discrete("m^(a)", vec![b]).with_mass(re(1.0)))
}

/// `sigma^(a)`: atoms at `a q^{-n}`; a solution for `a > q`.
pub fn sigma_measure(a: f64, base: QBase) -> Result<Measure> {
    check_v_parameter(a)?;
    let q = base.q();
    if !(a > q) {
        return Err(Error::DomainViolation(format!("sigma^(a) needs a > q, got {a}")));
    }
    let lead = poch_inf(q / a, base);
    let b = Branch::new(move |n| {
        let ni = n as i32;
        let x = a * q.powi(-ni);
        let m = lead * a.powi(-ni) * q.powf((n * n) as f64) / (poch(q, base, n) * poch(q / a, base, n));
        Atom::new(EvalPoint::Line(x), x, re(m))
    });
    Ok(Measure::discrete("sigma^(a)", vec![b]).with_mass(re(1.0)))
}

/// Absolutely continuous solution on the whole line, `q < a < 1/q`, `a != 1`, `gamma > 0`.
pub fn nu_density(a: f64, gamma: f64, base: QBase) -> Result<Measure> {
    check_v_parameter(a)?;
    let q = base.q();
    if !(q < a && a < 1.0 / q) {
        return Err(Error::DomainViolation(format!("density needs q < a < 1/q, got a = {a}")));
    }
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::DomainViolation(format!("gamma must be positive, got {gamma}")));
    }
    let lead = gamma * (a - 1.0).abs() * poch_inf_all(&[q, a * q, q / a], base) / (PI * a);
    let density: PointFn = Arc::new(move |p| {
        let x = p.x().re;
        let u = poch_inf(x / a, base);
        let v = poch_inf(x, base);
        re(lead / (u * u + gamma * gamma * v * v))
    });
    Ok(Measure::interval(IntervalDomain::RealLine, "V-family density", density).with_mass(re(1.0)))
}

/// The measures solving the V-family moment problem that apply at `a`.
///
/// `m^(a)` for `a < 1/q`, `sigma^(a)` for `a > q`, and the density when `gamma` is given.
pub fn v_measures(a: f64, base: QBase, gamma: Option<f64>) -> Result<Vec<Measure>> {
    check_v_parameter(a)?;
    let q = base.q();
    let mut out = Vec::new();
    if a < 1.0 / q {
        out.push(m_measure(a, base)?);
    }
    if a > q {
        out.push(sigma_measure(a, base)?);
    }
    if let Some(g) = gamma {
        out.push(nu_density(a, g, base)?);
    }
    Ok(out)
}

/// The Szego weight `(q^{1/2} z, q^{1/2}/z; q)_inf` and the two-parameter weight `Omega`.
pub fn circle_weights(base: QBase, t1: f64, t2: f64) -> Result<(Measure, Measure)> {
    let q = base.q();
    let sq = q.sqrt();
    check_unit_ball(&[t1, t2], sq, "circle weight parameter")?;
    let szego: PointFn = Arc::new(move |p| {
        let z = p.x();
        re(cpoch_inf(sq * z, base).norm_sqr())
    });
    let lead = poch_inf(q, base) * poch_inf(t1 * t2 * q, base) / (poch_inf(t1 * q, base) * poch_inf(t2 * q, base));
    let omega: PointFn = Arc::new(move |p| {
        let z = p.x();
        let num = cpoch_inf(sq * z, base) * cpoch_inf(sq / z, base);
        let den = cpoch_inf(t1 * sq * z, base) * cpoch_inf(t2 * sq / z, base);
        lead * num / den
    });
    let s = Measure::circle("Szego weight", szego).with_mass(re(1.0 / poch_inf(q, base)));
    let mut o = Measure::circle("Pastro weight", omega).with_mass(re(1.0));
    o.positive = t1 == t2;
    Ok((s, o))
}

/// Atom `n` (any integer) of the N-extremal measure with parameter `t`.
pub fn qinv_hermite_atom(n: i64, t: f64, base: QBase) -> Atom {
    let q = base.q();
    let lq = q.ln();
    let xi = t.ln() - (n + 1) as f64 * lq;
    let qn1 = ((n + 1) as f64 * lq).exp();
    let x = 0.5 * (t / qn1 - qn1 / t);
    let log_z = poch_inf_all(&[-q * q / (t * t), -t * t / q, q], base).ln();
    let nf = n as f64;
    // log(1 + q^{2n+2}/t^2) without overflow for very negative n.
    let l = (2.0 * nf + 2.0) * lq - 2.0 * t.ln();
    let log1p = if l > 30.0 { l + (-l).exp().ln_1p() } else { l.exp().ln_1p() };
    let log_m = 4.0 * nf * (q / t).ln() + nf * (2.0 * nf - 1.0) * lq + log1p - log_z;
    Atom::from_log(EvalPoint::Hyper(xi), x, re(log_m))
}

/// The N-extremal solution of the q^{-1}-Hermite moment problem, `q < t < 1`.
pub fn qinv_hermite_measure(t: f64, base: QBase) -> Result<Measure> {
    let q = base.q();
    if !(q < t && t < 1.0) {
        return Err(Error::DomainViolation(format!("N-extremal measure needs q < t < 1, got {t}")));
    }
    let up = Branch::new(move |k| qinv_hermite_atom(k as i64, t, base));
    let down = Branch::new(move |k| qinv_hermite_atom(-1 - k as i64, t, base));
    Ok(Measure::discrete("N-extremal q^-1-Hermite measure", vec![up, down]).with_mass(re(1.0)))
}

/// `chi_{t1} chi_{t2} / (-t1 t2/q; q)_inf` times `mu`.
pub fn nu_measure(mu: &Measure, t1: C, t2: C, base: QBase) -> Result<Measure> {
    let q = base.q();
    let s = t1 * t2;
    // (-s/q; q)_inf = 0 iff s = -q^{1-k}.
    for k in 0..2000usize {
        let f = C::new(1.0, 0.0) + s * q.powi(k as i32 - 1);
        if f.norm() < 1e-13 {
            return Err(Error::PoleInNormalizer(k));
        }
        if (s * q.powi(k as i32 - 1)).norm() < 1e-3 {
            break;
        }
    }
    let log_norm = log_qpoch_inf(-s / q, base);
    let factor: PointFn = Arc::new(move |p| log_chi_at(t1, p, base) + log_chi_at(t2, p, base) - log_norm);
    let mut m = mu.attach_log("nu_mu", factor).with_mass(re(1.0));
    m.positive = mu.positive && (t2 - t1.conj()).norm() == 0.0;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureKind;
    use crate::qcore::pochhammer::poch;

    fn b(q: f64) -> QBase {
        QBase::new(q).unwrap()
    }

    fn atom_sum(m: &Measure, per_branch: usize) -> C {
        let MeasureKind::Discrete { branches } = &m.kind else { panic!("not discrete") };
        branches.iter().map(|br| (0..per_branch).map(|k| br.atom(k).mass).sum::<C>()).sum()
    }

    #[test]
    fn hermite_weight_values() {
        let w = hermite_trig_weight(b(0.5));
        let mid = w.density_at(&EvalPoint::Trig(PI / 2.0)).unwrap().re;
        let p = poch_inf(-1.0, b(0.5));
        assert!((mid - p * p).abs() < 1e-13 * mid);
        assert!(w.density_at(&EvalPoint::Trig(0.0)).unwrap().norm() < 1e-14);
        assert!(w.density_at(&EvalPoint::Trig(PI)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn asc_weight_spot_value_and_reduction() {
        let base = b(0.5);
        let th: f64 = PI / 3.0;
        let e = C::from_polar(1.0, th);
        let w = asc_weight(0.3, -0.2, base).unwrap().density_at(&EvalPoint::Trig(th)).unwrap().re;
        let direct = (cpoch_inf(e * e, base) * cpoch_inf(1.0 / (e * e), base)
            / (cpoch_inf(0.3 * e, base)
                * cpoch_inf(0.3 / e, base)
                * cpoch_inf(-0.2 * e, base)
                * cpoch_inf(-0.2 / e, base)))
        .re;
        assert!((w - direct).abs() < 1e-13 * direct.abs());
        let h = hermite_trig_weight(base).density_at(&EvalPoint::Trig(th)).unwrap().re;
        let w0 = asc_weight(0.0, 0.0, base).unwrap().density_at(&EvalPoint::Trig(th)).unwrap().re;
        assert_eq!(h, w0);
        assert!(asc_weight(1.0, 0.0, base).is_err());
    }

    #[test]
    fn carlitz_atoms() {
        let base = b(0.5);
        let m = carlitz_measure(-1.0, base).unwrap();
        let MeasureKind::Discrete { branches } = &m.kind else { panic!() };
        assert_eq!(branches[0].atom(0).x, 1.0);
        assert_eq!(branches[1].atom(0).x, -1.0);
        let expect = 1.0 / poch_inf(-1.0, base);
        assert!((branches[0].atom(0).mass.re - expect).abs() < 1e-15);
        assert!((atom_sum(&m, 80).re - 1.0).abs() < 1e-12);
        assert!(carlitz_measure(0.5, base).is_err());
    }

    #[test]
    fn v_measures_applicability() {
        let base = b(0.5);
        assert_eq!(v_measures(0.3, base, None).unwrap().len(), 1);
        assert_eq!(v_measures(0.7, base, Some(1.3)).unwrap().len(), 3);
        assert_eq!(v_measures(3.0, base, None).unwrap().len(), 1);
        assert!(v_measures(1.0, base, None).is_err());
        assert!(v_measures(3.0, base, Some(1.0)).is_err());
        for m in v_measures(0.7, base, None).unwrap() {
            assert!((atom_sum(&m, 60).re - 1.0).abs() < 1e-10, "{}", m.label);
        }
    }

    #[test]
    fn nu_density_at_a_zero_of_the_first_product() {
        // x = a makes (x/a; q)_inf vanish; the value is then set by gamma alone.
        let base = b(0.5);
        let (a, g) = (0.7, 1.3);
        let d = nu_density(a, g, base).unwrap().density_at(&EvalPoint::Line(a)).unwrap().re;
        let lead = g * 0.3 * poch_inf_all(&[0.5, 0.35, 0.5 / 0.7], base) / (PI * a);
        let v = poch_inf(a, base);
        assert!(d > 0.0 && (d - lead / (g * g * v * v)).abs() < 1e-13 * d);
    }

    #[test]
    fn circle_weight_vanishes_at_root() {
        // q^{1/2} e^{i theta} never equals 1 on |z| = 1, but the weight does vanish at z = q^{-1/2} off the circle.
        let base = b(0.5);
        let (s, o) = circle_weights(base, 0.0, 0.0).unwrap();
        let z = EvalPoint::Circle(C::from_polar(1.0, 0.4));
        let ratio = o.density_at(&z).unwrap() / s.density_at(&z).unwrap();
        assert!((ratio.re - poch_inf(0.5, base)).abs() < 1e-14);
        assert!(circle_weights(base, 0.75, 0.0).is_err());
        let MeasureKind::Circle { weight } = &s.kind else { panic!() };
        assert!(weight(&EvalPoint::Line(1.0 / 0.5f64.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn n_extremal_atoms_and_printed_masses() {
        let base = b(0.5);
        let t = 0.8;
        let a0 = qinv_hermite_atom(0, t, base);
        assert!((a0.x - 0.4875).abs() < 1e-15);
        let mu = qinv_hermite_measure(t, base).unwrap();
        assert!((atom_sum(&mu, 40).re - 1.0).abs() < 1e-12);
        let nu = nu_measure(&mu, re(t), re(0.0), base).unwrap();
        let MeasureKind::Discrete { branches } = &nu.kind else { panic!() };
        let q: f64 = 0.5;
        for n in 0..6usize {
            let nf = n as f64;
            let c = q.powf(1.5 * nf * (nf + 1.0))
                * (1.0 + q.powf(2.0 * nf + 2.0) / (t * t))
                * poch(-q * q / (t * t), base, n)
                / (t.powi(2 * n as i32) * poch(q, base, n) * poch_inf(-q * q / (t * t), base));
            let got = branches[0].atom(n).mass;
            assert!((got.re - c).abs() < 1e-10 * c && got.im == 0.0, "c_{n}");
        }
        for k in 0..8 {
            assert_eq!(branches[1].atom(k).mass.norm(), 0.0, "n = -{}", k + 1);
        }
    }

    #[test]
    fn pole_in_normalizer() {
        let base = b(0.5);
        let mu = qinv_hermite_measure(0.8, base).unwrap();
        // t1 t2 = -q^{1-k} with k = 2
        assert!(matches!(nu_measure(&mu, re(-2.0), re(1.0), base), Err(Error::PoleInNormalizer(2))));
    }
}
