//! Gram matrices of inner products against a measure.

use num_complex::Complex64;
use serde::Serialize;

use crate::families::{
    eval_explicit, eval_recurrence_all, norm_constant, normalization_map, EvalPoint, FamilyId, FamilySpec,
};
use crate::integrate::{integrate_vec, QuadConfig};
use crate::measures::{Measure, MeasureKind};
use crate::{Error, Result};

type C = Complex64;

/// Inner products `int a_m b_n dmu` for degrees `0..size`, with the predicted diagonal.
#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    pub family_a: FamilySpec,
    pub family_b: FamilySpec,
    pub size: usize,
    /// `matrix[m][n] = int a_m b_n dmu` (`b_n` conjugated on the circle).
    pub matrix: Vec<Vec<C>>,
    pub predicted: Vec<C>,
    /// Largest off-diagonal modulus over the largest diagonal modulus.
    pub max_offdiag: f64,
    /// Largest `|G_mn| / sqrt(|zeta_m zeta_n|)` off the diagonal.
    pub max_offdiag_normalized: f64,
    pub max_diag_rel_err: f64,
}

impl GramReport {
    pub fn diag_rel_err(&self, n: usize) -> f64 {
        let (g, p) = (self.matrix[n][n], self.predicted[n]);
        (g - p).norm() / g.norm().max(p.norm())
    }
}

/// Values of the basis used for the norm constants at degrees `0..size`.
///
/// Polynomial families use the recurrence times the normalization map; Pastro
/// keeps its recurrence normalization; rational families use the explicit form.
pub fn basis_values(spec: &FamilySpec, size: usize, point: EvalPoint) -> Result<Vec<C>> {
    if size == 0 {
        return Ok(Vec::new());
    }
    if spec.family.is_rational() {
        return (0..size).map(|n| eval_explicit(spec, n, point)).collect();
    }
    let rec = eval_recurrence_all(spec, size - 1, point)?;
    if spec.family == FamilyId::Pastro {
        return Ok(rec);
    }
    rec.into_iter().enumerate().map(|(n, v)| Ok(v * normalization_map(spec, n)?)).collect()
}

/// Gram matrix of `spec_a` against `spec_b` under `mu`, degrees `0..size`.
///
/// The integrand is scaled by `1/sqrt(|zeta_m zeta_n|)` before integrating so the
/// per-component tolerance means the same thing for every entry.
pub fn gram(
    spec_a: &FamilySpec,
    spec_b: &FamilySpec,
    mu: &Measure,
    size: usize,
    cfg: &QuadConfig,
) -> Result<GramReport> {
    if size == 0 || size > crate::families::DEGREE_CAP + 1 {
        return Err(Error::DegreeOverflow { degree: size, cap: crate::families::DEGREE_CAP + 1 });
    }
    spec_a.validate()?;
    spec_b.validate()?;
    let predicted: Vec<C> = (0..size).map(|n| norm_constant(spec_b, n).map(|z| z.value)).collect::<Result<_>>()?;
    let scales: Vec<f64> = predicted.iter().map(|z| 1.0 / z.norm().sqrt()).collect();
    if scales.iter().any(|s| !s.is_finite()) {
        return Err(Error::DomainViolation("vanishing norm constant".into()));
    }
    let conj = matches!(mu.kind, MeasureKind::Circle { .. });
    let f = |p: &EvalPoint| -> Vec<C> {
        let (a, b) = match (basis_values(spec_a, size, *p), basis_values(spec_b, size, *p)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return vec![C::new(f64::NAN, 0.0); size * size],
        };
        let mut out = Vec::with_capacity(size * size);
        for m in 0..size {
            for n in 0..size {
                let bn = if conj { b[n].conj() } else { b[n] };
                out.push(a[m] * scales[m] * bn * scales[n]);
            }
        }
        out
    };
    let q = integrate_vec(&f, size * size, mu, cfg)?;
    let mut matrix = vec![vec![C::new(0.0, 0.0); size]; size];
    let mut max_norm = 0.0f64;
    for m in 0..size {
        for n in 0..size {
            let v = q.values[m * size + n];
            matrix[m][n] = v / (scales[m] * scales[n]);
            if m != n {
                max_norm = max_norm.max(v.norm());
            }
        }
    }
    let max_diag = (0..size).map(|n| matrix[n][n].norm()).fold(0.0, f64::max);
    let max_off = (0..size)
        .flat_map(|m| (0..size).filter(move |&n| n != m).map(move |n| (m, n)))
        .map(|(m, n)| matrix[m][n].norm())
        .fold(0.0, f64::max);
    let mut report = GramReport {
        family_a: *spec_a,
        family_b: *spec_b,
        size,
        matrix,
        predicted,
        max_offdiag: if max_diag > 0.0 { max_off / max_diag } else { f64::INFINITY },
        max_offdiag_normalized: max_norm,
        max_diag_rel_err: 0.0,
    };
    report.max_diag_rel_err = (0..size).map(|n| report.diag_rel_err(n)).fold(0.0, f64::max);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{carlitz_measure, hermite_trig_weight};
    use crate::QBase;

    #[test]
    fn hermite_gram_is_diagonal() {
        let base = QBase::new(0.5).unwrap();
        let spec = FamilySpec::new(FamilyId::ContinuousQHermite, base);
        let r = gram(&spec, &spec, &hermite_trig_weight(base), 8, &QuadConfig::default()).unwrap();
        assert_eq!(r.matrix.len(), 8);
        assert!(r.max_offdiag < 1e-9, "{}", r.max_offdiag);
        assert!(r.max_diag_rel_err < 1e-9, "{}", r.max_diag_rel_err);
    }

    #[test]
    fn carlitz_u_gram_is_symmetric() {
        let base = QBase::new(0.5).unwrap();
        let spec = FamilySpec::new(FamilyId::ASCarlitzU, base).with_a(-0.8);
        let r = gram(&spec, &spec, &carlitz_measure(-0.8, base).unwrap(), 6, &QuadConfig::default()).unwrap();
        for m in 0..6 {
            for n in 0..6 {
                assert!((r.matrix[m][n] - r.matrix[n][m]).norm() <= 1e-12 * r.matrix[n][n].norm().max(1.0));
            }
        }
        assert!(r.max_diag_rel_err < 1e-9);
    }

    #[test]
    fn size_zero_is_rejected() {
        let base = QBase::new(0.5).unwrap();
        let spec = FamilySpec::new(FamilyId::ContinuousQHermite, base);
        assert!(gram(&spec, &spec, &hermite_trig_weight(base), 0, &QuadConfig::default()).is_err());
    }
}
