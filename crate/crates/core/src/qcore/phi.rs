//! Basic hypergeometric series `r phi s`.

use std::time::Instant;

use num_complex::Complex64;

use super::mp::{MpComplex, MAX_PRECISION, MIN_PRECISION};
use super::pochhammer::{cpoch, factor};
use super::{QBase, QSeriesValue};
use crate::verify::CheckResult;
use crate::{Error, Result};

/// Relative stopping threshold for nonterminating series.
pub const EPS_SERIES: f64 = 1e-15;
/// Default cap on the number of summed terms.
pub const MAX_TERMS: usize = 10_000;

const POLE_TOL: f64 = 1e-13;
/// Largest cancellation (max term over sum) accepted from the f64 pass.
const F64_CANCELLATION_LIMIT: f64 = 16.0;

/// `r phi s (a_1..a_r; b_1..b_s; q, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSeries {
    pub numerator_params: Vec<Complex64>,
    pub denominator_params: Vec<Complex64>,
    pub argument: Complex64,
    pub base: QBase,
    /// `(index, n)` of the numerator parameter equal to `q^{-n}`, if any.
    terminating: Option<(usize, usize)>,
}

fn q_power_index(a: Complex64, q: f64) -> Option<usize> {
    if a.im.abs() > 1e-12 * a.norm() || a.re < 1.0 - 1e-12 {
        return None;
    }
    let n = (-(a.re.ln()) / q.ln()).round();
    if !(0.0..=1e6).contains(&n) {
        return None;
    }
    let n = n as usize;
    let back = a.re * q.powi(n as i32);
    ((back - 1.0).abs() < 1e-12).then_some(n)
}

impl PhiSeries {
    /// Builds a series, rejecting denominator parameters that hit `q^{-k}`
    /// within the range of terms the series can reach.
    pub fn new(
        numerator_params: Vec<Complex64>,
        denominator_params: Vec<Complex64>,
        argument: Complex64,
        base: QBase,
    ) -> Result<Self> {
        let q = base.q();
        let terminating = numerator_params
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| q_power_index(a, q).map(|n| (i, n)))
            .min_by_key(|&(_, n)| n);
        for (j, &b) in denominator_params.iter().enumerate() {
            if b.norm() < 1.0 - 1e-9 {
                continue;
            }
            // b q^k = 1 needs |b| q^k = 1.
            let k = (-(b.norm().ln()) / q.ln()).round() as usize;
            let reachable = terminating.is_none_or(|(_, n)| k < n);
            if reachable && (Complex64::new(1.0, 0.0) - b * q.powi(k as i32)).norm() < POLE_TOL {
                return Err(Error::DenominatorPole { param: format!("b{}", j + 1), index: k });
            }
        }
        Ok(Self { numerator_params, denominator_params, argument, base, terminating })
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating.is_some()
    }

    /// Degree `n` when a numerator parameter is `q^{-n}`.
    pub fn termination_degree(&self) -> Option<usize> {
        self.terminating.map(|(_, n)| n)
    }

    fn excess(&self) -> i32 {
        self.denominator_params.len() as i32 + 1 - self.numerator_params.len() as i32
    }

    /// Ratio `t_{k+1} / t_k` in double precision.
    fn ratio(&self, k: usize) -> Complex64 {
        let q = self.base.q();
        let qk = q.powi(k as i32);
        let mut r = self.argument;
        for (i, &a) in self.numerator_params.iter().enumerate() {
            r *= match self.terminating {
                Some((ti, n)) if ti == i => Complex64::new(1.0 - q.powi(k as i32 - n as i32), 0.0),
                _ => factor(a * qk),
            };
        }
        for &b in &self.denominator_params {
            r /= factor(b * qk);
        }
        r /= 1.0 - q * qk;
        let e = self.excess();
        if e != 0 {
            r *= (-qk).powi(e);
        }
        r
    }

    fn sum_terminating_f64(&self, n: usize) -> (Complex64, f64) {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut max_term: f64 = 1.0;
        for k in 0..n {
            term *= self.ratio(k);
            sum += term;
            max_term = max_term.max(term.norm());
        }
        (sum, max_term)
    }

    /// Sum of the first `steps + 1` terms at `prec` bits.
    fn sum_mp(&self, steps: usize, prec: usize) -> (Complex64, f64) {
        let q = self.base.q();
        let one = MpComplex::real(1.0, prec);
        let qm = MpComplex::real(q, prec);
        let z = MpComplex::new(self.argument, prec);
        let nums: Vec<MpComplex> = self.numerator_params.iter().map(|&a| MpComplex::new(a, prec)).collect();
        let dens: Vec<MpComplex> = self.denominator_params.iter().map(|&b| MpComplex::new(b, prec)).collect();
        let tn = self.terminating.map(|(i, _)| i);
        // q^{-n} exactly, rather than the rounded parameter.
        let mut q_inv_n = one.clone();
        for _ in 0..self.terminating.map_or(0, |(_, n)| n) {
            q_inv_n = &q_inv_n / &qm;
        }
        let e = self.excess();
        let mut qk = one.clone();
        let mut term = one.clone();
        let mut sum = one.clone();
        let mut max_term: f64 = 1.0;
        for _ in 0..steps {
            let mut num = z.clone();
            for (i, a) in nums.iter().enumerate() {
                let aq = if Some(i) == tn { &q_inv_n * &qk } else { a * &qk };
                num = &num * &(&one - &aq);
            }
            let mut den = &one - &(&qm * &qk);
            for b in &dens {
                den = &den * &(&one - &(b * &qk));
            }
            let mut corr = one.clone();
            for _ in 0..e.unsigned_abs() {
                corr = &corr * &(-&qk);
            }
            if e > 0 {
                num = &num * &corr;
            } else if e < 0 {
                den = &den * &corr;
            }
            term = &(&term * &num) / &den;
            sum = &sum + &term;
            max_term = max_term.max(term.norm());
            qk = &qk * &qm;
        }
        (sum.to_c64(), max_term)
    }

    /// Re-sums `steps + 1` terms in extended precision, doubling the working
    /// precision until the largest term is resolved well below the sum.
    /// Overflowed inputs have no extended-precision value; the `f64` sum
    /// already carries the non-finite result.
    fn inputs_finite(&self) -> bool {
        let ok = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        ok(&self.argument) && self.numerator_params.iter().all(ok) && self.denominator_params.iter().all(ok)
    }

    fn resum_extended(&self, steps: usize) -> Complex64 {
        let mut prec = MIN_PRECISION;
        loop {
            let (s, max_term) = self.sum_mp(steps, prec);
            let lost = if s.norm() > 0.0 { (max_term / s.norm()).log2().max(0.0) } else { f64::INFINITY };
            let needed = lost + 64.0;
            if (prec as f64) >= needed || prec >= MAX_PRECISION {
                return s;
            }
            let next = if needed.is_finite() { (needed as usize).next_multiple_of(64) } else { 2 * prec };
            prec = next.max(2 * prec).min(MAX_PRECISION);
        }
    }

    fn eval_terminating(&self, n: usize) -> QSeriesValue {
        let (s, max_term) = self.sum_terminating_f64(n);
        if max_term <= F64_CANCELLATION_LIMIT * s.norm() || !self.inputs_finite() {
            return QSeriesValue::exact(s, n + 1);
        }
        QSeriesValue::exact(self.resum_extended(n), n + 1)
    }

    fn eval_nonterminating(&self, max_terms: usize) -> Result<QSeriesValue> {
        let e = self.excess();
        if e < 0 || (e == 0 && self.argument.norm() >= 1.0) {
            return Err(Error::NonConvergent(0));
        }
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut max_term: f64 = 1.0;
        for k in 0..max_terms {
            let r = self.ratio(k);
            term *= r;
            sum += term;
            max_term = max_term.max(term.norm());
            if term.norm() == 0.0 {
                return Ok(QSeriesValue::exact(sum, k + 2));
            }
            let rho = r.norm();
            let scale = EPS_SERIES * sum.norm();
            if rho < 1.0 && term.norm() < scale {
                let tail = term.norm() * rho / (1.0 - rho);
                if tail < scale {
                    if max_term > F64_CANCELLATION_LIMIT * sum.norm() {
                        sum = self.resum_extended(k + 1);
                    }
                    return Ok(QSeriesValue { value: sum, err_bound: tail, terms_used: k + 2 });
                }
            }
            if !sum.re.is_finite() || !sum.im.is_finite() {
                return Err(Error::NonConvergent(k + 2));
            }
        }
        Err(Error::NonConvergent(max_terms))
    }

    /// Evaluates the series. Terminating series are summed over all their
    /// terms with `err_bound = 0`; others stop on the relative tail rule.
    pub fn eval(&self, max_terms: usize) -> Result<QSeriesValue> {
        if self.argument == Complex64::new(0.0, 0.0) {
            return Ok(QSeriesValue::exact(Complex64::new(1.0, 0.0), 1));
        }
        match self.terminating {
            Some((_, n)) => Ok(self.eval_terminating(n)),
            None => self.eval_nonterminating(max_terms),
        }
    }
}

/// Evaluates `series` with an explicit term cap.
pub fn phi_eval(series: &PhiSeries, max_terms: usize) -> Result<QSeriesValue> {
    series.eval(max_terms)
}

/// Builds and evaluates a series with the default term cap.
pub fn phi_eval_default(num: &[Complex64], den: &[Complex64], z: Complex64, base: QBase) -> Result<QSeriesValue> {
    PhiSeries::new(num.to_vec(), den.to_vec(), z, base)?.eval(MAX_TERMS)
}

/// Numerically confirms `(a;q)_{n-k} = (a;q)_n / (q^{1-n}/a; q)_k (-q/a)^k q^{k(k-1)/2 - nk}`
/// and the reflection `(a;q)_k = (q^{1-k}/a;q)_k (-a)^k q^{k(k-1)/2}`.
///
/// The reported residual is the larger of the two relative discrepancies.
pub fn qpoch_shift_identity_check(a: Complex64, base: QBase, n: usize, k: usize) -> Result<CheckResult> {
    let start = Instant::now();
    if k > n {
        return Err(Error::DomainViolation(format!("k = {k} exceeds n = {n}")));
    }
    if a.norm() == 0.0 {
        return Err(Error::DomainViolation("a = 0".into()));
    }
    let q = base.q();
    let shifted = q.powi(1 - n as i32) / a;
    let den = cpoch(shifted, base, k);
    if den.norm() == 0.0 {
        return Err(Error::DenominatorPole { param: "q^{1-n}/a".into(), index: k });
    }
    let ki = k as i32;
    let ni = n as i32;
    let lhs = cpoch(a, base, n - k);
    let rhs = cpoch(a, base, n) / den * (-q / a).powi(ki) * q.powi(ki * (ki - 1) / 2 - ni * ki);

    let refl_lhs = cpoch(a, base, k);
    let refl_rhs = cpoch(q.powi(1 - ki) / a, base, k) * (-a).powi(ki) * q.powi(ki * (ki - 1) / 2);
    let refl_res = (refl_lhs - refl_rhs).norm() / refl_lhs.norm().max(refl_rhs.norm()).max(f64::MIN_POSITIVE);

    let mut result = CheckResult::new(
        "QPOCH_SHIFT",
        "(a;q)_{n-k} shift",
        vec![("a_re", a.re), ("a_im", a.im), ("q", q), ("n", n as f64), ("k", k as f64)],
        lhs,
        rhs,
        1e-12,
    );
    if refl_res > result.rel_err {
        result.rel_err = refl_res;
        result.abs_err = result.abs_err.max((refl_lhs - refl_rhs).norm());
        result.pass = result.abs_err <= result.tolerance || result.rel_err <= result.tolerance;
    }
    result.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}
