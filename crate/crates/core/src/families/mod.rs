//! Polynomial and rational families, each evaluable by recurrence and by an
//! explicit basic hypergeometric representation.

mod explicit;
mod genfun;
mod norms;
mod recurrence;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::qcore::QBase;
use crate::{Error, Result};

pub use explicit::{asverma_r, asverma_r_parameters, eval_explicit, u_cauchy_product};
pub use genfun::{estimate_radius, gen_function_closed, gen_function_partial, gen_function_radius, RadiusEstimate};
pub use norms::{
    bqj_symmetric_norm, im_printed_norm, norm_constant, normalization_map, orthonormal_factor, NormConstant,
};
pub use recurrence::{eval_recurrence, eval_recurrence_all, DEGREE_CAP};

/// The thirteen families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    ContinuousQHermite,
    DiscreteQHermite,
    QInvHermite,
    ASCarlitzU,
    ASCarlitzV,
    ASChihara,
    AskeyWilson,
    BigQJacobi,
    SzegoCircle,
    Pastro,
    ASVermaRational,
    ASChiharaQinv,
    IsmailMassonRational,
}

impl FamilyId {
    pub const ALL: [FamilyId; 13] = [
        FamilyId::ContinuousQHermite,
        FamilyId::DiscreteQHermite,
        FamilyId::QInvHermite,
        FamilyId::ASCarlitzU,
        FamilyId::ASCarlitzV,
        FamilyId::ASChihara,
        FamilyId::AskeyWilson,
        FamilyId::BigQJacobi,
        FamilyId::SzegoCircle,
        FamilyId::Pastro,
        FamilyId::ASVermaRational,
        FamilyId::ASChiharaQinv,
        FamilyId::IsmailMassonRational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::ContinuousQHermite => "continuous-q-hermite",
            FamilyId::DiscreteQHermite => "discrete-q-hermite",
            FamilyId::QInvHermite => "q-inverse-hermite",
            FamilyId::ASCarlitzU => "al-salam-carlitz-u",
            FamilyId::ASCarlitzV => "al-salam-carlitz-v",
            FamilyId::ASChihara => "al-salam-chihara",
            FamilyId::AskeyWilson => "askey-wilson",
            FamilyId::BigQJacobi => "big-q-jacobi",
            FamilyId::SzegoCircle => "szego",
            FamilyId::Pastro => "pastro",
            FamilyId::ASVermaRational => "al-salam-verma",
            FamilyId::ASChiharaQinv => "al-salam-chihara-qinv",
            FamilyId::IsmailMassonRational => "ismail-masson",
        }
    }

    /// Rational families have no recurrence.
    pub fn is_rational(self) -> bool {
        matches!(self, FamilyId::ASVermaRational | FamilyId::IsmailMassonRational)
    }

    /// Names of the parameters the family reads, in order.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            FamilyId::ContinuousQHermite
            | FamilyId::DiscreteQHermite
            | FamilyId::QInvHermite
            | FamilyId::SzegoCircle => &[],
            FamilyId::ASCarlitzU | FamilyId::ASCarlitzV => &["a"],
            FamilyId::ASChihara | FamilyId::Pastro | FamilyId::ASChiharaQinv => &["t1", "t2"],
            FamilyId::AskeyWilson | FamilyId::IsmailMassonRational => &["t1", "t2", "t3", "t4"],
            FamilyId::BigQJacobi | FamilyId::ASVermaRational => &["a", "t1", "t2"],
        }
    }

    /// The variable parametrization the family is stated in.
    pub fn natural_point(self, coordinate: f64) -> EvalPoint {
        match self {
            FamilyId::ContinuousQHermite | FamilyId::ASChihara | FamilyId::AskeyWilson => EvalPoint::Trig(coordinate),
            FamilyId::QInvHermite | FamilyId::ASChiharaQinv | FamilyId::IsmailMassonRational => {
                EvalPoint::Hyper(coordinate)
            }
            FamilyId::SzegoCircle | FamilyId::Pastro => EvalPoint::Circle(Complex64::from_polar(1.0, coordinate)),
            _ => EvalPoint::Line(coordinate),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name() == key || format!("{f:?}").to_ascii_lowercase() == key.replace('-', ""))
            .ok_or_else(|| Error::DomainViolation(format!("unknown family {s:?}")))
    }
}

/// Where a family is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EvalPoint {
    /// `x = cos(theta)`.
    Trig(f64),
    /// `x = sinh(xi)`.
    Hyper(f64),
    /// `x` real.
    Line(f64),
    /// `z` on the unit circle.
    Circle(Complex64),
}

impl EvalPoint {
    /// The polynomial variable: `x` for real-line families, `z` on the circle.
    pub fn x(&self) -> Complex64 {
        match *self {
            EvalPoint::Trig(t) => Complex64::new(t.cos(), 0.0),
            EvalPoint::Hyper(xi) => Complex64::new(xi.sinh(), 0.0),
            EvalPoint::Line(x) => Complex64::new(x, 0.0),
            EvalPoint::Circle(z) => z,
        }
    }

    /// `e^{i theta}` with `x = (e + 1/e)/2`.
    pub fn e_trig(&self) -> Complex64 {
        match *self {
            EvalPoint::Trig(t) => Complex64::from_polar(1.0, t),
            EvalPoint::Circle(z) => z,
            _ => {
                let x = self.x();
                x + Complex64::i() * (1.0 - x * x).sqrt()
            }
        }
    }

    /// `e^{xi}` with `x = (e - 1/e)/2`.
    pub fn e_hyper(&self) -> Complex64 {
        match *self {
            EvalPoint::Hyper(xi) => Complex64::new(xi.exp(), 0.0),
            EvalPoint::Circle(z) => z,
            _ => {
                let x = self.x();
                x + (x * x + 1.0).sqrt()
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EvalPoint::Trig(t) if !(0.0..=std::f64::consts::PI).contains(&t) => {
                Err(Error::DomainViolation(format!("theta = {t} outside [0, pi]")))
            }
            EvalPoint::Circle(z) if (z.norm() - 1.0).abs() > 1e-14 => {
                Err(Error::DomainViolation(format!("|z| = {} is not 1", z.norm())))
            }
            _ => Ok(()),
        }
    }
}

/// One family together with its base and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilySpec {
    pub family: FamilyId,
    pub base: QBase,
    /// `t1..t4`; unused entries are zero.
    pub t: [Complex64; 4],
    pub a: f64,
}

impl FamilySpec {
    pub fn new(family: FamilyId, base: QBase) -> Self {
        Self { family, base, t: [Complex64::new(0.0, 0.0); 4], a: 0.0 }
    }

    pub fn with_a(mut self, a: f64) -> Self {
        self.a = a;
        self
    }

    pub fn with_t(mut self, t: &[Complex64]) -> Self {
        for (slot, &v) in self.t.iter_mut().zip(t) {
            *slot = v;
        }
        self
    }

    pub fn with_real_t(self, t: &[f64]) -> Self {
        let c: Vec<Complex64> = t.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.with_t(&c)
    }

    pub fn q(&self) -> f64 {
        self.base.q()
    }

    /// Swaps `t1` and `t2` (the biorthogonal partner of the rational families).
    pub fn swapped(mut self) -> Self {
        self.t.swap(0, 1);
        self
    }

    /// Checks the parameter restrictions every use of the family needs.
    pub fn validate(&self) -> Result<()> {
        match self.family {
            FamilyId::ASCarlitzU if self.a >= 0.0 => {
                Err(Error::DomainViolation(format!("Al-Salam-Carlitz U needs a < 0, got {}", self.a)))
            }
            FamilyId::ASCarlitzV if self.a <= 0.0 => {
                Err(Error::DomainViolation(format!("Al-Salam-Carlitz V needs a > 0, got {}", self.a)))
            }
            _ => Ok(()),
        }
    }

    /// Named parameters for reports.
    pub fn describe(&self) -> Vec<(String, Complex64)> {
        self.family
            .parameters()
            .iter()
            .map(|&p| {
                let v = match p {
                    "a" => Complex64::new(self.a, 0.0),
                    "t1" => self.t[0],
                    "t2" => self.t[1],
                    "t3" => self.t[2],
                    _ => self.t[3],
                };
                (p.to_string(), v)
            })
            .collect()
    }
}

/// `chi_t(sinh xi) = (-t e^xi, t e^-xi; q)_inf`, for complex `e = e^xi`.
pub fn chi_exp(t: Complex64, e: Complex64, base: QBase) -> Complex64 {
    use crate::qcore::pochhammer::cpoch_inf;
    cpoch_inf(-t * e, base) * cpoch_inf(t / e, base)
}

/// `ln chi_t` at a point, for arguments where `chi_t` itself overflows.
///
/// Works from `ln e`, so hyperbolic points with `|xi| > 709` stay finite.
pub fn log_chi_at(t: Complex64, p: &EvalPoint, base: QBase) -> Complex64 {
    use crate::qcore::pochhammer::log_qpoch_inf_from_log;
    if t == Complex64::new(0.0, 0.0) {
        return t;
    }
    let ln_e = match *p {
        EvalPoint::Hyper(xi) => Complex64::new(xi, 0.0),
        _ => p.e_hyper().ln(),
    };
    log_qpoch_inf_from_log((-t).ln() + ln_e, base) + log_qpoch_inf_from_log(t.ln() - ln_e, base)
}

/// `chi_t` at real `xi`.
pub fn chi(t: Complex64, xi: f64, base: QBase) -> Complex64 {
    chi_exp(t, Complex64::new(xi.exp(), 0.0), base)
}

/// `chi_t(x)` through `sqrt(x^2 + 1)`, without reference to `xi`.
pub fn chi_algebraic(t: Complex64, x: f64, base: QBase) -> Complex64 {
    use crate::qcore::pochhammer::cpoch_inf;
    let r = (x * x + 1.0).sqrt();
    cpoch_inf(-t * (r + x), base) * cpoch_inf(t * (r - x), base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in FamilyId::ALL {
            assert_eq!(f.name().parse::<FamilyId>().unwrap(), f);
            assert_eq!(format!("{f:?}").parse::<FamilyId>().unwrap(), f);
        }
        assert!("nope".parse::<FamilyId>().is_err());
    }

    #[test]
    fn point_exponentials_reproduce_x() {
        for p in [EvalPoint::Trig(0.7), EvalPoint::Line(0.3), EvalPoint::Line(1.7), EvalPoint::Hyper(-0.4)] {
            let e = p.e_trig();
            assert!(((e + 1.0 / e) / 2.0 - p.x()).norm() < 1e-14);
            let e = p.e_hyper();
            assert!(((e - 1.0 / e) / 2.0 - p.x()).norm() < 1e-14);
        }
    }

    #[test]
    fn chi_examples() {
        let b = QBase::new(0.5).unwrap();
        assert_eq!(chi(Complex64::new(0.0, 0.0), 0.3, b), Complex64::new(1.0, 0.0));
        // -t e^xi = 1
        let xi: f64 = 0.2;
        let t = Complex64::new(-(-xi).exp(), 0.0);
        assert_eq!(chi(t, xi, b), Complex64::new(0.0, 0.0));
        let direct = crate::qcore::qpoch_inf(Complex64::new(-0.3, 0.0), b).value
            * crate::qcore::qpoch_inf(Complex64::new(0.3, 0.0), b).value;
        assert!((chi(Complex64::new(0.3, 0.0), 0.0, b) - direct).norm() < 1e-15);
        for x in [-2.0, -0.3, 0.0, 1.1] {
            let t = Complex64::new(0.37, 0.1);
            let a = chi_algebraic(t, x, b);
            let c = chi(t, f64::asinh(x), b);
            assert!((a - c).norm() < 1e-13 * c.norm().max(1.0));
        }
    }

    #[test]
    fn domain_checks() {
        let b = QBase::new(0.5).unwrap();
        assert!(FamilySpec::new(FamilyId::ASCarlitzU, b).with_a(0.5).validate().is_err());
        assert!(FamilySpec::new(FamilyId::ASCarlitzV, b).with_a(-0.5).validate().is_err());
        assert!(FamilySpec::new(FamilyId::ASCarlitzV, b).with_a(0.5).validate().is_ok());
        assert!(EvalPoint::Trig(4.0).validate().is_err());
        assert!(EvalPoint::Circle(Complex64::new(1.1, 0.0)).validate().is_err());
    }
}

#[cfg(test)]
mod cross_tests {
    use super::*;

    fn worst(spec: FamilySpec, point: EvalPoint) -> f64 {
        let rec = eval_recurrence_all(&spec, 12, point).unwrap();
        (0..=12)
            .map(|n| {
                let e = eval_explicit(&spec, n, point).unwrap();
                let r = normalization_map(&spec, n).unwrap() * rec[n];
                (e - r).norm() / e.norm().max(r.norm())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn recurrence_and_explicit_agree() {
        for q in [0.3, 0.5, 0.8] {
            let b = QBase::new(q).unwrap();
            let cases = [
                (FamilySpec::new(FamilyId::ContinuousQHermite, b), EvalPoint::Trig(0.9)),
                (FamilySpec::new(FamilyId::DiscreteQHermite, b), EvalPoint::Line(0.45)),
                (FamilySpec::new(FamilyId::QInvHermite, b), EvalPoint::Hyper(0.3)),
                (FamilySpec::new(FamilyId::ASCarlitzU, b).with_a(-0.7), EvalPoint::Line(0.35)),
                (FamilySpec::new(FamilyId::ASCarlitzV, b).with_a(0.7), EvalPoint::Line(2.5)),
                (FamilySpec::new(FamilyId::ASChihara, b).with_real_t(&[0.3, -0.2]), EvalPoint::Trig(0.9)),
                (FamilySpec::new(FamilyId::AskeyWilson, b).with_real_t(&[0.3, -0.2, 0.25, 0.1]), EvalPoint::Trig(0.9)),
                (FamilySpec::new(FamilyId::BigQJacobi, b).with_a(-0.8).with_real_t(&[0.3, 0.2]), EvalPoint::Line(0.6)),
                (FamilySpec::new(FamilyId::SzegoCircle, b), EvalPoint::Circle(Complex64::from_polar(1.0, 0.7))),
                (
                    FamilySpec::new(FamilyId::Pastro, b).with_real_t(&[0.3, -0.4]),
                    EvalPoint::Circle(Complex64::from_polar(1.0, 0.7)),
                ),
                (
                    FamilySpec::new(FamilyId::ASChiharaQinv, b)
                        .with_t(&[Complex64::new(0.3, 0.2), Complex64::new(0.3, -0.2)]),
                    EvalPoint::Hyper(0.3),
                ),
            ];
            for (spec, p) in cases {
                let w = worst(spec, p);
                assert!(w < 1e-9, "{:?} q={q}: {w:e}", spec.family);
            }
        }
    }
}
