//! Interval densities, circle weights and discrete mass lists.

mod catalog;

use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::families::EvalPoint;

pub use catalog::{
    asc_weight, aw_weight, carlitz_measure, circle_weights, hermite_trig_weight, m_measure, nu_density, nu_measure,
    qinv_hermite_atom, qinv_hermite_measure, sigma_measure, v_measures,
};

type C = Complex64;

/// Pointwise function of the measure variable.
pub type PointFn = Arc<dyn Fn(&EvalPoint) -> C + Send + Sync>;

/// Support of an interval density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntervalDomain {
    /// `theta` in `[0, pi]`, with `x = cos(theta)` and the Jacobian absorbed.
    Theta,
    /// The whole real line in `x`.
    RealLine,
}

/// One atom of a discrete measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: EvalPoint,
    pub x: f64,
    pub mass: C,
    /// A nonnegative size proxy used by tail tests; equals `|mass|` unless an
    /// attached factor vanishes at the atom, in which case the unattached mass is kept.
    pub envelope: f64,
    /// `ln mass`, kept so attached factors can be combined past the f64 range.
    pub log_mass: C,
}

impl Atom {
    pub fn new(point: EvalPoint, x: f64, mass: C) -> Self {
        Self { point, x, mass, envelope: mass.norm(), log_mass: mass.ln() }
    }

    pub fn from_log(point: EvalPoint, x: f64, log_mass: C) -> Self {
        let mass = log_mass.exp();
        Self { point, x, mass, envelope: mass.norm(), log_mass }
    }

    /// Multiplies by `exp(log_factor)`; `direct` is the factor itself when it is
    /// representable. The log domain is used only when the plain product leaves range.
    fn times(mut self, log_factor: C, direct: Option<C>) -> Self {
        if self.log_mass.re == f64::NEG_INFINITY {
            return self;
        }
        let log_mass = self.log_mass + log_factor;
        let plain = direct.map(|v| self.mass * v).unwrap_or_else(|| self.mass * log_factor.exp());
        let finite = |z: C| z.re.is_finite() && z.im.is_finite();
        // Denormal inputs or outputs have lost digits; redo those in the log domain.
        let normal = self.mass.norm() >= f64::MIN_POSITIVE && plain.norm() >= f64::MIN_POSITIVE;
        let mass = if finite(plain) && (normal || log_factor.re == f64::NEG_INFINITY) { plain } else { log_mass.exp() };
        self.log_mass = log_mass;
        self.mass = if finite(mass) { mass } else { C::new(f64::NAN, 0.0) };
        // A vanishing factor keeps the unattached envelope for the tail test.
        if self.mass.norm() > 0.0 {
            self.envelope = self.mass.norm();
        }
        self
    }
}

/// A lazily enumerated, memoized sequence of atoms.
pub struct Branch {
    generator: Box<dyn Fn(usize) -> Atom + Send + Sync>,
    cache: Mutex<Vec<Atom>>,
}

impl Branch {
    pub fn new(generator: impl Fn(usize) -> Atom + Send + Sync + 'static) -> Self {
        Self { generator: Box::new(generator), cache: Mutex::new(Vec::new()) }
    }

    pub fn atom(&self, k: usize) -> Atom {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        while cache.len() <= k {
            let next = (self.generator)(cache.len());
            cache.push(next);
        }
        cache[k]
    }
}

/// The three measure shapes.
#[derive(Clone)]
pub enum MeasureKind {
    Interval {
        domain: IntervalDomain,
        density: PointFn,
    },
    /// Weight on `|z| = 1` against `dtheta / 2pi`.
    Circle {
        weight: PointFn,
    },
    Discrete {
        branches: Vec<Arc<Branch>>,
    },
}

/// A measure with its metadata.
#[derive(Clone)]
pub struct Measure {
    pub kind: MeasureKind,
    pub label: String,
    /// Total mass when known in closed form.
    pub declared_mass: Option<C>,
    /// Whether the parameters lie in the declared positivity domain.
    pub positive: bool,
}

impl std::fmt::Debug for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let shape = match &self.kind {
            MeasureKind::Interval { domain, .. } => format!("Interval({domain:?})"),
            MeasureKind::Circle { .. } => "Circle".to_string(),
            MeasureKind::Discrete { branches } => format!("Discrete({} branches)", branches.len()),
        };
        f.debug_struct("Measure").field("label", &self.label).field("shape", &shape).finish()
    }
}

impl Measure {
    pub fn interval(domain: IntervalDomain, label: impl Into<String>, density: PointFn) -> Self {
        Self {
            kind: MeasureKind::Interval { domain, density },
            label: label.into(),
            declared_mass: None,
            positive: true,
        }
    }

    pub fn circle(label: impl Into<String>, weight: PointFn) -> Self {
        Self { kind: MeasureKind::Circle { weight }, label: label.into(), declared_mass: None, positive: true }
    }

    pub fn discrete(label: impl Into<String>, branches: Vec<Branch>) -> Self {
        Self {
            kind: MeasureKind::Discrete { branches: branches.into_iter().map(Arc::new).collect() },
            label: label.into(),
            declared_mass: None,
            positive: true,
        }
    }

    pub fn with_mass(mut self, mass: C) -> Self {
        self.declared_mass = Some(mass);
        self
    }

    /// Multiplies the measure by `factor`, keeping its shape.
    pub fn attach(&self, label: impl Into<String>, factor: PointFn) -> Measure {
        self.attach_with(label, factor, false)
    }

    /// Multiplies the measure by `exp(log_factor)`. Discrete masses fall back to
    /// the log domain, so a huge factor on a tiny atom stays finite.
    pub fn attach_log(&self, label: impl Into<String>, log_factor: PointFn) -> Measure {
        self.attach_with(label, log_factor, true)
    }

    fn attach_with(&self, label: impl Into<String>, f: PointFn, is_log: bool) -> Measure {
        let value = move |g: &PointFn, p: &EvalPoint| if is_log { g(p).exp() } else { g(p) };
        let kind = match &self.kind {
            MeasureKind::Interval { domain, density } => {
                let (d, g) = (density.clone(), f.clone());
                MeasureKind::Interval { domain: *domain, density: Arc::new(move |p| d(p) * value(&g, p)) }
            }
            MeasureKind::Circle { weight } => {
                let (w, g) = (weight.clone(), f.clone());
                MeasureKind::Circle { weight: Arc::new(move |p| w(p) * value(&g, p)) }
            }
            MeasureKind::Discrete { branches } => MeasureKind::Discrete {
                branches: branches
                    .iter()
                    .map(|b| {
                        let (inner, g) = (b.clone(), f.clone());
                        Arc::new(Branch::new(move |k| {
                            let atom = inner.atom(k);
                            let v = g(&atom.point);
                            if is_log {
                                atom.times(v, None)
                            } else {
                                atom.times(v.ln(), Some(v))
                            }
                        }))
                    })
                    .collect(),
            },
        };
        Measure { kind, label: label.into(), declared_mass: None, positive: self.positive }
    }

    /// Density or weight at `point`; `None` for discrete measures.
    pub fn density_at(&self, point: &EvalPoint) -> Option<C> {
        match &self.kind {
            MeasureKind::Interval { density, .. } => Some(density(point)),
            MeasureKind::Circle { weight } => Some(weight(point)),
            MeasureKind::Discrete { .. } => None,
        }
    }

    /// Evenly spaced sample points across the support (atoms for discrete measures).
    pub fn sample_points(&self, count: usize) -> Vec<EvalPoint> {
        match &self.kind {
            MeasureKind::Interval { domain: IntervalDomain::Theta, .. } => {
                (0..count).map(|i| EvalPoint::Trig(std::f64::consts::PI * i as f64 / (count - 1) as f64)).collect()
            }
            MeasureKind::Interval { domain: IntervalDomain::RealLine, .. } => (0..count)
                .map(|i| {
                    // Spread over several decades on both sides.
                    let u = -1.0 + 2.0 * i as f64 / (count - 1) as f64;
                    EvalPoint::Line(u.signum() * (10f64.powf(4.0 * u.abs()) - 1.0))
                })
                .collect(),
            MeasureKind::Circle { .. } => (0..count)
                .map(|i| EvalPoint::Circle(C::from_polar(1.0, std::f64::consts::TAU * i as f64 / count as f64)))
                .collect(),
            MeasureKind::Discrete { branches } => {
                let per = count.div_ceil(branches.len().max(1));
                branches.iter().flat_map(|b| (0..per).map(|k| b.atom(k).point).collect::<Vec<_>>()).collect()
            }
        }
    }

    /// Smallest real part of the density (or atom mass) over `count` samples.
    pub fn min_sampled_value(&self, count: usize) -> f64 {
        match &self.kind {
            MeasureKind::Discrete { branches } => {
                let per = count.div_ceil(branches.len().max(1));
                branches
                    .iter()
                    .flat_map(|b| (0..per).map(|k| b.atom(k).mass.re).collect::<Vec<_>>())
                    .fold(f64::INFINITY, f64::min)
            }
            _ => self.sample_points(count).iter().map(|p| self.density_at(p).unwrap().re).fold(f64::INFINITY, f64::min),
        }
    }

    /// Atom or sample table: `(location, mass or density, cumulative)`.
    ///
    /// Discrete tables list atoms until their masses fall below `1e-300`
    /// (at most `limit` per branch), sorted by location.
    pub fn table(&self, limit: usize) -> Vec<(f64, C, C)> {
        let mut rows: Vec<(f64, C)> = match &self.kind {
            MeasureKind::Discrete { branches } => branches
                .iter()
                .flat_map(|b| {
                    (0..limit)
                        .map(|k| b.atom(k))
                        .take_while(|a| a.envelope > 1e-300)
                        .map(|a| (a.x, a.mass))
                        .collect::<Vec<_>>()
                })
                .collect(),
            _ => self
                .sample_points(limit)
                .iter()
                .map(|p| {
                    let loc = match p {
                        EvalPoint::Trig(t) => *t,
                        EvalPoint::Circle(z) => z.arg().rem_euclid(std::f64::consts::TAU),
                        other => other.x().re,
                    };
                    (loc, self.density_at(p).unwrap())
                })
                .collect(),
        };
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let discrete = matches!(self.kind, MeasureKind::Discrete { .. });
        let mut cum = C::new(0.0, 0.0);
        let mut out = Vec::with_capacity(rows.len());
        for (i, &(loc, v)) in rows.iter().enumerate() {
            if discrete {
                cum += v;
            } else if i > 0 {
                let (l0, v0) = rows[i - 1];
                let scale = if matches!(self.kind, MeasureKind::Circle { .. }) { std::f64::consts::TAU } else { 1.0 };
                cum += 0.5 * (v + v0) * (loc - l0) / scale;
            }
            out.push((loc, v, cum));
        }
        out
    }

    /// CSV rendering of [`Measure::table`].
    pub fn to_csv(&self, limit: usize) -> String {
        let mut s = String::from("location,value_re,value_im,cumulative_re,cumulative_im\n");
        for (loc, v, c) in self.table(limit) {
            let _ = writeln!(s, "{loc:.17e},{:.17e},{:.17e},{:.17e},{:.17e}", v.re, v.im, c.re, c.im);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_atoms() -> Measure {
        // Masses e^{-800 - k}: zero in f64, but carried exactly in the log.
        let b = Branch::new(|k| Atom::from_log(EvalPoint::Line(k as f64), k as f64, C::new(-800.0 - k as f64, 0.0)));
        Measure::discrete("tiny", vec![b])
    }

    #[test]
    fn log_attach_recovers_underflowed_masses() {
        let m = tiny_atoms().attach_log("scaled", Arc::new(|_| C::new(800.0, 0.0)));
        let MeasureKind::Discrete { branches } = &m.kind else { panic!() };
        for k in 0..5 {
            let want = (-(k as f64)).exp();
            assert!((branches[0].atom(k).mass.re - want).abs() < 1e-12 * want, "k={k}");
        }
    }

    #[test]
    fn plain_attach_avoids_denormal_precision_loss() {
        let b = Branch::new(|_| Atom::from_log(EvalPoint::Line(0.0), 0.0, C::new(-740.0, 0.0)));
        let m = Measure::discrete("denormal", vec![b]).attach("big", Arc::new(|_| C::new(700f64.exp(), 0.0)));
        let MeasureKind::Discrete { branches } = &m.kind else { panic!() };
        let want = (-40f64).exp();
        assert!((branches[0].atom(0).mass.re - want).abs() < 1e-12 * want);
    }

    #[test]
    fn vanishing_factor_keeps_envelope() {
        let b = Branch::new(|k| Atom::new(EvalPoint::Line(k as f64), k as f64, C::new(0.5, 0.0)));
        let m = Measure::discrete("flat", vec![b]).attach("zero at 1", Arc::new(|p| C::new(p.x().re - 1.0, 0.0)));
        let MeasureKind::Discrete { branches } = &m.kind else { panic!() };
        let a = branches[0].atom(1);
        assert_eq!(a.mass, C::new(0.0, 0.0));
        assert_eq!(a.envelope, 0.5);
    }
}
