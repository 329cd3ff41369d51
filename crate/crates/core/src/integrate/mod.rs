//! Inner products against measures: adaptive Gauss-Legendre panels, the circle
//! trapezoid rule and tail-bounded atom sums.
//!
//! Everything is vector valued so a whole Gram matrix comes out of one pass.
//! Convergence is judged per component against `eps * integral of |f_i|`,
//! which keeps zero targets (off-diagonal entries) meaningful.

mod gauss;

use std::collections::BinaryHeap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::families::EvalPoint;
use crate::measures::{IntervalDomain, Measure, MeasureKind};
use crate::{Error, Result};

type C = Complex64;

/// A scalar integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: C,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Component-wise results of a vector-valued integral.
#[derive(Debug, Clone, PartialEq)]
pub struct VecQuad {
    pub values: Vec<C>,
    pub errs: Vec<f64>,
    /// Integral of `|f_i|` against `|mu|`, the scale used for convergence.
    pub l1: Vec<f64>,
    pub evaluations: usize,
}

impl VecQuad {
    fn zeros(dim: usize) -> Self {
        Self { values: vec![C::new(0.0, 0.0); dim], errs: vec![0.0; dim], l1: vec![0.0; dim], evaluations: 0 }
    }

    fn component(&self, i: usize) -> QuadResult {
        QuadResult { value: self.values[i], err_estimate: self.errs[i], evaluations: self.evaluations }
    }

    fn absorb(&mut self, other: &VecQuad) {
        for i in 0..self.values.len() {
            self.values[i] += other.values[i];
            self.errs[i] += other.errs[i];
            self.l1[i] += other.l1[i];
        }
        self.evaluations += other.evaluations;
    }
}

/// Engine knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadConfig {
    /// Relative tolerance against the integral of `|f|`.
    pub eps: f64,
    pub max_panels: usize,
    pub circle_start: usize,
    pub circle_max: usize,
    /// Discrete truncation: tail below `eps_tail` times the accumulated absolute sum.
    pub eps_tail: f64,
    pub max_atoms: usize,
    /// Real-line truncation: the last doubling of `R` changes the result by less than this.
    pub eps_range: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            eps: 1e-11,
            max_panels: 1 << 14,
            circle_start: 64,
            circle_max: 1 << 16,
            eps_tail: 1e-14,
            max_atoms: 20_000,
            eps_range: 1e-11,
        }
    }
}

/// Vector-valued integrand.
pub type VecFn<'a> = dyn Fn(&EvalPoint) -> Vec<C> + Sync + 'a;

/// `int f_i dmu` for every component, dispatching on the measure shape.
pub fn integrate_vec(f: &VecFn<'_>, dim: usize, mu: &Measure, cfg: &QuadConfig) -> Result<VecQuad> {
    match &mu.kind {
        MeasureKind::Interval { domain: IntervalDomain::Theta, density } => {
            let g = |p: &EvalPoint| scale(f(p), density(p));
            let init: Vec<(f64, f64)> = (0..4).map(|i| (PI * i as f64 / 4.0, PI * (i + 1) as f64 / 4.0)).collect();
            adaptive(&g, dim, &init, &|t| EvalPoint::Trig(t.clamp(0.0, PI)), None, cfg)
        }
        MeasureKind::Interval { domain: IntervalDomain::RealLine, density } => {
            let g = |p: &EvalPoint| scale(f(p), density(p));
            real_line(&g, dim, cfg)
        }
        MeasureKind::Circle { weight } => {
            let g = |p: &EvalPoint| scale(f(p), weight(p));
            circle(&g, dim, cfg.circle_start, cfg)
        }
        MeasureKind::Discrete { .. } => discrete(f, dim, mu, cfg),
    }
}

fn scale(mut v: Vec<C>, s: C) -> Vec<C> {
    for x in &mut v {
        *x *= s;
    }
    v
}

/// `int f g dmu`.
pub fn inner_product(
    f: impl Fn(&EvalPoint) -> C + Sync,
    g: impl Fn(&EvalPoint) -> C + Sync,
    mu: &Measure,
) -> Result<QuadResult> {
    integrate(move |p| f(p) * g(p), mu, &QuadConfig::default())
}

/// `int f dmu`.
pub fn integrate(f: impl Fn(&EvalPoint) -> C + Sync, mu: &Measure, cfg: &QuadConfig) -> Result<QuadResult> {
    let v = integrate_vec(&|p| vec![f(p)], 1, mu, cfg)?;
    Ok(v.component(0))
}

/// Integral against an interval density (theta on `[0, pi]` or the real line).
pub fn integrate_interval(f: impl Fn(&EvalPoint) -> C + Sync, density: &Measure) -> Result<QuadResult> {
    match density.kind {
        MeasureKind::Interval { .. } => integrate(f, density, &QuadConfig::default()),
        _ => Err(Error::Unsupported("measure shape does not match the engine".into())),
    }
}

/// `(1/2pi) int f w dtheta` starting from `n_nodes` trapezoid nodes.
pub fn integrate_circle(f: impl Fn(&EvalPoint) -> C + Sync, weight: &Measure, n_nodes: usize) -> Result<QuadResult> {
    let MeasureKind::Circle { weight: w } = &weight.kind else {
        return Err(Error::Unsupported("measure shape does not match the engine".into()));
    };
    let g = |p: &EvalPoint| vec![f(p) * w(p)];
    Ok(circle(&g, 1, n_nodes.max(2), &QuadConfig::default())?.component(0))
}

/// `sum f(x_i) m_i` with a tail bound.
pub fn sum_discrete(f: impl Fn(&EvalPoint) -> C + Sync, mu: &Measure) -> Result<QuadResult> {
    match mu.kind {
        MeasureKind::Discrete { .. } => integrate(f, mu, &QuadConfig::default()),
        _ => Err(Error::Unsupported("measure shape does not match the engine".into())),
    }
}

struct Panel {
    a: f64,
    b: f64,
    est: VecQuad,
    badness: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.badness == o.badness
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.badness.total_cmp(&o.badness).then(o.a.total_cmp(&self.a))
    }
}

/// Gauss-Legendre rule on `[a, b]`: (integral, integral of |f|).
fn gl(f: &VecFn<'_>, dim: usize, a: f64, b: f64, map: &dyn Fn(f64) -> EvalPoint) -> (Vec<C>, Vec<f64>) {
    let (nodes, weights) = gauss::rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = vec![C::new(0.0, 0.0); dim];
    let mut abs = vec![0.0; dim];
    for (x, w) in nodes.iter().zip(weights) {
        let v = f(&map(mid + half * x));
        for i in 0..dim {
            acc[i] += v[i] * (w * half);
            abs[i] += v[i].norm() * (w * half.abs());
        }
    }
    (acc, abs)
}

fn panel(f: &VecFn<'_>, dim: usize, a: f64, b: f64, map: &dyn Fn(f64) -> EvalPoint) -> VecQuad {
    let m = 0.5 * (a + b);
    let (whole, _) = gl(f, dim, a, b, map);
    let (l, la) = gl(f, dim, a, m, map);
    let (r, ra) = gl(f, dim, m, b, map);
    let mut out = VecQuad::zeros(dim);
    for i in 0..dim {
        out.values[i] = l[i] + r[i];
        out.errs[i] = (whole[i] - out.values[i]).norm();
        out.l1[i] = la[i] + ra[i];
    }
    out.evaluations = 3 * gauss::ORDER;
    out
}

fn badness(est: &VecQuad, scale: &[f64], eps: f64) -> f64 {
    est.errs
        .iter()
        .zip(scale)
        .map(|(e, s)| if *e == 0.0 { 0.0 } else { e / (eps * s).max(f64::MIN_POSITIVE) })
        .fold(0.0, f64::max)
}

fn converged(total: &VecQuad, floor: Option<&[f64]>, eps: f64) -> bool {
    (0..total.values.len()).all(|i| {
        let s = floor.map_or(total.l1[i], |f| f[i].max(total.l1[i]));
        total.errs[i] <= eps * s
    })
}

/// Global adaptive refinement over the initial panels.
///
/// With `floor`, component `i` may stop once its error is below `eps * floor[i]`.
fn adaptive(
    f: &VecFn<'_>,
    dim: usize,
    init: &[(f64, f64)],
    map: &dyn Fn(f64) -> EvalPoint,
    floor: Option<&[f64]>,
    cfg: &QuadConfig,
) -> Result<VecQuad> {
    let mut heap = BinaryHeap::new();
    let mut total = VecQuad::zeros(dim);
    let mut evaluations = 0;
    for &(a, b) in init {
        let est = panel(f, dim, a, b, map);
        evaluations += est.evaluations;
        total.absorb(&est);
        heap.push(Panel { a, b, est, badness: 0.0 });
    }
    let rescore = |heap: BinaryHeap<Panel>, scale: &[f64]| -> BinaryHeap<Panel> {
        heap.into_iter()
            .map(|mut p| {
                p.badness = badness(&p.est, scale, cfg.eps);
                p
            })
            .collect()
    };
    let scale_of =
        |t: &VecQuad| -> Vec<f64> { (0..dim).map(|i| floor.map_or(t.l1[i], |f| f[i].max(t.l1[i]))).collect() };
    heap = rescore(heap, &scale_of(&total));
    let mut since_rescore = 0;
    loop {
        if converged(&total, floor, cfg.eps) {
            break;
        }
        if heap.len() >= cfg.max_panels {
            return Err(Error::MaxPanelsExceeded(cfg.max_panels));
        }
        let worst = heap.pop().expect("nonempty");
        for i in 0..dim {
            total.values[i] -= worst.est.values[i];
            total.errs[i] = (total.errs[i] - worst.est.errs[i]).max(0.0);
            total.l1[i] -= worst.est.l1[i];
        }
        let m = 0.5 * (worst.a + worst.b);
        let scale = scale_of(&total);
        for (a, b) in [(worst.a, m), (m, worst.b)] {
            let est = panel(f, dim, a, b, map);
            evaluations += est.evaluations;
            total.absorb(&est);
            let bad = badness(&est, &scale, cfg.eps);
            heap.push(Panel { a, b, est, badness: bad });
        }
        since_rescore += 1;
        if since_rescore >= 64 {
            // Re-sum to keep the running totals free of drift.
            total = VecQuad::zeros(dim);
            for p in heap.iter() {
                total.absorb(&p.est);
            }
            heap = rescore(heap, &scale_of(&total));
            since_rescore = 0;
        }
    }
    // Deterministic summation order, independent of heap layout.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut out = VecQuad::zeros(dim);
    for p in &panels {
        out.absorb(&p.est);
    }
    out.evaluations = evaluations;
    Ok(out)
}

/// Whole-line integral on `[-R, R]` with `R` doubled until the last shell is negligible.
fn real_line(f: &VecFn<'_>, dim: usize, cfg: &QuadConfig) -> Result<VecQuad> {
    let map = |x: f64| EvalPoint::Line(x);
    let mut r = 4.0;
    let init: Vec<(f64, f64)> = (-4..4).map(|i| (i as f64, (i + 1) as f64)).collect();
    let mut total = adaptive(f, dim, &init, &map, None, cfg)?;
    let mut previous_shell = f64::INFINITY;
    let mut growing = 0;
    loop {
        let shell_init = [(-2.0 * r, -r), (r, 2.0 * r)];
        let floor = total.l1.clone();
        let shell = adaptive(f, dim, &shell_init, &map, Some(&floor), cfg)?;
        total.absorb(&shell);
        r *= 2.0;
        let change = (0..dim).map(|i| shell.l1[i] / total.l1[i].max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
        if change < cfg.eps_range {
            break;
        }
        growing = if change >= previous_shell { growing + 1 } else { 0 };
        previous_shell = change;
        if growing >= 4 || r > 1e150 {
            return Err(Error::NonDecayingIntegrand(r));
        }
    }
    Ok(total)
}

/// Trapezoid rule on `|z| = 1` against `dtheta/2pi`, doubling the node count.
fn circle(f: &VecFn<'_>, dim: usize, start: usize, cfg: &QuadConfig) -> Result<VecQuad> {
    let node = |k: usize, n: usize| EvalPoint::Circle(C::from_polar(1.0, TAU * k as f64 / n as f64));
    let mut n = start;
    let mut sum = vec![C::new(0.0, 0.0); dim];
    let mut abs = vec![0.0; dim];
    for k in 0..n {
        let v = f(&node(k, n));
        for i in 0..dim {
            sum[i] += v[i];
            abs[i] += v[i].norm();
        }
    }
    let mut evaluations = n;
    loop {
        if 2 * n > cfg.circle_max {
            return Err(Error::MaxNodesExceeded(cfg.circle_max));
        }
        let mut odd = vec![C::new(0.0, 0.0); dim];
        let mut odd_abs = vec![0.0; dim];
        for k in 0..n {
            let v = f(&node(2 * k + 1, 2 * n));
            for i in 0..dim {
                odd[i] += v[i];
                odd_abs[i] += v[i].norm();
            }
        }
        evaluations += n;
        let mut out = VecQuad::zeros(dim);
        for i in 0..dim {
            let coarse = sum[i] / n as f64;
            sum[i] += odd[i];
            abs[i] += odd_abs[i];
            out.values[i] = sum[i] / (2 * n) as f64;
            out.errs[i] = (out.values[i] - coarse).norm();
            out.l1[i] = abs[i] / (2 * n) as f64;
        }
        n *= 2;
        if (0..dim).all(|i| out.errs[i] <= cfg.eps * out.l1[i]) {
            out.evaluations = evaluations;
            return Ok(out);
        }
    }
}

/// Atom sums, each branch enumerated outward until its tail is negligible.
///
/// The tail after atom `k` is bounded by `term_k * rho / (1 - rho)` where `rho`
/// is the current term ratio; the masses here decay at least geometrically and
/// eventually like `q^{n^2}`, so once the ratio falls below 1 it keeps falling.
fn discrete(f: &VecFn<'_>, dim: usize, mu: &Measure, cfg: &QuadConfig) -> Result<VecQuad> {
    let MeasureKind::Discrete { branches } = &mu.kind else { unreachable!() };
    let mut total = VecQuad::zeros(dim);
    for br in branches {
        let mut part = VecQuad::zeros(dim);
        let mut prev: Vec<f64> = vec![0.0; dim];
        let mut k = 0;
        loop {
            if k >= cfg.max_atoms {
                return Err(Error::TailBoundFailure(format!("{}: no convergence after {k} atoms", mu.label)));
            }
            let atom = br.atom(k);
            if !(atom.mass.re.is_finite() && atom.mass.im.is_finite()) {
                return Err(Error::TailBoundFailure(format!("{}: non-finite mass at atom {k}", mu.label)));
            }
            if !atom.x.is_finite() {
                // Out of f64 range: keep the ratio estimate as the error if there is one.
                if k >= 3 && part.errs.iter().all(|e| e.is_finite()) {
                    break;
                }
                return Err(Error::TailBoundFailure(format!("{}: atom {k} beyond f64 range", mu.label)));
            }
            let v = if atom.mass.norm() == 0.0 && atom.envelope == 0.0 {
                vec![C::new(0.0, 0.0); dim]
            } else {
                f(&atom.point)
            };
            let mut done = k >= 3;
            for i in 0..dim {
                let term = v[i] * atom.mass;
                if !(term.re.is_finite() && term.im.is_finite()) {
                    return Err(Error::TailBoundFailure(format!("{}: non-finite term at atom {k}", mu.label)));
                }
                part.values[i] += term;
                // A vanishing mass still carries the unattached envelope into the tail test.
                let size = if atom.mass.norm() != 0.0 {
                    term.norm()
                } else if atom.envelope == 0.0 {
                    0.0
                } else {
                    v[i].norm() * atom.envelope
                };
                part.l1[i] += term.norm();
                let rho = if prev[i] > 0.0 { size / prev[i] } else { f64::INFINITY };
                let tail = if size == 0.0 {
                    0.0
                } else if rho < 1.0 {
                    size * rho / (1.0 - rho)
                } else {
                    f64::INFINITY
                };
                part.errs[i] = tail;
                if !(tail <= cfg.eps_tail * part.l1[i]) {
                    done = false;
                }
                prev[i] = size;
            }
            part.evaluations += 1;
            k += 1;
            if done {
                break;
            }
        }
        total.absorb(&part);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{eval_recurrence, FamilyId, FamilySpec};
    use crate::measures::{carlitz_measure, circle_weights, hermite_trig_weight, qinv_hermite_measure, PointFn};
    use crate::qcore::pochhammer::{poch, poch_inf};
    use crate::QBase;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn b(q: f64) -> QBase {
        QBase::new(q).unwrap()
    }

    fn one() -> C {
        C::new(1.0, 0.0)
    }

    #[test]
    fn constant_theta_density() {
        let m = Measure::interval(IntervalDomain::Theta, "1", Arc::new(|_| C::new(1.0, 0.0)));
        let r = integrate_interval(|_| one(), &m).unwrap();
        assert!((r.value.re - PI).abs() < 1e-12);
        assert!(r.err_estimate >= 0.0);
    }

    #[test]
    fn symmetric_integrand_halves() {
        let m = Measure::interval(IntervalDomain::Theta, "1", Arc::new(|_| C::new(1.0, 0.0)));
        let f = |p: &EvalPoint| C::new((p.x().re * p.x().re + 0.3).ln(), 0.0);
        let whole = integrate_interval(f, &m).unwrap().value.re;
        let g = |t: f64| ((t.cos()).powi(2) + 0.3).ln();
        let half = adaptive(
            &|p| {
                vec![C::new(
                    g(match p {
                        EvalPoint::Trig(t) => *t,
                        _ => 0.0,
                    }),
                    0.0,
                )]
            },
            1,
            &[(0.0, PI / 2.0)],
            &|t| EvalPoint::Trig(t),
            None,
            &QuadConfig::default(),
        )
        .unwrap();
        assert!((whole - 2.0 * half.values[0].re).abs() < 1e-11);
    }

    #[test]
    fn hermite_weight_mass_and_norms() {
        let base = b(0.5);
        let w = hermite_trig_weight(base);
        let mass = integrate_interval(|_| one(), &w).unwrap().value.re;
        assert!((mass - 2.0 * PI / poch_inf(0.5, base)).abs() < 1e-10 * mass);
        let spec = FamilySpec::new(FamilyId::ContinuousQHermite, base);
        let h1 = |p: &EvalPoint| eval_recurrence(&spec, 1, *p).unwrap();
        assert!(inner_product(h1, |_| one(), &w).unwrap().value.norm() < 1e-10);
        let n1 = inner_product(h1, h1, &w).unwrap().value.re;
        let expect = 2.0 * PI * poch(0.5, base, 1) / poch_inf(0.5, base);
        assert!((n1 - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn circle_examples() {
        let flat = Measure::circle("1", Arc::new(|_| C::new(1.0, 0.0)));
        assert!((integrate_circle(|_| one(), &flat, 64).unwrap().value - 1.0).norm() < 1e-14);
        assert!(integrate_circle(|p| p.x(), &flat, 64).unwrap().value.norm() < 1e-14);
        let base = b(0.5);
        let (s, _) = circle_weights(base, 0.0, 0.0).unwrap();
        let v = integrate_circle(|_| one(), &s, 64).unwrap().value.re;
        assert!((v - 1.0 / poch_inf(0.5, base)).abs() < 1e-12);
    }

    #[test]
    fn circle_node_cap() {
        let rough: PointFn = Arc::new(|p| C::new((p.x() - 1.0).norm().sqrt(), 0.0));
        let m = Measure::circle("rough", rough);
        assert!(matches!(integrate_circle(|_| one(), &m, 64), Err(Error::MaxNodesExceeded(_))));
    }

    #[test]
    fn discrete_examples() {
        let base = b(0.5);
        let mu = carlitz_measure(-1.0, base).unwrap();
        assert!((sum_discrete(|_| one(), &mu).unwrap().value.re - 1.0).abs() < 1e-12);
        let u = FamilySpec::new(FamilyId::ASCarlitzU, base).with_a(-1.0);
        let u1 = sum_discrete(|p| eval_recurrence(&u, 1, *p).unwrap(), &mu).unwrap();
        assert!(u1.value.norm() < 1e-11);
        // Second moment of the N-extremal measure: h_2 = 4x^2 - (1 - q)/q... so x^2 = (h_2 + q^{-1}(1-q))/4.
        let nx = qinv_hermite_measure(0.8, base).unwrap();
        let m2 = sum_discrete(|p| p.x() * p.x(), &nx).unwrap().value.re;
        let q: f64 = 0.5;
        assert!((m2 - (1.0 - q) / q / 4.0).abs() < 1e-11);
    }

    #[test]
    fn real_line_gaussian_like() {
        let m = Measure::interval(
            IntervalDomain::RealLine,
            "cauchy",
            Arc::new(|p| C::new(1.0 / (PI * (1.0 + p.x().re.powi(4))), 0.0)),
        );
        let r = integrate(|_| one(), &m, &QuadConfig::default()).unwrap().value.re;
        assert!((r - 2f64.sqrt() / 2.0).abs() < 1e-10, "{r}");
        let flat = Measure::interval(IntervalDomain::RealLine, "flat", Arc::new(|_| C::new(1.0, 0.0)));
        assert!(matches!(integrate(|_| one(), &flat, &QuadConfig::default()), Err(Error::NonDecayingIntegrand(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn linearity(alpha in -3.0f64..3.0, c in 0.0f64..2.0) {
            let base = b(0.5);
            let w = hermite_trig_weight(base);
            let f = |p: &EvalPoint| C::new(p.x().re.powi(3) + c, 0.0);
            let g = |p: &EvalPoint| C::new((2.0 * p.x().re).exp(), 0.0);
            let h = |p: &EvalPoint| C::new(1.0 + p.x().re, 0.0);
            let lhs = inner_product(|p| alpha * f(p) + g(p), h, &w).unwrap().value;
            let rhs = alpha * inner_product(f, h, &w).unwrap().value + inner_product(g, h, &w).unwrap().value;
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(rhs.norm()).max(1.0));
        }

        #[test]
        fn trapezoid_exact_beyond_bandwidth(d in 0usize..20, seed in 0u64..1000) {
            // Trigonometric polynomial of degree d: exact once nodes exceed d.
            let coeffs: Vec<f64> = (0..=d).map(|k| ((seed + k as u64) as f64 * 0.37).sin()).collect();
            let flat = Measure::circle("1", Arc::new(|_| C::new(1.0, 0.0)));
            let c0 = coeffs[0];
            let v = integrate_circle(move |p| coeffs.iter().enumerate().map(|(k, c)| c * p.x().powi(k as i32)).sum(), &flat, 64).unwrap();
            prop_assert!((v.value - c0).norm() < 1e-14);
        }
    }
}
